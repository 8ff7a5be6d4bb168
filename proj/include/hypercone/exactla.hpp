#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"
#include "unipoly.hpp"

namespace hypercone {

// Characteristic polynomial det(tI - M), exact and monic.
// Evaluation/interpolation over integer-scaled Bareiss determinants; all
// intermediate arithmetic is fraction-free integer work.
inline UniPoly char_poly(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: square matrix expected");
    std::size_t n = m.rows();
    if (n == 0) return UniPoly::constant(1);

    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
    std::vector<Integer> base(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            base[i * n + j] = Integer(m(i, j).get_num()) * (den / Integer(m(i, j).get_den()));

    // det(tI - M) at t = k equals det(k*den*I - den*M) / den^n
    Integer den_pow;
    mpz_pow_ui(den_pow.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n));
    std::vector<std::pair<Rational, Rational>> pts;
    pts.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<Integer> w(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                w[i * n + j] = -base[i * n + j];
                if (i == j) w[i * n + j] += Integer(long(k)) * den;
            }
        Integer d = det_integer_bareiss(std::move(w), n);
        pts.emplace_back(Rational(long(k)), make_rational(d, den_pow));
    }
    UniPoly p = interpolate(pts);
    if (p.degree() != static_cast<long>(n) || p.lead() != 1)
        throw std::logic_error("char_poly: interpolation failed");
    return p;
}

// Exact PSD decision: a symmetric rational M is positive semidefinite iff
// every coefficient of det(tI + M) is >= 0 (real spectrum, so det(tI + M)
// = prod(t + lambda_i) and the coefficients are elementary symmetric
// functions of the eigenvalues). No floating point anywhere.
inline bool psd_check(const RatMatrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("psd_check: matrix not symmetric");
    UniPoly p = char_poly(-m);  // det(tI + M)
    for (const auto& c : p.coeffs())
        if (sign(c) < 0) return false;
    return true;
}

struct LdltResult {
    std::vector<std::size_t> perm;  // P as a permutation of indices: row i of P^t M P is perm[i] of M
    RatMatrix l;                    // unit lower triangular
    RatMatrix d;                    // diagonal, entries >= 0
};

// Exact LDL^t of a PSD matrix with largest-diagonal pivoting:
// P^t M P = L D L^t. A zero pivot with a nonzero residual row, or a negative
// pivot, means the input was not PSD and raises.
inline LdltResult ldlt_psd_decompose(const RatMatrix& m_in) {
    if (!m_in.is_symmetric()) throw std::invalid_argument("ldlt: matrix not symmetric");
    std::size_t n = m_in.rows();
    RatMatrix a = m_in;
    LdltResult res;
    res.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.perm[i] = i;
    res.l = RatMatrix::identity(n);
    res.d = RatMatrix(n, n);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (a(i, i) > a(p, p)) p = i;
        if (p != k) {
            a.swap_rows(k, p);
            a.swap_cols(k, p);
            std::swap(res.perm[k], res.perm[p]);
            for (std::size_t j = 0; j < k; ++j) std::swap(res.l(k, j), res.l(p, j));
        }
        Rational piv = a(k, k);
        if (piv < 0) throw std::invalid_argument("ldlt: negative pivot, matrix not PSD");
        res.d(k, k) = piv;
        if (piv == 0) {
            // a PSD matrix with zero diagonal entry must have a zero row here
            for (std::size_t j = k + 1; j < n; ++j)
                if (a(k, j) != 0)
                    throw std::invalid_argument("ldlt: zero pivot with nonzero row, matrix not PSD");
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) res.l(i, k) = a(i, k) / piv;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Rational& f = res.l(i, k);
            if (f == 0) continue;
            for (std::size_t j = k + 1; j <= i; ++j) {
                a(i, j) -= f * a(k, j);
                a(j, i) = a(i, j);
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            a(i, k) = 0;
            a(k, i) = 0;
        }
    }
    return res;
}

inline RatMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
    RatMatrix p(perm.size(), perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) p(perm[i], i) = 1;
    return p;
}

// For a non-PSD symmetric M, an exact rational witness v with v^t M v < 0
// (partial symmetric elimination; the failing pivot is back-substituted).
// Returns an empty matrix when M is PSD.
inline RatMatrix negative_witness(const RatMatrix& m_in) {
    if (!m_in.is_symmetric()) throw std::invalid_argument("negative_witness: not symmetric");
    std::size_t n = m_in.rows();
    RatMatrix a = m_in;
    RatMatrix l = RatMatrix::identity(n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    auto backsubstitute = [&](RatMatrix y) {
        // solve L^t x = y, then undo the permutation
        RatMatrix x(n, 1);
        for (std::size_t i = n; i-- > 0;) {
            Rational s = y(i, 0);
            for (std::size_t j = i + 1; j < n; ++j) s -= l(j, i) * x(j, 0);
            x(i, 0) = s;
        }
        RatMatrix v(n, 1);
        for (std::size_t i = 0; i < n; ++i) v(perm[i], 0) = x(i, 0);
        return v;
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (a(i, i) > a(p, p)) p = i;
        if (p != k) {
            a.swap_rows(k, p);
            a.swap_cols(k, p);
            std::swap(perm[k], perm[p]);
            for (std::size_t j = 0; j < k; ++j) std::swap(l(k, j), l(p, j));
        }
        Rational piv = a(k, k);
        if (piv < 0) {
            RatMatrix y(n, 1);
            y(k, 0) = 1;
            return backsubstitute(std::move(y));
        }
        if (piv == 0) {
            // the largest remaining diagonal is zero, so the trailing block
            // is PSD only if it vanishes entirely
            for (std::size_t i = k; i < n; ++i) {
                if (a(i, i) < 0) {
                    RatMatrix y(n, 1);
                    y(i, 0) = 1;
                    return backsubstitute(std::move(y));
                }
            }
            for (std::size_t i = k; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (a(i, j) == 0) continue;
                    // zero diagonals: value is 2 t a_ij with t = -sign(a_ij)
                    RatMatrix y(n, 1);
                    y(i, 0) = 1;
                    y(j, 0) = (sign(a(i, j)) > 0) ? -1 : 1;
                    return backsubstitute(std::move(y));
                }
            return RatMatrix();  // trailing block vanishes: PSD
        }
        for (std::size_t i = k + 1; i < n; ++i) l(i, k) = a(i, k) / piv;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Rational& f = l(i, k);
            if (f == 0) continue;
            for (std::size_t j = k + 1; j <= i; ++j) {
                a(i, j) -= f * a(k, j);
                a(j, i) = a(i, j);
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            a(i, k) = 0;
            a(k, i) = 0;
        }
    }
    return RatMatrix();
}

}  // namespace hypercone
