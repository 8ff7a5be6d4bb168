#pragma once

#include <stdexcept>
#include <vector>

#include "combinat.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace hypercone {

// Element of Ma_{d,n}, the span of square-free degree-d monomials, stored as
// a coefficient column indexed by SubsetTable(n, d). The monomials form an
// orthonormal basis of Ma_{d,n}.
struct MaElement {
    int n = 0, d = 0;
    RatMatrix coeffs;  // C(n,d) x 1

    Rational eval(const std::vector<Rational>& x) const {
        SubsetTable t(n, d);
        Rational s = 0;
        for (std::size_t r = 0; r < t.size(); ++r) {
            if (coeffs(r, 0) == 0) continue;
            Rational m = 1;
            for (int i : t.unrank(r)) m *= x[i - 1];
            s += coeffs(r, 0) * m;
        }
        return s;
    }
};

// sigma_d(I): elementary symmetric polynomial of degree d in the variables
// indexed by I, as an element of Ma_{d,n}.
inline MaElement sigma(int d, const Subset& I, int n) {
    if (d < 0 || d > static_cast<int>(I.size()))
        throw std::invalid_argument("sigma: need 0 <= d <= |I|");
    SubsetTable t(n, d);
    MaElement f{n, d, RatMatrix(t.size(), 1)};
    for (std::size_t r = 0; r < t.size(); ++r) {
        const Subset& s = t.unrank(r);
        bool inside = true;
        for (int v : s)
            if (!contains(I, v)) { inside = false; break; }
        if (inside) f.coeffs(r, 0) = 1;
    }
    return f;
}

inline Subset full_set(int n) {
    Subset s(n);
    for (int i = 0; i < n; ++i) s[i] = i + 1;
    return s;
}

inline MaElement sigma_full(int d, int n) { return sigma(d, full_set(n), n); }

// Matrix of the directional derivative D_a : Ma_{d,n} -> Ma_{d-1,n} in the
// monomial bases. D_a(prod_{i in S} x_i) = sum_{i in S} a_i prod_{S \ i}.
inline RatMatrix deriv_matrix(const std::vector<Rational>& a, int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("deriv_matrix: need 1 <= d <= n");
    SubsetTable src(n, d), dst(n, d - 1);
    RatMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const Subset& s = src.unrank(c);
        for (int i : s) m(dst.rank(set_minus(s, i)), c) += a[i - 1];
    }
    return m;
}

inline std::vector<Rational> ones_vector(int n) { return std::vector<Rational>(n, Rational(1)); }

inline RatMatrix deriv_e_matrix(int n, int d) { return deriv_matrix(ones_vector(n), n, d); }

// Adjoint of D_e w.r.t. the monomial scalar products: U_e : Ma_{d-1,n} -> Ma_{d,n},
// m_J -> sum_{I > J} m_I. Raises chain components between levels.
inline RatMatrix raise_e_matrix(int n, int d) {
    return deriv_e_matrix(n, d).transpose();
}

// Matrix of iota_d : R^n -> Ma_{d,n}, delta_i -> x_i * sigma_{d-1}([n] \ {i}).
// Injective for 0 < d < n; iota_d(e) = d * sigma_d([n]).
inline RatMatrix iota(int d, int n) {
    if (d <= 0 || d >= n) throw std::invalid_argument("iota: need 0 < d < n");
    SubsetTable t(n, d);
    RatMatrix m(t.size(), n);
    for (std::size_t r = 0; r < t.size(); ++r)
        for (int i : t.unrank(r)) m(r, i - 1) = 1;
    return m;
}

// diag(iota_d(a)) as a diagonal vector: entry at subset I is sum_{i in I} a_i.
inline RatMatrix iota_diag(const std::vector<Rational>& a, int n, int d) {
    SubsetTable t(n, d);
    RatMatrix v(t.size(), 1);
    for (std::size_t r = 0; r < t.size(); ++r)
        for (int i : t.unrank(r)) v(r, 0) += a[i - 1];
    return v;
}

// One isotypic component of Ma_{d,n}.
//   model_basis: columns span the top kernel V_{n-label,label} inside
//                Ma_{label,n} (its own level);
//   basis:       the same component realized inside Ma_{d,n}, obtained by
//                applying U_e^(d-label) columnwise (uniform primitive scale).
struct ChainComponent {
    int label = 0;
    RatMatrix model_basis;
    RatMatrix basis;
};

struct ChainDecomposition {
    int n = 0, d = 0;
    std::vector<ChainComponent> comps;  // label ascending: 0, 1, ..., min(d, n-d)

    const ChainComponent& by_label(int label) const {
        for (const auto& c : comps)
            if (c.label == label) return c;
        throw std::invalid_argument("chain: no such label");
    }
};

namespace detail {

// Canonical kernel basis of D_e at level l (the top component V_{n-l,l}).
inline RatMatrix top_kernel_basis(int n, int l) {
    if (l == 0) return RatMatrix::identity(1);
    return kernel_basis(deriv_e_matrix(n, l));
}

// Uniform primitive scaling of a whole basis matrix (one scalar for all
// columns, so the S_n-equivariant identification with the model is kept).
inline void scale_matrix_primitive(RatMatrix& m) {
    if (m.empty()) return;
    Integer den = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
    Integer g = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer num = Integer(m(i, j).get_num()) * den / m(i, j).get_den();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        }
    if (g == 0) return;
    Rational s = make_rational(den, g);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= s;
}

}  // namespace detail

// Isotypic chain decomposition Ma_{d,n} = V_n + V_{n-1,1} + ... computed from
// the nested kernels of powers of D_e, innermost kernel (largest label) first.
inline ChainDecomposition chain_decompose_ma(int n, int d) {
    if (d < 0 || d > n) throw std::invalid_argument("chain_decompose_ma: need 0 <= d <= n");
    ChainDecomposition out;
    out.n = n;
    out.d = d;
    int imax = std::min(d, n - d);
    std::vector<ChainComponent> rev;
    for (int i = imax; i >= 0; --i) {
        ChainComponent c;
        c.label = i;
        c.model_basis = detail::top_kernel_basis(n, i);
        RatMatrix b = c.model_basis;
        for (int level = i + 1; level <= d; ++level) b = raise_e_matrix(n, level) * b;
        detail::scale_matrix_primitive(b);
        c.basis = b;
        rev.push_back(std::move(c));
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.comps.push_back(std::move(*it));

    std::size_t total = 0;
    for (const auto& c : out.comps) total += c.basis.cols();
    SubsetTable t(n, d);
    if (total != t.size()) throw std::logic_error("chain_decompose_ma: dimensions do not add up");
    return out;
}

// Permutation action of sigma in S_n on the monomial basis of Ma_{d,n}:
// column at subset I maps to the monomial at sigma(I).
inline RatMatrix ma_permutation_matrix(const std::vector<int>& perm, int n, int d) {
    SubsetTable t(n, d);
    RatMatrix p(t.size(), t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        Subset img;
        for (int v : t.unrank(r)) img.push_back(perm[v - 1]);
        std::sort(img.begin(), img.end());
        p(t.rank(img), r) = 1;
    }
    return p;
}

}  // namespace hypercone
