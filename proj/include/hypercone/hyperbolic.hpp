#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "combinat.hpp"
#include "exactla.hpp"
#include "matrix.hpp"
#include "multiaffine.hpp"
#include "rational.hpp"
#include "unipoly.hpp"

namespace hypercone {

// A hyperbolic polynomial given by an exact evaluator. Directional
// derivatives and line restrictions are recovered exactly from point
// evaluations by interpolation, so closed-form families (sigma, det,
// Renegar derivatives) plug in with nothing but an eval function.
struct HyperbolicInstance {
    int nvars = 0;
    int degree = 0;
    std::vector<Rational> e;  // hyperbolicity direction
    std::function<Rational(const std::vector<Rational>&)> eval;
};

inline HyperbolicInstance sigma_instance(int n, int d) {
    HyperbolicInstance h;
    h.nvars = n;
    h.degree = d;
    h.e = ones_vector(n);
    h.eval = [n, d](const std::vector<Rational>& x) -> Rational {
        // elementary symmetric via the product recurrence
        std::vector<Rational> ek(d + 1, Rational(0));
        ek[0] = 1;
        for (int i = 0; i < n; ++i)
            for (int k = std::min(d, i + 1); k >= 1; --k) ek[k] += ek[k - 1] * x[i];
        return ek[d];
    };
    return h;
}

// det on Sym_2(R^m); variables are the sym_basis coordinates of X and the
// hyperbolicity direction is the identity matrix.
inline HyperbolicInstance det_instance(int m) {
    HyperbolicInstance h;
    h.nvars = m * (m + 1) / 2;
    h.degree = m;
    h.e.assign(h.nvars, Rational(0));
    for (int i = 0; i < m; ++i) h.e[i] = 1;
    h.eval = [m](const std::vector<Rational>& c) -> Rational {
        RatMatrix x(m, m);
        for (int i = 0; i < m; ++i) x(i, i) = c[i];
        std::size_t k = m;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                x(i, j) = c[k];
                x(j, i) = c[k];
                ++k;
            }
        return det(x);
    };
    return h;
}

// Renegar derivative D_e^k h, evaluated via k! [t^k] h(x + t e).
inline HyperbolicInstance renegar_derivative(const HyperbolicInstance& h, int k) {
    if (k < 0 || k > h.degree) throw std::invalid_argument("renegar_derivative: bad order");
    HyperbolicInstance r;
    r.nvars = h.nvars;
    r.degree = h.degree - k;
    r.e = h.e;
    r.eval = [h, k](const std::vector<Rational>& x) -> Rational {
        std::vector<std::pair<Rational, Rational>> pts;
        for (int t = 0; t <= h.degree; ++t) {
            std::vector<Rational> y(x);
            for (int i = 0; i < h.nvars; ++i) y[i] += Rational(t) * h.e[i];
            pts.emplace_back(Rational(t), h.eval(y));
        }
        UniPoly p = interpolate(pts);
        Rational c = (static_cast<long>(p.coeffs().size()) > k) ? p[k] : Rational(0);
        c *= Rational(factorial(k));
        return c;
    };
    return r;
}

// h(t e - a) as an exact univariate polynomial.
inline UniPoly line_restriction(const HyperbolicInstance& h, const std::vector<Rational>& a) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (int t = 0; t <= h.degree; ++t) {
        std::vector<Rational> y(h.nvars);
        for (int i = 0; i < h.nvars; ++i) y[i] = Rational(t) * h.e[i] - a[i];
        pts.emplace_back(Rational(t), h.eval(y));
    }
    return interpolate(pts);
}

// Exact hyperbolicity-cone membership: all roots of h(te - a) nonnegative.
// Throws if the restriction is not real-rooted (h not hyperbolic at e).
inline bool root_cone_member(const HyperbolicInstance& h, const std::vector<Rational>& a) {
    UniPoly p = line_restriction(h, a);
    if (p.is_zero()) throw std::invalid_argument("root_cone_member: restriction vanishes");
    if (!sturm_real_rooted(p))
        throw std::invalid_argument("root_cone_member: h(te-a) is not real-rooted");
    return roots_all_nonneg(p);
}

// P_d(X) = sigma_{d,n}(lambda(X)), extracted from det(tI + X).
inline Rational matrix_sigma(const RatMatrix& x, int d) {
    if (!x.is_symmetric()) throw std::invalid_argument("matrix_sigma: X not symmetric");
    int n = static_cast<int>(x.rows());
    if (d < 0 || d > n) return 0;
    UniPoly p = char_poly(-x);  // det(tI + X)
    return p[n - d];
}

// Same value as the sum of all principal d x d minors; used as the second
// route in the matrix_sigma cross-check.
inline Rational matrix_sigma_minors(const RatMatrix& x, int d) {
    if (!x.is_symmetric()) throw std::invalid_argument("matrix_sigma_minors: X not symmetric");
    int n = static_cast<int>(x.rows());
    if (d < 0 || d > n) return 0;
    SubsetTable t(n, d);
    Rational s = 0;
    for (std::size_t r = 0; r < t.size(); ++r) {
        const Subset& idx = t.unrank(r);
        RatMatrix sub(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) sub(i, j) = x(idx[i] - 1, idx[j] - 1);
        s += det(sub);
    }
    return s;
}

// Bezout matrix of f (degree d) and g (degree <= d-1):
// (f(s)g(t) - f(t)g(s)) / (s - t) = sum_{ij} b_ij s^(i-1) t^(j-1).
inline RatMatrix bezout_matrix(const UniPoly& f, const UniPoly& g) {
    if (f.is_zero()) throw std::invalid_argument("bezout_matrix: f must be nonzero");
    long d = f.degree();
    if (d < 1) throw std::invalid_argument("bezout_matrix: deg f >= 1 required");
    if (!g.is_zero() && g.degree() > d - 1)
        throw std::invalid_argument("bezout_matrix: deg g <= deg f - 1 required");
    auto cf = [&](long i) { return i <= f.degree() ? f[i] : Rational(0); };
    auto cg = [&](long i) { return (!g.is_zero() && i <= g.degree()) ? g[i] : Rational(0); };
    // numerator coefficients C_pq = f_p g_q - f_q g_p, then divide by (s - t):
    // C_{p,q} = B_{p-1,q} - B_{p,q-1}
    RatMatrix b(d, d);
    for (long p = d - 1; p >= 0; --p)
        for (long q = 0; q <= d - 1; ++q) {
            Rational c = cf(p + 1) * cg(q) - cf(q) * cg(p + 1);
            Rational prev = (p + 1 <= d - 1 && q - 1 >= 0) ? b(p + 1, q - 1) : Rational(0);
            b(p, q) = c + prev;
        }
    return b;
}

// Interlacing with ties allowed: alpha_i <= beta_i <= alpha_{i+1} for sorted
// root lists with |beta| = |alpha| - 1.
inline bool roots_interlace(std::vector<Rational> alpha, std::vector<Rational> beta) {
    std::sort(alpha.begin(), alpha.end());
    std::sort(beta.begin(), beta.end());
    if (beta.size() + 1 != alpha.size()) return false;
    for (std::size_t i = 0; i < beta.size(); ++i)
        if (!(alpha[i] <= beta[i] && beta[i] <= alpha[i + 1])) return false;
    return true;
}

// Wronskian value Delta_{a,b}(h)(x) = D_a h * D_b h - h * D_a D_b h at x,
// from exact bivariate interpolation of h(x + s a + t b).
inline Rational wronskian_eval(const HyperbolicInstance& h, const std::vector<Rational>& a,
                               const std::vector<Rational>& b, const std::vector<Rational>& x) {
    int deg = h.degree;
    // coefficients of s^k for each fixed t, then interpolate those in t
    std::vector<UniPoly> in_s(deg + 1);
    for (int tj = 0; tj <= deg; ++tj) {
        std::vector<std::pair<Rational, Rational>> pts;
        for (int si = 0; si <= deg; ++si) {
            std::vector<Rational> y(h.nvars);
            for (int i = 0; i < h.nvars; ++i)
                y[i] = x[i] + Rational(si) * a[i] + Rational(tj) * b[i];
            pts.emplace_back(Rational(si), h.eval(y));
        }
        in_s[tj] = interpolate(pts);
    }
    auto coeff_st = [&](int k, int l) {
        std::vector<std::pair<Rational, Rational>> pts;
        for (int tj = 0; tj <= deg; ++tj) {
            Rational v = (static_cast<long>(in_s[tj].coeffs().size()) > k) ? in_s[tj][k]
                                                                           : Rational(0);
            pts.emplace_back(Rational(tj), v);
        }
        UniPoly p = interpolate(pts);
        return (static_cast<long>(p.coeffs().size()) > l) ? p[l] : Rational(0);
    };
    Rational c00 = coeff_st(0, 0), c10 = coeff_st(1, 0), c01 = coeff_st(0, 1),
             c11 = coeff_st(1, 1);
    return c10 * c01 - c00 * c11;
}

}  // namespace hypercone
