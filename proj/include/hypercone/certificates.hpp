#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "equivariant.hpp"
#include "exactla.hpp"
#include "exterior.hpp"
#include "hyperbolic.hpp"
#include "matrix.hpp"
#include "pencil.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace hypercone {

// ---- minor evaluators -------------------------------------------------------
//
// A basis vector u of the minor space, living in Sym_2(wedge^d R^n), induces
// the degree-d polynomial M_u(X) = tr(u wedge^d X). Serialized terms avoid
// any basis gauge: the pair (S,T) with coefficient c contributes
// c * det X[S|T] * (1 if S = T else 2).

struct MinorTerm {
    Subset s, t;  // rows/cols of the minor; S <= T in subset rank
    Rational c;
};

struct MinorEvaluator {
    int n = 0, d = 0;
    std::vector<MinorTerm> terms;

    Rational eval(const RatMatrix& x) const {
        Rational acc = 0;
        for (const auto& term : terms) {
            int dd = static_cast<int>(term.s.size());
            RatMatrix sub(dd, dd);
            for (int i = 0; i < dd; ++i)
                for (int j = 0; j < dd; ++j) sub(i, j) = x(term.s[i] - 1, term.t[j] - 1);
            Rational m = det(sub);
            if (term.s != term.t) m *= 2;
            acc += term.c * m;
        }
        return acc;
    }
};

// Convert a t^-coordinate vector at level d into a raw minor evaluator.
inline MinorEvaluator minor_evaluator_from_tcoords(int n, int d, const RatMatrix& v) {
    TBasis tb(n, d);
    MinorEvaluator ev;
    ev.n = n;
    ev.d = d;
    for (std::size_t k = 0; k < tb.size(); ++k) {
        if (v(k, 0) == 0) continue;
        auto [a, b] = tb.pair(k);
        MinorTerm term;
        term.s = tb.subsets().unrank(a);
        term.t = tb.subsets().unrank(b);
        term.c = Rational(tb.theta(k)) * v(k, 0);
        ev.terms.push_back(std::move(term));
    }
    return ev;
}

// P_k(X + tA) linear coefficient: the directional derivative D_A P_k(X).
inline Rational dir_deriv_matrix_sigma(const RatMatrix& x, const RatMatrix& a, int k) {
    if (k <= 0) return 0;
    std::vector<std::pair<Rational, Rational>> pts;
    for (int t = 0; t <= k; ++t) {
        RatMatrix y = x + Rational(t) * a;
        pts.emplace_back(Rational(t), matrix_sigma(y, k));
    }
    UniPoly p = interpolate(pts);
    return p.degree() >= 1 ? p[1] : Rational(0);
}

// ---- calibrated identity ------------------------------------------------------

struct CalibratedSystem {
    int n = 0, d = 0;
    DerivativeConePencil cone;             // sigma_{d+1,n} derivative pencil
    std::vector<RatMatrix> basis_tcoords;  // u_p at level d (t^-coordinates)
    std::vector<std::size_t> block_of;     // block index per basis vector
    std::vector<MinorEvaluator> minors;    // M_p(X) = tr(u_p wedge^d X)
    MatPencil phi_c;                       // calibrated Gram pencil over the u_p
    RatMatrix w;                           // invariant vector: sum w_p u_p = Id
    std::vector<Rational> block_scale;     // the calibrated c_j (diagnostics)

    std::vector<Rational> minors_at(const RatMatrix& x) const {
        std::vector<Rational> out(minors.size());
        for (std::size_t p = 0; p < minors.size(); ++p) out[p] = minors[p].eval(x);
        return out;
    }
};

namespace detail {

// weighted t^ Gram row for orthogonality constraints
inline Rational weighted_dot(const TBasis& tb, const RatMatrix& a, const RatMatrix& b) {
    Rational s = 0;
    for (std::size_t k = 0; k < tb.size(); ++k)
        if (a(k, 0) != 0 && b(k, 0) != 0) s += a(k, 0) * b(k, 0) * tb.weight_sq(k);
    return s;
}

// deterministic generic symmetric sample: entries from a shifted prime-ish
// progression so that no accidental vanishing survives across the point set
inline RatMatrix generic_symmetric_point(int n, int index) {
    static const long primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                  41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
    RatMatrix x(n, n);
    int c = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            long p = primes[(c + 2 * index) % 24];
            long q = primes[(c + 7 * index + 5) % 24];
            x(i, j) = rat(p - q, 1 + ((c + index) % 3));
            x(j, i) = x(i, j);
            ++c;
        }
    return x;
}

}  // namespace detail

// Build the level-d minor realization of the compressed pencil and calibrate
// the per-block scalings so that Phi_c(X) M(X) = w P_{d+1}(X) holds as an
// exact identity with w^t M(X) = P_d(X).
//
// The Gram-times-value-vector form of the identity is only basis-covariant
// for orthogonal bases, so each block basis is Gram-Schmidt orthogonalized
// first (rationally, no normalization) and the per-vector norms enter the
// calibration as exact rational weights.
inline CalibratedSystem calibrate_identity(int n, int d) {
    if (d < 0 || d + 1 > n) throw std::invalid_argument("calibrate_identity: need d+1 <= n");
    CalibratedSystem sys;
    sys.n = n;
    sys.d = d;
    sys.cone = derivative_cone_pencil(n, n - d - 1);
    const EquivariantPencil& compressed = sys.cone.compressed;
    std::size_t total = compressed.size();
    std::size_t nblocks = compressed.blocks.size();
    TBasis tb(n, d);

    // per-block Gram-Schmidt (weighted trace form at the block's own level)
    std::vector<RatMatrix> ortho_basis;
    RatMatrix big_t(total, total);
    for (std::size_t j = 0; j < nblocks; ++j) {
        const EqBlock& b = compressed.blocks[j];
        TBasis tl(n, b.label);
        std::size_t m = b.basis.cols();
        RatMatrix t = RatMatrix::identity(m);
        RatMatrix cur = b.basis;
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < k; ++i) {
                Rational num = detail::weighted_dot(tl, cur.col(k), cur.col(i));
                if (num == 0) continue;
                Rational den = detail::weighted_dot(tl, cur.col(i), cur.col(i));
                Rational f = num / den;
                for (std::size_t r = 0; r < cur.rows(); ++r) cur(r, k) -= f * cur(r, i);
                for (std::size_t r = 0; r < m; ++r) t(r, k) -= f * t(r, i);
            }
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = 0; q < m; ++q) big_t(b.offset + p, b.offset + q) = t(p, q);
        ortho_basis.push_back(std::move(cur));
    }

    // the minor space W' = (ker f)^perp at level d; projector onto it
    RatMatrix kerf = kernel_basis(minor_coefficient_matrix(n, d));
    RatMatrix proj_gram, kw;
    if (kerf.cols() > 0) {
        RatMatrix wk(kerf.rows(), kerf.cols());
        for (std::size_t kk = 0; kk < tb.size(); ++kk)
            for (std::size_t c = 0; c < kerf.cols(); ++c)
                wk(kk, c) = kerf(kk, c) * tb.weight_sq(kk);
        proj_gram = inverse(kerf.transpose() * wk);
        kw = wk;
    }
    auto project = [&](const RatMatrix& v) {
        if (kerf.cols() == 0) return v;
        RatMatrix coords = proj_gram * (kw.transpose() * v);
        return v - kerf * coords;
    };

    // transport: adjoint powers of Delta_I, then projection onto W'
    std::vector<Rational> sigma_sq_per_block;
    for (std::size_t j = 0; j < nblocks; ++j) {
        const EqBlock& b = compressed.blocks[j];
        TBasis tl(n, b.label);
        std::size_t dim = ortho_basis[j].cols();
        std::size_t off = sys.basis_tcoords.size();
        for (std::size_t c = 0; c < dim; ++c) {
            RatMatrix u = tl.matrix(ortho_basis[j].col(c));
            for (int level = b.label; level < d; ++level)
                u = delta_i_adjoint_apply(u, n, level);
            sys.basis_tcoords.push_back(project(tb.vec(u)));
            sys.block_of.push_back(j);
        }
        // Schur conformality against the orthogonalized source Gram
        std::optional<Rational> sigma_sq;
        for (std::size_t p = 0; p < dim; ++p)
            for (std::size_t q = p; q < dim; ++q) {
                Rational src = detail::weighted_dot(tl, ortho_basis[j].col(p),
                                                    ortho_basis[j].col(q));
                Rational dst = detail::weighted_dot(tb, sys.basis_tcoords[off + p],
                                                    sys.basis_tcoords[off + q]);
                if (src == 0) {
                    if (dst != 0) throw std::logic_error("calibrate: transport is not conformal");
                    continue;
                }
                Rational ratio = dst / src;
                if (!sigma_sq)
                    sigma_sq = ratio;
                else if (*sigma_sq != ratio)
                    throw std::logic_error("calibrate: transport is not conformal");
            }
        if (!sigma_sq || *sigma_sq <= 0)
            throw std::logic_error("calibrate: degenerate block transport");
        sigma_sq_per_block.push_back(*sigma_sq);
    }

    // cross-block orthogonality and total rank
    std::vector<Rational> s(total);
    for (std::size_t p = 0; p < total; ++p) {
        s[p] = detail::weighted_dot(tb, sys.basis_tcoords[p], sys.basis_tcoords[p]);
        if (s[p] <= 0) throw std::logic_error("calibrate: zero transported vector");
        for (std::size_t q = 0; q < p; ++q)
            if (detail::weighted_dot(tb, sys.basis_tcoords[p], sys.basis_tcoords[q]) != 0)
                throw std::logic_error("calibrate: transported basis is not orthogonal");
    }

    for (std::size_t p = 0; p < total; ++p)
        sys.minors.push_back(minor_evaluator_from_tcoords(n, d, sys.basis_tcoords[p]));

    // conjugated compressed pencil over the orthogonalized bases
    std::vector<RatMatrix> phi_tilde;
    for (const auto& coeff : compressed.pencil.coeff)
        phi_tilde.push_back(big_t.transpose() * coeff * big_t);
    auto phi_tilde_eval = [&](const RatMatrix& x) {
        auto cc = sym_coordinates(x);
        RatMatrix out(total, total);
        for (std::size_t k = 0; k < cc.size(); ++k) {
            if (cc[k] == 0) continue;
            out += cc[k] * phi_tilde[k];
        }
        return out;
    };

    // calibration system over samples: rows p,
    //   sum_q Phi~[p,q](X) c_{l(q)} M_q(X)/s_q - v_p P_{d+1}(X) = 0
    std::vector<RatMatrix> samples;
    for (std::size_t q = 0; samples.size() < total + 2; ++q)
        samples.push_back(detail::generic_symmetric_point(n, static_cast<int>(q)));
    RatMatrix sysm(samples.size() * total, nblocks + total);
    std::size_t row = 0;
    for (const auto& x : samples) {
        RatMatrix gram = phi_tilde_eval(x);
        std::vector<Rational> mx(total);
        for (std::size_t q = 0; q < total; ++q) mx[q] = sys.minors[q].eval(x) / s[q];
        Rational pd1 = matrix_sigma(x, d + 1);
        for (std::size_t p = 0; p < total; ++p) {
            for (std::size_t q = 0; q < total; ++q)
                sysm(row, sys.block_of[q]) += gram(p, q) * mx[q];
            sysm(row, nblocks + p) = -pd1;
            ++row;
        }
    }
    RatMatrix sol_space = kernel_basis(sysm);
    if (sol_space.cols() != 1)
        throw std::logic_error("calibrate: scaling system solution is not unique");
    RatMatrix z = sol_space.col(0);
    int sgn0 = 0;
    for (std::size_t j = 0; j < nblocks && sgn0 == 0; ++j) sgn0 = sign(z(j, 0));
    if (sgn0 < 0) z = -z;
    std::vector<Rational> c(nblocks);
    for (std::size_t j = 0; j < nblocks; ++j) {
        c[j] = z(j, 0);
        if (c[j] <= 0) throw std::logic_error("calibrate: no positive block scaling");
    }

    sys.block_scale = c;

    // w = D_{1/s} D_c v, then normalize sum w_p u_p to the identity
    RatMatrix w(total, 1);
    for (std::size_t p = 0; p < total; ++p)
        w(p, 0) = c[sys.block_of[p]] * z(nblocks + p, 0) / s[p];
    RatMatrix acc(tb.size(), 1);
    for (std::size_t p = 0; p < total; ++p)
        for (std::size_t k = 0; k < tb.size(); ++k)
            acc(k, 0) += w(p, 0) * sys.basis_tcoords[p](k, 0);
    std::optional<Rational> rho;
    for (std::size_t k = 0; k < tb.size(); ++k) {
        if (!tb.is_diagonal(k)) {
            if (acc(k, 0) != 0) throw std::logic_error("calibrate: w is not the invariant");
        } else if (!rho)
            rho = acc(k, 0);
        else if (*rho != acc(k, 0))
            throw std::logic_error("calibrate: w is not the invariant");
    }
    if (!rho || *rho <= 0) throw std::logic_error("calibrate: invariant normalization failed");

    // Phi_c = (1/rho) D_{1/s} D_c Phi~ D_c D_{1/s}; w /= rho. A positive
    // diagonal congruence, so Phi_c(A) is PSD exactly when Phi~(A) is.
    sys.w = (1 / *rho) * w;
    sys.phi_c.n = n;
    sys.phi_c.m = total;
    for (const auto& coeff : phi_tilde) {
        RatMatrix m(total, total);
        for (std::size_t p = 0; p < total; ++p)
            for (std::size_t q = 0; q < total; ++q)
                m(p, q) = c[sys.block_of[p]] * c[sys.block_of[q]] * coeff(p, q) /
                          (*rho * s[p] * s[q]);
        sys.phi_c.coeff.push_back(std::move(m));
    }

    // over-verification at 50 fresh deterministic points, independent of the
    // calibration samples
    for (int s = 0; s < 50; ++s) {
        RatMatrix x = detail::generic_symmetric_point(n, 1000 + 13 * s);
        RatMatrix gram = sys.phi_c.eval(x);
        auto mx = sys.minors_at(x);
        Rational pd1 = matrix_sigma(x, d + 1);
        Rational pd = matrix_sigma(x, d);
        Rational wtm = 0;
        for (std::size_t p = 0; p < mx.size(); ++p) wtm += sys.w(p, 0) * mx[p];
        if (wtm != pd) throw std::logic_error("calibrate: w^t M != P_d");
        for (std::size_t p = 0; p < mx.size(); ++p) {
            Rational lhs = 0;
            for (std::size_t q = 0; q < mx.size(); ++q) lhs += gram(p, q) * mx[q];
            if (lhs != sys.w(p, 0) * pd1)
                throw std::logic_error("calibrate: identity fails at verification point");
        }
    }
    return sys;
}

// ---- certificates -------------------------------------------------------------

struct Certificate {
    std::string kind;  // "wronskian" | "newton-matrix" | "newton-classical"
    int n = 0, d = 0;
    RatMatrix a;       // direction (wronskian) or identity (newton)
    RatMatrix gram;    // PSD Gram matrix
    std::vector<MinorEvaluator> basis;
    Rational scale = 1;  // target = scale * (M^t Gram M) rescaling bookkeeping
    std::vector<Rational> square_weights;       // optional: LDL^t output
    std::vector<std::vector<Rational>> squares; // coefficient rows over the basis
};

// target polynomial value at X per kind
inline Rational certificate_target(const Certificate& cert, const RatMatrix& x) {
    int n = cert.n, d = cert.d;
    if (cert.kind == "wronskian") {
        Rational pd_a = matrix_sigma(cert.a, d);
        Rational pd1_a = matrix_sigma(cert.a, d + 1);
        return dir_deriv_matrix_sigma(x, cert.a, d + 1) * matrix_sigma(x, d) -
               matrix_sigma(x, d + 1) * dir_deriv_matrix_sigma(x, cert.a, d) -
               (pd1_a / pd_a) * matrix_sigma(x, d) * matrix_sigma(x, d);
    }
    if (cert.kind == "newton-matrix") {
        Rational pd = matrix_sigma(x, d) / Rational(binomial(n, d));
        Rational hi = matrix_sigma(x, d + 1) / Rational(binomial(n, d + 1));
        Rational lo = matrix_sigma(x, d - 1) / Rational(binomial(n, d - 1));
        return pd * pd - hi * lo;
    }
    throw std::invalid_argument("certificate_target: unknown kind " + cert.kind);
}

// classical target over the diagonal variables
inline Rational certificate_target_classical(const Certificate& cert,
                                             const std::vector<Rational>& x) {
    int n = cert.n, d = cert.d;
    Rational sd = sigma_instance(n, d).eval(x) / Rational(binomial(n, d));
    Rational hi = sigma_instance(n, d + 1).eval(x) / Rational(binomial(n, d + 1));
    Rational lo = sigma_instance(n, d - 1).eval(x) / Rational(binomial(n, d - 1));
    return sd * sd - hi * lo;
}

// Deterministic verification points: enough generic samples to exceed the
// dimension of the quadratic span of the basis polynomials plus the target.
inline std::vector<RatMatrix> certificate_points(int n, std::size_t basis_size) {
    std::size_t count = basis_size * (basis_size + 1) / 2 + 8;
    std::vector<RatMatrix> pts;
    pts.reserve(count);
    for (std::size_t s = 0; s < count; ++s)
        pts.push_back(detail::generic_symmetric_point(n, static_cast<int>(3 * s + 1)));
    return pts;
}

inline std::vector<std::vector<Rational>> certificate_points_classical(int n,
                                                                       std::size_t basis_size) {
    std::size_t count = basis_size * (basis_size + 1) / 2 + 8;
    std::vector<std::vector<Rational>> pts;
    Rng rng(0x5eedULL);
    for (std::size_t s = 0; s < count; ++s) pts.push_back(rng.rational_vector(n, 19, 4));
    return pts;
}

// Exact residual check, shared by construction and the independent verifier:
// target(X) - M(X)^t Gram M(X) must vanish on the whole point set.
// Returns the first failing description, or empty when everything is zero.
inline std::string certificate_residual_error(const Certificate& cert) {
    if (!cert.gram.is_symmetric()) return "gram not symmetric";
    if (cert.kind == "newton-classical") {
        auto pts = certificate_points_classical(cert.n, cert.basis.size());
        for (const auto& x : pts) {
            RatMatrix xd(cert.n, cert.n);
            for (int i = 0; i < cert.n; ++i) xd(i, i) = x[i];
            std::vector<Rational> m(cert.basis.size());
            for (std::size_t p = 0; p < m.size(); ++p) m[p] = cert.basis[p].eval(xd);
            Rational quad = 0;
            for (std::size_t p = 0; p < m.size(); ++p)
                for (std::size_t q = 0; q < m.size(); ++q) quad += m[p] * cert.gram(p, q) * m[q];
            if (quad != certificate_target_classical(cert, x)) return "residual nonzero";
        }
        return "";
    }
    auto pts = certificate_points(cert.n, cert.basis.size());
    for (const auto& x : pts) {
        std::vector<Rational> m(cert.basis.size());
        for (std::size_t p = 0; p < m.size(); ++p) m[p] = cert.basis[p].eval(x);
        Rational quad = 0;
        for (std::size_t p = 0; p < m.size(); ++p)
            for (std::size_t q = 0; q < m.size(); ++q) quad += m[p] * cert.gram(p, q) * m[q];
        if (quad != certificate_target(cert, x)) return "residual nonzero";
    }
    return "";
}

// squares consistency: sum_i w_i q_i(X)^2 == M^t Gram M at the point set
inline std::string certificate_squares_error(const Certificate& cert) {
    if (cert.squares.empty()) return "";
    auto pts = certificate_points(cert.n, cert.basis.size());
    for (const auto& x : pts) {
        std::vector<Rational> m(cert.basis.size());
        for (std::size_t p = 0; p < m.size(); ++p) m[p] = cert.basis[p].eval(x);
        Rational quad = 0;
        for (std::size_t p = 0; p < m.size(); ++p)
            for (std::size_t q = 0; q < m.size(); ++q) quad += m[p] * cert.gram(p, q) * m[q];
        Rational sq = 0;
        for (std::size_t i = 0; i < cert.squares.size(); ++i) {
            Rational qi = 0;
            for (std::size_t p = 0; p < m.size(); ++p) qi += cert.squares[i][p] * m[p];
            sq += cert.square_weights[i] * qi * qi;
        }
        if (sq != quad) return "squares do not reproduce the Gram form";
    }
    return "";
}

// Full re-check used by `verify cert`: PSD + residual (+ squares), nothing
// reused from the construction.
inline std::string certificate_error(const Certificate& cert) {
    if (!cert.gram.is_symmetric()) return "gram not symmetric";
    if (!psd_check(cert.gram)) return "gram not PSD";
    std::string r = certificate_residual_error(cert);
    if (!r.empty()) return r;
    return certificate_squares_error(cert);
}

// Gram certificate for the Wronskian inequality at an interior direction A:
//   D_A P_{d+1} P_d - P_{d+1} D_A P_d - (P_{d+1}(A)/P_d(A)) P_d^2
//     = M(X)^t (Phi_c(A) - (P_{d+1}(A)/P_d(A)) w w^t) M(X).
inline Certificate wronskian_gram(const CalibratedSystem& sys, const RatMatrix& a) {
    Rational pd = matrix_sigma(a, sys.d);
    Rational pd1 = matrix_sigma(a, sys.d + 1);
    if (pd <= 0)
        throw std::invalid_argument("wronskian_gram: P_d(A) <= 0, A not in the open cone");
    if (pd1 <= 0)
        throw std::invalid_argument("wronskian_gram: P_{d+1}(A) <= 0, A not in the open cone");
    Certificate cert;
    cert.kind = "wronskian";
    cert.n = sys.n;
    cert.d = sys.d;
    cert.a = a;
    cert.basis = sys.minors;
    RatMatrix phi_a = sys.phi_c.eval(a);
    Rational ratio = pd1 / pd;
    cert.gram = phi_a - ratio * (sys.w * sys.w.transpose());
    if (!psd_check(cert.gram)) throw std::logic_error("wronskian_gram: Gram not PSD");
    // rank-drop witness: Gram * M(A) = 0 exactly
    auto ma = sys.minors_at(a);
    for (std::size_t p = 0; p < ma.size(); ++p) {
        Rational s = 0;
        for (std::size_t q = 0; q < ma.size(); ++q) s += cert.gram(p, q) * ma[q];
        if (s != 0) throw std::logic_error("wronskian_gram: Gram M(A) != 0");
    }
    std::string err = certificate_residual_error(cert);
    if (!err.empty()) throw std::logic_error("wronskian_gram: " + err);
    return cert;
}

// Newton's inequality for matrices: the Wronskian certificate at A = I,
// rescaled by gamma = C(n,d)^2 d (n-d) / (d+1) to the binomial-normalized
// form. gamma is kept in the metadata.
inline Certificate newton_matrix_certificate(const CalibratedSystem& sys) {
    int n = sys.n, d = sys.d;
    if (d < 1 || d > n - 1) throw std::invalid_argument("newton: need 1 <= d <= n-1");
    Certificate wron = wronskian_gram(sys, RatMatrix::identity(n));
    Certificate cert;
    cert.kind = "newton-matrix";
    cert.n = n;
    cert.d = d;
    cert.a = RatMatrix::identity(n);
    cert.basis = sys.minors;
    Rational gamma = Rational(binomial(n, d)) * Rational(binomial(n, d)) * Rational(d) *
                     Rational(n - d) / Rational(d + 1);
    cert.scale = gamma;
    cert.gram = (1 / gamma) * wron.gram;
    std::string err = certificate_residual_error(cert);
    if (!err.empty()) throw std::logic_error("newton_matrix_certificate: " + err);
    return cert;
}

// Classical Newton: the diagonal restriction; same Gram, targets in the
// diagonal variables.
inline Certificate newton_classical_certificate(const CalibratedSystem& sys) {
    Certificate cert = newton_matrix_certificate(sys);
    cert.kind = "newton-classical";
    std::string err = certificate_residual_error(cert);
    if (!err.empty()) throw std::logic_error("newton_classical_certificate: " + err);
    return cert;
}

// Explicit squares from the exact LDL^t of the Gram: with P^t G P = L D L^t,
// target = sum_i D_ii q_i^2 where q = L^t P^t M(X).
inline void sos_decompose(Certificate& cert) {
    LdltResult f = ldlt_psd_decompose(cert.gram);
    std::size_t r = cert.gram.rows();
    RatMatrix lt_pt = f.l.transpose() * permutation_matrix(f.perm).transpose();
    cert.square_weights.clear();
    cert.squares.clear();
    for (std::size_t i = 0; i < r; ++i) {
        if (f.d(i, i) == 0) continue;
        cert.square_weights.push_back(f.d(i, i));
        std::vector<Rational> row(r);
        for (std::size_t p = 0; p < r; ++p) row[p] = lt_pt(i, p);
        cert.squares.push_back(std::move(row));
    }
    std::string err = certificate_squares_error(cert);
    if (!err.empty()) throw std::logic_error("sos_decompose: " + err);
}

}  // namespace hypercone
