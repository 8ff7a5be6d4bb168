#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "branden.hpp"
#include "combinat.hpp"
#include "exactla.hpp"
#include "exterior.hpp"
#include "matrix.hpp"
#include "multiaffine.hpp"
#include "multipoly.hpp"
#include "pencil.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace hypercone {

// ---- model pencils on the chain components --------------------------------
//
// Every S_n-pencil into a block of Sym_2(V), V short, is a combination of
//   - the invariant pencil  sigma_1(a) * alpha_hat  (alpha_hat is the
//     primitive integer generator of the invariant-form line),
//   - the diagonal-restriction pencil  G_hat(a) = B^t diag(iota(a)) B,
//     whose traceless content is the beta direction (0 < 2 eps < n only),
//   - the derivative pairing  Gamma_hat(a)[p,q] = <f_p, D_a g_q>
//     between components with consecutive labels.

// Coefficient matrix of x_i in G_hat for the model basis at level eps >= 1.
inline RatMatrix ghat_coeff(const RatMatrix& model_basis, int n, int eps, int i) {
    SubsetTable st(n, eps);
    RatMatrix d(st.size(), st.size());
    for (std::size_t r = 0; r < st.size(); ++r)
        if (contains(st.unrank(r), i)) d(r, r) = 1;
    return model_basis.transpose() * d * model_basis;
}

inline RatMatrix ghat_eval(const RatMatrix& model_basis, int n, int eps,
                           const std::vector<Rational>& a) {
    SubsetTable st(n, eps);
    RatMatrix d(st.size(), st.size());
    for (std::size_t r = 0; r < st.size(); ++r)
        for (int i : st.unrank(r)) d(r, r) += a[i - 1];
    return model_basis.transpose() * d * model_basis;
}

// Primitive integer generator of the alpha line: G_hat(e) scaled to content 1.
inline RatMatrix alpha_hat(const RatMatrix& model_basis, int n, int eps) {
    if (eps == 0) return RatMatrix::identity(1);
    RatMatrix g = ghat_eval(model_basis, n, eps, ones_vector(n));
    RatMatrix col(g.rows() * g.cols(), 1);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) col(i * g.cols() + j, 0) = g(i, j);
    make_primitive(col);
    RatMatrix out(g.rows(), g.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) = col(i * g.cols() + j, 0);
    return out;
}

// G_hat(e) = content * alpha_hat; the same content rescales the W-side
// invariant Gram so that restriction to V is exact.
inline Rational alpha_content(const RatMatrix& model_basis, int n, int eps) {
    if (eps == 0) return 1;
    RatMatrix g = ghat_eval(model_basis, n, eps, ones_vector(n));
    RatMatrix a = alpha_hat(model_basis, n, eps);
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            if (a(i, j) != 0) return g(i, j) / a(i, j);
    throw std::logic_error("alpha_content: zero alpha generator");
}

// Coefficient matrix of x_i in Gamma_hat between model bases at levels
// (eps, eps+1).
inline RatMatrix gamma_coeff(const RatMatrix& lo_model, const RatMatrix& hi_model, int n,
                             int eps, int i) {
    std::vector<Rational> dir(n, Rational(0));
    dir[i - 1] = 1;
    return lo_model.transpose() * deriv_matrix(dir, n, eps + 1) * hi_model;
}

// ---- basis_maps / gamma_map public surface ---------------------------------

struct BasisMaps {
    RatMatrix alpha;  // primitive generator of the invariant Gram line
    SymPencil beta;   // G_hat(a) as a pencil; restricting a to traceless gives beta
};

inline BasisMaps basis_maps(int n, int i) {
    if (i < 0 || 2 * i > n) throw std::invalid_argument("basis_maps: need 0 <= 2i <= n");
    RatMatrix model = detail::top_kernel_basis(n, i);
    BasisMaps out;
    out.alpha = alpha_hat(model, n, i);
    out.beta.n = n;
    out.beta.size = model.cols();
    if (i == 0) {
        out.beta.coeff.assign(n, RatMatrix(1, 1));
        for (int v = 0; v < n; ++v) out.beta.coeff[v](0, 0) = 1;  // sigma_1(a) on V_n
        return out;
    }
    for (int v = 1; v <= n; ++v) out.beta.coeff.push_back(ghat_coeff(model, n, i, v));
    return out;
}

// Pencil of the pairing (f, g) -> <f, D_a g> between the model components
// with labels i and i+1; rectangular coefficient matrices.
inline SymPencil gamma_map(int n, int i) {
    if (i < 0 || 2 * (i + 1) > n)
        throw std::invalid_argument("gamma_map: labels out of range");
    RatMatrix lo = detail::top_kernel_basis(n, i);
    RatMatrix hi = detail::top_kernel_basis(n, i + 1);
    SymPencil p;
    p.n = n;
    p.size = 0;
    for (int v = 1; v <= n; ++v) p.coeff.push_back(gamma_coeff(lo, hi, n, i, v));
    return p;
}

// ---- coefficient profile ----------------------------------------------------

// Profile coordinates follow the explicit display parametrization
// {sigma_1(a) * alpha_hat, G_hat(a)} per diagonal block. The abstract
// alpha/beta normalization (coefficients on the maps obtained from diag by
// projecting the input to V_n resp. V_{n-1,1}) is the derived view below.
struct CoefficientProfile {
    int n = 0;
    std::vector<int> labels;       // component labels, ascending
    std::vector<Rational> a_diag;  // invariant coefficient per component
    std::vector<Rational> b_diag;  // G_hat coefficient per component (0 if no beta)
    std::map<std::pair<int, int>, Rational> c_off;  // consecutive-label pairs
};

inline Rational alpha_content(const RatMatrix& model_basis, int n, int eps);

// (a_jj, b_jj) w.r.t. the canonical alpha/beta maps:
//   block(a) = a * alpha(proj_{V_n} a) + b * beta(proj_{V_{n-1,1}} a)
// with alpha(c e) = c G_hat(e), beta(a') = G_hat(a').
inline std::pair<Rational, Rational> alpha_beta_view(const CoefficientProfile& prof,
                                                     const ChainDecomposition& chain,
                                                     std::size_t j) {
    int eps = chain.comps[j].label;
    if (eps == 0) return {prof.a_diag[j], Rational(0)};
    Rational kappa = alpha_content(chain.comps[j].model_basis, chain.n, eps);
    Rational a = Rational(chain.n) * prof.a_diag[j] / kappa + prof.b_diag[j];
    return {a, prof.b_diag[j]};
}

namespace detail {

// stack all coefficient matrices of a block pencil into one long column
inline RatMatrix stack_block_pencil(const std::vector<RatMatrix>& coeffs, bool symmetric) {
    std::size_t r0 = coeffs[0].rows(), c0 = coeffs[0].cols();
    std::size_t rows = symmetric ? (r0 * (r0 + 1) / 2) : (r0 * c0);
    RatMatrix out(rows * coeffs.size(), 1);
    std::size_t k = 0;
    for (const auto& m : coeffs) {
        if (symmetric) {
            for (std::size_t i = 0; i < r0; ++i)
                for (std::size_t j = i; j < c0; ++j) out(k++, 0) = m(i, j);
        } else {
            for (std::size_t i = 0; i < r0; ++i)
                for (std::size_t j = 0; j < c0; ++j) out(k++, 0) = m(i, j);
        }
    }
    return out;
}

}  // namespace detail

// Decompose an S_n-equivariant pencil phi, given on the monomial basis of
// Ma_{level,n}, into its coefficient profile over the chain components.
// Uniqueness of the solves is the computational shadow of multiplicity one.
inline CoefficientProfile extract_profile(const SymPencil& phi, const ChainDecomposition& chain) {
    int n = chain.n, level = chain.d;
    SubsetTable st(n, level);
    if (phi.n != n || phi.size != st.size())
        throw std::invalid_argument("extract_profile: pencil does not match Ma_{level,n}");

    for (int t = 1; t < n; ++t) {
        std::vector<int> tau(n);
        for (int i = 0; i < n; ++i) tau[i] = i + 1;
        std::swap(tau[t - 1], tau[t]);
        RatMatrix p = ma_permutation_matrix(tau, n, level);
        for (int i = 0; i < n; ++i)
            if (p.transpose() * phi.coeff[i] * p != phi.coeff[tau[i] - 1])
                throw std::invalid_argument("extract_profile: pencil is not S_n-equivariant");
    }

    CoefficientProfile prof;
    prof.n = n;
    std::size_t m = chain.comps.size();
    prof.a_diag.assign(m, Rational(0));
    prof.b_diag.assign(m, Rational(0));
    for (const auto& c : chain.comps) prof.labels.push_back(c.label);

    auto block_of = [&](std::size_t j, std::size_t l, int var) {
        return chain.comps[j].basis.transpose() * phi.coeff[var] * chain.comps[l].basis;
    };

    for (std::size_t j = 0; j < m; ++j) {
        int eps = chain.comps[j].label;
        const RatMatrix& model = chain.comps[j].model_basis;
        bool has_beta = (eps > 0) && (2 * eps < n);
        RatMatrix a_gen = alpha_hat(model, n, eps);
        std::vector<RatMatrix> alpha_pencil, beta_pencil, target;
        for (int v = 0; v < n; ++v) {
            alpha_pencil.push_back(a_gen);
            if (has_beta) beta_pencil.push_back(ghat_coeff(model, n, eps, v + 1));
            target.push_back(block_of(j, j, v));
        }
        RatMatrix cols = detail::stack_block_pencil(alpha_pencil, true);
        if (has_beta) cols = cols.hcat(detail::stack_block_pencil(beta_pencil, true));
        RatMatrix rhs = detail::stack_block_pencil(target, true);
        auto sol = solve(cols, rhs);
        if (!sol || cols * *sol != rhs)
            throw std::invalid_argument("extract_profile: diagonal block not of alpha/beta form");
        prof.a_diag[j] = (*sol)(0, 0);
        if (has_beta) prof.b_diag[j] = (*sol)(1, 0);

        for (std::size_t l = j + 1; l < m; ++l) {
            int eps_l = chain.comps[l].label;
            std::vector<RatMatrix> tgt;
            for (int v = 0; v < n; ++v) tgt.push_back(block_of(j, l, v));
            bool all_zero = true;
            for (const auto& mtx : tgt) all_zero = all_zero && mtx.is_zero();
            if (eps_l == eps + 1) {
                std::vector<RatMatrix> gam;
                for (int v = 1; v <= n; ++v)
                    gam.push_back(gamma_coeff(model, chain.comps[l].model_basis, n, eps, v));
                RatMatrix gcols = detail::stack_block_pencil(gam, false);
                RatMatrix grhs = detail::stack_block_pencil(tgt, false);
                auto gsol = solve(gcols, grhs);
                if (!gsol || gcols * *gsol != grhs)
                    throw std::invalid_argument("extract_profile: off block not of gamma form");
                if ((*gsol)(0, 0) != 0) prof.c_off[{eps, eps_l}] = (*gsol)(0, 0);
            } else if (!all_zero) {
                throw std::invalid_argument(
                    "extract_profile: nonzero block between non-adjacent labels");
            }
        }
    }
    return prof;
}

// Chain-coordinate coefficient matrices rebuilt from a profile; the profile
// reconstructs phi exactly (round-trip property).
inline std::vector<RatMatrix> profile_to_chain_pencil(const CoefficientProfile& prof,
                                                      const ChainDecomposition& chain) {
    int n = chain.n;
    std::size_t m = chain.comps.size();
    std::vector<std::size_t> off(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) off[j + 1] = off[j] + chain.comps[j].basis.cols();
    std::vector<RatMatrix> out(n, RatMatrix(off[m], off[m]));
    auto put = [&](std::size_t j, std::size_t l, int v, const RatMatrix& blk) {
        for (std::size_t p = 0; p < blk.rows(); ++p)
            for (std::size_t q = 0; q < blk.cols(); ++q) {
                out[v](off[j] + p, off[l] + q) += blk(p, q);
                if (j != l) out[v](off[l] + q, off[j] + p) += blk(p, q);
            }
    };
    for (std::size_t j = 0; j < m; ++j) {
        int eps = chain.comps[j].label;
        const RatMatrix& model = chain.comps[j].model_basis;
        RatMatrix a_gen = alpha_hat(model, n, eps);
        for (int v = 0; v < n; ++v) {
            RatMatrix blk = prof.a_diag[j] * a_gen;
            if (prof.b_diag[j] != 0) blk += prof.b_diag[j] * ghat_coeff(model, n, eps, v + 1);
            put(j, j, v, blk);
        }
        for (std::size_t l = j + 1; l < m; ++l) {
            auto it = prof.c_off.find({eps, chain.comps[l].label});
            if (it == prof.c_off.end()) continue;
            for (int v = 1; v <= n; ++v)
                put(j, l, v - 1,
                    it->second * gamma_coeff(model, chain.comps[l].model_basis, n, eps, v));
        }
    }
    return out;
}

// ---- the O(n) pencil --------------------------------------------------------

struct EqBlock {
    int label = 0;              // component label = exterior level of the realization
    RatMatrix basis;            // t^-coordinate columns in Sym_2(wedge^label R^n)
    std::size_t model_dim = 0;  // leading columns are the diagonal-embedded V-part
    std::size_t offset = 0;
};

struct EquivariantPencil {
    int n = 0;
    std::vector<EqBlock> blocks;
    MatPencil pencil;

    std::size_t size() const { return pencil.m; }
    RatMatrix eval(const RatMatrix& x) const { return pencil.eval(x); }
};

namespace detail {

// W_j basis: diagonal embeddings of the model basis first, then a canonical
// completion of ker(Delta_I), orthogonal to the lead and (optionally) to a
// further forbidden span (used by the minors compression).
inline RatMatrix w_space_basis(int n, int eps, const RatMatrix& model,
                               const RatMatrix& avoid = RatMatrix()) {
    TBasis tb(n, eps);
    SubsetTable st(n, eps);
    RatMatrix lead(tb.size(), model.cols());
    for (std::size_t c = 0; c < model.cols(); ++c)
        for (std::size_t r = 0; r < st.size(); ++r)
            lead(tb.index_of_pair(r, r), c) = model(r, c);
    if (eps == 0) return lead;
    RatMatrix delta = delta_op(RatMatrix::identity(n), n, eps);
    std::size_t pair_count = model.cols() + (avoid.empty() ? 0 : avoid.cols());
    RatMatrix rows(pair_count, tb.size());
    for (std::size_t c = 0; c < model.cols(); ++c)
        for (std::size_t k = 0; k < tb.size(); ++k) rows(c, k) = lead(k, c) * tb.weight_sq(k);
    for (std::size_t c = 0; avoid.cols() && c < avoid.cols(); ++c)
        for (std::size_t k = 0; k < tb.size(); ++k)
            rows(model.cols() + c, k) = avoid(k, c) * tb.weight_sq(k);
    RatMatrix completion = kernel_basis(delta.vcat(rows));
    return lead.hcat(completion);
}

inline std::vector<RatMatrix> block_matrices(int n, const EqBlock& b) {
    TBasis tb(n, b.label);
    std::vector<RatMatrix> out;
    for (std::size_t c = 0; c < b.basis.cols(); ++c) out.push_back(tb.matrix(b.basis.col(c)));
    return out;
}

// Shared assembly of the MatPencil over given blocks:
//   (j,j):   a_jj tr(X)/content * label * <U,U'> + b_jj tr(U L_label(X) U')
//   (j,j+1): c * tr(U Delta_X(U'))
inline void build_pencil(EquivariantPencil& out, const CoefficientProfile& prof,
                         const ChainDecomposition& chain) {
    int n = out.n;
    out.pencil.n = n;
    out.pencil.m = 0;
    for (auto& b : out.blocks) {
        b.offset = out.pencil.m;
        out.pencil.m += b.basis.cols();
    }
    out.pencil.coeff.clear();

    std::vector<std::vector<RatMatrix>> mats;
    for (const auto& b : out.blocks) mats.push_back(block_matrices(n, b));

    std::vector<RatMatrix> invariant_gram;
    for (std::size_t j = 0; j < out.blocks.size(); ++j) {
        const auto& b = out.blocks[j];
        RatMatrix g(b.basis.cols(), b.basis.cols());
        if (b.label == 0) {
            g(0, 0) = 1;
        } else {
            for (std::size_t p = 0; p < mats[j].size(); ++p)
                for (std::size_t q = p; q < mats[j].size(); ++q) {
                    g(p, q) = Rational(b.label) * trace(mats[j][p] * mats[j][q]);
                    g(q, p) = g(p, q);
                }
            g = (1 / alpha_content(chain.comps[j].model_basis, n, b.label)) * g;
        }
        invariant_gram.push_back(std::move(g));
    }

    std::size_t nsym = sym_basis_dim(n);
    for (std::size_t k = 0; k < nsym; ++k) {
        RatMatrix s = sym_basis_element(n, k);
        RatMatrix big(out.pencil.m, out.pencil.m);
        Rational tr_s = trace(s);
        for (std::size_t j = 0; j < out.blocks.size(); ++j) {
            const auto& b = out.blocks[j];
            RatMatrix blk(b.basis.cols(), b.basis.cols());
            if (prof.a_diag[j] != 0 && tr_s != 0)
                blk += (prof.a_diag[j] * tr_s) * invariant_gram[j];
            if (prof.b_diag[j] != 0 && b.label >= 1) {
                RatMatrix l = additive_compound(s, b.label);
                for (std::size_t p = 0; p < mats[j].size(); ++p)
                    for (std::size_t q = p; q < mats[j].size(); ++q) {
                        Rational v = prof.b_diag[j] * trace(mats[j][p] * (l * mats[j][q]));
                        blk(p, q) += v;
                        if (q != p) blk(q, p) += v;
                    }
            }
            for (std::size_t p = 0; p < blk.rows(); ++p)
                for (std::size_t q = 0; q < blk.cols(); ++q)
                    big(b.offset + p, b.offset + q) = blk(p, q);
            if (j + 1 < out.blocks.size()) {
                auto it = prof.c_off.find({out.blocks[j].label, out.blocks[j + 1].label});
                if (it != prof.c_off.end()) {
                    const auto& b2 = out.blocks[j + 1];
                    for (std::size_t q = 0; q < mats[j + 1].size(); ++q) {
                        RatMatrix img = delta_apply(s, mats[j + 1][q], n, b2.label);
                        for (std::size_t p = 0; p < mats[j].size(); ++p) {
                            Rational v = it->second * trace(mats[j][p] * img);
                            big(b.offset + p, b2.offset + q) = v;
                            big(b2.offset + q, b.offset + p) = v;
                        }
                    }
                }
            }
        }
        out.pencil.coeff.push_back(std::move(big));
    }
}

}  // namespace detail

// Assemble the O(n)-equivariant pencil Phi over W = direct sum of the
// kernels ker(Delta_I) in Sym_2(wedge^label R^n).
inline EquivariantPencil assemble_phi(const CoefficientProfile& prof,
                                      const ChainDecomposition& chain) {
    EquivariantPencil out;
    out.n = chain.n;
    for (const auto& comp : chain.comps) {
        EqBlock b;
        b.label = comp.label;
        b.basis = detail::w_space_basis(chain.n, comp.label, comp.model_basis);
        b.model_dim = comp.model_basis.cols();
        out.blocks.push_back(std::move(b));
    }
    detail::build_pencil(out, prof, chain);
    return out;
}

// Gram of Phi(X) compressed to the embedded V (the leading model columns of
// every block). For diagonal X this equals phi in chain coordinates.
inline RatMatrix restrict_to_v(const EquivariantPencil& phi_big, const RatMatrix& gram) {
    std::vector<std::size_t> keep;
    for (const auto& b : phi_big.blocks)
        for (std::size_t c = 0; c < b.model_dim; ++c) keep.push_back(b.offset + c);
    RatMatrix out(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = gram(keep[i], keep[j]);
    return out;
}

struct PsdEquivalenceReport {
    int samples = 0;
    int disagreements = 0;
    std::vector<RatMatrix> witnesses;  // offending X's
};

// For seeded random symmetric X = Q^t diag(lambda) Q with rational-orthogonal
// Cayley Q: psd_check(Phi(X)) must agree with psd_check(phi(lambda)).
template <typename PhiOfLambda>
inline PsdEquivalenceReport psd_equivalence_check(const EquivariantPencil& phi_big,
                                                  PhiOfLambda&& phi_of_lambda, int samples,
                                                  Rng& rng) {
    PsdEquivalenceReport rep;
    int n = phi_big.n;
    for (int it = 0; it < samples; ++it) {
        auto lambda = rng.rational_vector(n, 4, 2);
        RatMatrix q = rng.random_orthogonal(n);
        RatMatrix d(n, n);
        for (int i = 0; i < n; ++i) d(i, i) = lambda[i];
        RatMatrix x = q.transpose() * d * q;
        bool big = psd_check(phi_big.eval(x));
        bool small = psd_check(phi_of_lambda(lambda));
        ++rep.samples;
        if (big != small) {
            ++rep.disagreements;
            rep.witnesses.push_back(x);
        }
    }
    return rep;
}

// ---- minors compression -----------------------------------------------------

// Coefficient matrix of A -> f_A = tr(A wedge^d X) over the t^-basis:
// rows are degree-d monomials in the entries x_ij (i <= j), columns t^-basis.
inline RatMatrix minor_coefficient_matrix(int n, int d) {
    TBasis tb(n, d);
    int nv = n * (n + 1) / 2;
    std::vector<MultiPoly> cols;
    std::map<std::vector<int>, std::size_t> mono_index;
    for (std::size_t k = 0; k < tb.size(); ++k) {
        auto [ra, rb] = tb.pair(k);
        const Subset& s = tb.subsets().unrank(ra);
        const Subset& t = tb.subsets().unrank(rb);
        MultiPoly det_poly(nv);
        if (d == 0) {
            det_poly = MultiPoly::constant(nv, Rational(1));
        } else {
            std::vector<int> perm(d);
            for (int i = 0; i < d; ++i) perm[i] = i;
            std::vector<int> c(d, 0);
            int sign_acc = 1;
            auto add = [&](int sgn) {
                std::vector<int> expo(nv, 0);
                for (int i = 0; i < d; ++i) {
                    int a = s[i], bb = t[perm[i]];
                    expo[sym_basis_index(n, std::min(a, bb) - 1, std::max(a, bb) - 1)] += 1;
                }
                det_poly.add_term(expo, Rational(sgn));
            };
            add(sign_acc);
            int i = 0;
            while (i < d) {
                if (c[i] < i) {
                    if (i % 2 == 0)
                        std::swap(perm[0], perm[i]);
                    else
                        std::swap(perm[c[i]], perm[i]);
                    sign_acc = -sign_acc;
                    add(sign_acc);
                    ++c[i];
                    i = 0;
                } else {
                    c[i] = 0;
                    ++i;
                }
            }
        }
        det_poly = det_poly.scaled(Rational(tb.theta(k)) * tb.weight_sq(k));
        for (const auto& [e, coef] : det_poly.terms())
            if (!mono_index.count(e)) mono_index[e] = mono_index.size();
        cols.push_back(std::move(det_poly));
    }
    RatMatrix m(mono_index.size(), tb.size());
    for (std::size_t k = 0; k < cols.size(); ++k)
        for (const auto& [e, coef] : cols[k].terms()) m(mono_index.at(e), k) = coef;
    return m;
}

inline std::size_t min_space_dim(int n, int d) { return rank(minor_coefficient_matrix(n, d)); }

inline Rational min_space_dim_formula(int n, int d) {
    Rational r = 1;
    for (int i = 1; i <= d; ++i)
        r *= make_rational(Integer(long(n) + 1 - i) * Integer(long(n) + 2 - i),
                           Integer(long(d) + 1 - i) * Integer(long(d) + 2 - i));
    return r;
}

// Restrict every block W_j to W~_j = W_j intersect (ker f)^perp. The embedded
// V is inside every W~_j, so the compressed pencil cuts out the same cone.
inline EquivariantPencil minors_compress(const EquivariantPencil& phi_big,
                                         const CoefficientProfile& prof,
                                         const ChainDecomposition& chain) {
    EquivariantPencil out;
    out.n = chain.n;
    for (std::size_t j = 0; j < phi_big.blocks.size(); ++j) {
        const EqBlock& b = phi_big.blocks[j];
        EqBlock nb;
        nb.label = b.label;
        nb.model_dim = b.model_dim;
        RatMatrix kerf = kernel_basis(minor_coefficient_matrix(chain.n, b.label));
        nb.basis = detail::w_space_basis(chain.n, b.label, chain.comps[j].model_basis, kerf);
        out.blocks.push_back(std::move(nb));
    }
    detail::build_pencil(out, prof, chain);
    return out;
}

struct DerivativeConePencil {
    ChainDecomposition chain;
    CoefficientProfile profile;
    EquivariantPencil full;        // on W = sum of the ker(Delta_I) blocks
    EquivariantPencil compressed;  // minors-compressed, size = dim Min
};

// Spectrahedral pencil for {X in Sym_2(R^n) : lambda(X) in cone(sigma_{n-k,n})},
// the hyperbolicity cone of the k-th Renegar derivative of det.
inline DerivativeConePencil derivative_cone_pencil(int n, int k) {
    if (k < 0 || k > n - 1) throw std::invalid_argument("derivative_cone_pencil: 0 <= k <= n-1");
    int dsig = n - k;  // elementary symmetric degree
    DerivativeConePencil out;
    out.chain = chain_decompose_ma(n, dsig - 1);
    out.profile = extract_profile(compressed_pencil(n, dsig), out.chain);
    out.full = assemble_phi(out.profile, out.chain);
    out.compressed = minors_compress(out.full, out.profile, out.chain);
    return out;
}

// Substitute X = sum x_i A_i; requires A(e) = sum A_i = I exactly.
inline SymPencil restrict_pencil(const EquivariantPencil& phi_big,
                                 const std::vector<RatMatrix>& a) {
    if (a.empty()) throw std::invalid_argument("restrict_pencil: empty pencil");
    RatMatrix s(a[0].rows(), a[0].cols());
    for (const auto& m : a) s += m;
    if (s != RatMatrix::identity(a[0].rows()))
        throw std::invalid_argument("restrict_pencil: A(e) must be the identity");
    SymPencil out;
    out.n = static_cast<int>(a.size());
    out.size = phi_big.size();
    for (const auto& m : a) out.coeff.push_back(phi_big.eval(m));
    return out;
}

// Float fallback for pencils with A(e) positive definite but not the
// identity: congruence by the inverse Cholesky factor of A(e). Explicitly
// inexact; never used on the trusted path.
struct InexactPencil {
    std::size_t n = 0, size = 0;
    std::vector<std::vector<double>> coeff;  // row-major size x size per variable
    bool inexact = true;
};

inline InexactPencil restrict_pencil_inexact(const EquivariantPencil& phi_big,
                                             const std::vector<RatMatrix>& a,
                                             double tol = 1e-9) {
    if (a.empty()) throw std::invalid_argument("restrict_pencil_inexact: empty pencil");
    std::size_t m = a[0].rows();
    RatMatrix s(m, m);
    for (const auto& mat : a) s += mat;
    // double Cholesky of A(e)
    std::vector<double> l(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = s(i, j).get_d();
            for (std::size_t k = 0; k < j; ++k) acc -= l[i * m + k] * l[j * m + k];
            if (i == j) {
                if (acc < tol) throw std::invalid_argument("restrict_pencil_inexact: A(e) not PD");
                l[i * m + i] = std::sqrt(acc);
            } else {
                l[i * m + j] = acc / l[j * m + j];
            }
        }
    // B_i = L^{-1} A_i L^{-t}, then substitute into Phi numerically via the
    // rational pencil evaluated at the rational A_i and congruence in double.
    // Here the congruence acts on the input side: Phi(L^{-1} A_i L^{-t}).
    auto solve_lower = [&](std::vector<double>& col) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < i; ++k) col[i] -= l[i * m + k] * col[k];
            col[i] /= l[i * m + i];
        }
    };
    InexactPencil out;
    out.n = a.size();
    out.size = phi_big.size();
    for (const auto& ai : a) {
        // compute L^{-1} A_i L^{-t} in double
        std::vector<double> b(m * m);
        for (std::size_t c = 0; c < m; ++c) {
            std::vector<double> col(m);
            for (std::size_t r = 0; r < m; ++r) col[r] = ai(r, c).get_d();
            solve_lower(col);
            for (std::size_t r = 0; r < m; ++r) b[r * m + c] = col[r];
        }
        for (std::size_t r = 0; r < m; ++r) {
            std::vector<double> row(m);
            for (std::size_t c = 0; c < m; ++c) row[c] = b[r * m + c];
            solve_lower(row);
            for (std::size_t c = 0; c < m; ++c) b[r * m + c] = row[c];
        }
        // round to a nearby rational grid and evaluate the exact pencil, then
        // store as double; acceptable because the whole path is flagged inexact
        RatMatrix approx(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                double v = 0.5 * (b[r * m + c] + b[c * m + r]);
                approx(r, c) = make_rational(Integer(static_cast<long>(v * 1e9)), Integer(1000000000L));
            }
        RatMatrix img = phi_big.eval(approx);
        std::vector<double> flat(out.size * out.size);
        for (std::size_t r = 0; r < out.size; ++r)
            for (std::size_t c = 0; c < out.size; ++c) flat[r * out.size + c] = img(r, c).get_d();
        out.coeff.push_back(std::move(flat));
    }
    return out;
}

}  // namespace hypercone
