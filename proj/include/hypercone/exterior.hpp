#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "combinat.hpp"
#include "matrix.hpp"
#include "multiaffine.hpp"
#include "rational.hpp"

namespace hypercone {

// Sign convention for the wedge basis e_S = delta_{s1} ^ ... ^ delta_{sd},
// s1 < ... < sd: contraction of the i-th slot picks up (-1)^(position of i).
inline int wedge_sign_remove(const Subset& s, int i) {
    int cnt = 0;
    for (int v : s) {
        if (v == i) break;
        ++cnt;
    }
    return (cnt % 2 == 0) ? 1 : -1;
}

// Matrix of psi_v : wedge^d R^n -> wedge^(d-1) R^n on the e_S bases.
// psi_{delta_i}(e_T) = +- e_{T \ i} if i in T, else 0; extended linearly in v.
inline RatMatrix psi_matrix(const std::vector<Rational>& v, int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("psi_matrix: need 1 <= d <= n");
    SubsetTable src(n, d), dst(n, d - 1);
    RatMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
        const Subset& t = src.unrank(c);
        for (int i : t) {
            if (v[i - 1] == 0) continue;
            m(dst.rank(set_minus(t, i)), c) += Rational(wedge_sign_remove(t, i)) * v[i - 1];
        }
    }
    return m;
}

// d-th additive compound L_d(X) acting on wedge^d R^n:
// L_d(X)(v_1 ^ ... ^ v_d) = sum_j v_1 ^ ... ^ X v_j ^ ... ^ v_d.
inline RatMatrix additive_compound(const RatMatrix& x, int d) {
    if (!x.is_symmetric()) throw std::invalid_argument("additive_compound: X not symmetric");
    int n = static_cast<int>(x.rows());
    if (d < 0 || d > n) throw std::invalid_argument("additive_compound: need 0 <= d <= n");
    SubsetTable t(n, d);
    RatMatrix l(t.size(), t.size());
    for (std::size_t ct = 0; ct < t.size(); ++ct) {
        const Subset& T = t.unrank(ct);
        for (int tj : T) {
            // diagonal contribution s = tj
            l(ct, ct) += x(tj - 1, tj - 1);
            // off-diagonal: replace tj by s not in T
            Subset rest = set_minus(T, tj);
            for (int s = 1; s <= n; ++s) {
                if (s == tj || contains(T, s)) continue;
                if (x(s - 1, tj - 1) == 0) continue;
                Subset img = rest;
                img.insert(std::lower_bound(img.begin(), img.end(), s), s);
                int sgn_t = wedge_sign_remove(T, tj);
                int sgn_s = wedge_sign_remove(img, s);
                l(t.rank(img), ct) += Rational(sgn_t * sgn_s) * x(s - 1, tj - 1);
            }
        }
    }
    return l;
}

// ---- Sym_2(wedge^d R^n) ---------------------------------------------------
//
// Elements are symmetric N x N matrices over the e_S basis, N = C(n,d).
// Coordinates use the unnormalized t-basis
//     t^_{I,empty,empty} = e_I (x) e_I            (weight 1)
//     t^_{I,J1,J2}       = e_S (x) e_T + e_T (x) e_S, S = I u J1, T = I u J2
//                                                   (weight sqrt(2)/2 in the
//                                                    orthonormal convention)
// so that every stored quantity stays rational; formulas that need the
// normalization square the weight to 1/2.

struct TTriple {
    Subset I, J1, J2;
};

// Cross inversions #{(s,t) in S x T : s > t}. The t-element over the pair
// (S,T) carries the gauge sign (-1)^(inv(S,T) - inv(S,S)); with it the
// letter-removal rule Delta_{diag a}(t_{I,J1,J2}) = sum_{i in I} a_i
// t_{I\i,J1,J2} holds without signs, while diagonal pairs keep gauge +1
// so Ma_{d,n} embeds as plain e_I (x) e_I.
inline int cross_inversions(const Subset& s, const Subset& t) {
    int inv = 0;
    for (int a : s)
        for (int b : t)
            if (a > b) ++inv;
    return inv;
}

class TBasis {
public:
    TBasis() : n_(0), d_(0) {}
    TBasis(int n, int d) : n_(n), d_(d), st_(n, d) {
        std::size_t N = st_.size();
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = a; b < N; ++b) {
                pairs_.emplace_back(a, b);
                int inv = cross_inversions(st_.unrank(a), st_.unrank(b));
                theta_.push_back(((inv - d * (d - 1) / 2) % 2 == 0) ? 1 : -1);
            }
    }

    int n() const { return n_; }
    int d() const { return d_; }
    const SubsetTable& subsets() const { return st_; }
    std::size_t size() const { return pairs_.size(); }
    std::pair<std::size_t, std::size_t> pair(std::size_t k) const { return pairs_[k]; }

    std::size_t index_of_pair(std::size_t a, std::size_t b) const {
        if (a > b) std::swap(a, b);
        std::size_t N = st_.size();
        // row-major upper triangle offset
        return a * N - a * (a + 1) / 2 + b;
    }

    bool is_diagonal(std::size_t k) const { return pairs_[k].first == pairs_[k].second; }

    // For lex-ranked pairs a <= b the smaller set contains min(S (+) T),
    // which is exactly the J1 <= J2 ordering rule of the triples.
    TTriple triple(std::size_t k) const {
        const Subset& s = st_.unrank(pairs_[k].first);
        const Subset& t = st_.unrank(pairs_[k].second);
        TTriple tr;
        std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(tr.I));
        std::set_difference(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(tr.J1));
        std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(tr.J2));
        return tr;
    }

    // <t^_a, t^_b> = weight_sq * delta_ab under (A,B) -> tr(AB)
    Rational weight_sq(std::size_t k) const { return is_diagonal(k) ? 1 : 2; }

    // gauge sign of the basis element over pair k
    int theta(std::size_t k) const { return theta_[k]; }

    RatMatrix vec(const RatMatrix& u) const {
        RatMatrix v(size(), 1);
        for (std::size_t k = 0; k < size(); ++k)
            v(k, 0) = Rational(theta_[k]) * u(pairs_[k].first, pairs_[k].second);
        return v;
    }

    RatMatrix matrix(const RatMatrix& v) const {
        std::size_t N = st_.size();
        RatMatrix u(N, N);
        for (std::size_t k = 0; k < size(); ++k) {
            auto [a, b] = pairs_[k];
            u(a, b) = Rational(theta_[k]) * v(k, 0);
            u(b, a) = u(a, b);
        }
        return u;
    }

private:
    int n_, d_;
    SubsetTable st_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<int> theta_;
};

// Delta_X(U) = sum_{ij} X_ij Psi_i U Psi_j^t : Sym_2(wedge^d) -> Sym_2(wedge^(d-1)).
// For X = v v^t this is psi_v (x) psi_v; linear in X.
inline RatMatrix delta_apply(const RatMatrix& x, const RatMatrix& u, int n, int d) {
    if (!x.is_symmetric()) throw std::invalid_argument("delta_apply: X not symmetric");
    if (d < 1 || d > n) throw std::invalid_argument("delta_apply: need 1 <= d <= n");
    SubsetTable src(n, d), dst(n, d - 1);
    RatMatrix out(dst.size(), dst.size());
    for (std::size_t rs = 0; rs < src.size(); ++rs) {
        const Subset& S = src.unrank(rs);
        for (std::size_t rt = 0; rt < src.size(); ++rt) {
            const Rational& uval = u(rs, rt);
            if (uval == 0) continue;
            const Subset& T = src.unrank(rt);
            for (int i : S) {
                std::size_t ri = dst.rank(set_minus(S, i));
                int sgn_i = wedge_sign_remove(S, i);
                for (int j : T) {
                    if (x(i - 1, j - 1) == 0) continue;
                    int sgn_j = wedge_sign_remove(T, j);
                    out(ri, dst.rank(set_minus(T, j))) +=
                        Rational(sgn_i * sgn_j) * x(i - 1, j - 1) * uval;
                }
            }
        }
    }
    return out;
}

// Adjoint of Delta_I w.r.t. the trace scalar products:
// raise(U) = sum_i Psi_i^t U Psi_i : Sym_2(wedge^d) -> Sym_2(wedge^(d+1)).
inline RatMatrix delta_i_adjoint_apply(const RatMatrix& u, int n, int d) {
    SubsetTable src(n, d), dst(n, d + 1);
    RatMatrix out(dst.size(), dst.size());
    for (std::size_t ra = 0; ra < dst.size(); ++ra) {
        const Subset& A = dst.unrank(ra);
        for (std::size_t rb = ra; rb < dst.size(); ++rb) {
            const Subset& B = dst.unrank(rb);
            Rational acc = 0;
            for (int i : A) {
                if (!contains(B, i)) continue;
                Rational v = u(src.rank(set_minus(A, i)), src.rank(set_minus(B, i)));
                if (v == 0) continue;
                acc += Rational(wedge_sign_remove(A, i) * wedge_sign_remove(B, i)) * v;
            }
            out(ra, rb) = acc;
            out(rb, ra) = acc;
        }
    }
    return out;
}

inline RatMatrix unit_vector(std::size_t dim, std::size_t k) {
    RatMatrix v(dim, 1);
    v(k, 0) = 1;
    return v;
}

// Matrix of Delta_X in t^-coordinates, level d down to d-1.
inline RatMatrix delta_op(const RatMatrix& x, int n, int d) {
    TBasis src(n, d), dst(n, d - 1);
    RatMatrix m(dst.size(), src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
        RatMatrix img = delta_apply(x, src.matrix(unit_vector(src.size(), k)), n, d);
        RatMatrix v = dst.vec(img);
        for (std::size_t r = 0; r < dst.size(); ++r) m(r, k) = v(r, 0);
    }
    return m;
}

// Gram matrix of the bilinear form b_{L_d(X)} : (A,B) -> tr(A L_d(X) B)
// on the t^-basis. tr(E_ab L E_cd) = [a = d] L(b, c).
inline RatMatrix bform(const RatMatrix& x, int d) {
    int n = static_cast<int>(x.rows());
    RatMatrix l = additive_compound(x, d);
    TBasis tb(n, d);
    RatMatrix g(tb.size(), tb.size());
    std::pair<std::size_t, std::size_t> terms[2];
    std::pair<std::size_t, std::size_t> terms2[2];
    for (std::size_t p = 0; p < tb.size(); ++p) {
        auto [s, t] = tb.pair(p);
        int np = (s == t) ? 1 : 2;
        terms[0] = {s, t};
        terms[1] = {t, s};
        for (std::size_t q = p; q < tb.size(); ++q) {
            auto [s2, t2] = tb.pair(q);
            int nq = (s2 == t2) ? 1 : 2;
            terms2[0] = {s2, t2};
            terms2[1] = {t2, s2};
            Rational acc = 0;
            for (int u = 0; u < np; ++u)
                for (int v = 0; v < nq; ++v)
                    if (terms[u].first == terms2[v].second)
                        acc += l(terms[u].second, terms2[v].first);
            acc *= tb.theta(p) * tb.theta(q);
            g(p, q) = acc;
            g(q, p) = acc;
        }
    }
    return g;
}

// Basis of W_{n-d,d} = ker(Delta_I) inside Sym_2(wedge^d R^n), t^-coordinates.
inline RatMatrix w_kernel_basis(int n, int d) {
    if (d == 0) return RatMatrix::identity(1);
    RatMatrix m = delta_op(RatMatrix::identity(n), n, d);
    return kernel_basis(m);
}

// Partition of the t^-basis into the blocks T_{J1,J2}; key is (J1,J2).
inline std::map<std::pair<Subset, Subset>, std::vector<std::size_t>> t_block_split(int n, int d) {
    TBasis tb(n, d);
    std::map<std::pair<Subset, Subset>, std::vector<std::size_t>> blocks;
    for (std::size_t k = 0; k < tb.size(); ++k) {
        TTriple tr = tb.triple(k);
        blocks[{tr.J1, tr.J2}].push_back(k);
    }
    return blocks;
}

// Basis of W_{n-d,d}(J1,J2) = ker(Delta_I) intersected with the block span,
// expressed in the block's t^-coordinates (columns; block index order).
inline RatMatrix w_block_basis(int n, int d, const Subset& j1, const Subset& j2) {
    auto blocks = t_block_split(n, d);
    auto it = blocks.find({j1, j2});
    if (it == blocks.end()) throw std::invalid_argument("w_block_basis: no such block");
    const std::vector<std::size_t>& idx = it->second;
    if (d == 0) return RatMatrix::identity(1);
    RatMatrix full = delta_op(RatMatrix::identity(n), n, d);
    RatMatrix sub(full.rows(), idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t r = 0; r < full.rows(); ++r) sub(r, c) = full(r, idx[c]);
    return kernel_basis(sub);
}

// rho_{d,n} on the block T_{J1,J2}: the t^-labelled element (I,J1,J2) maps to
// (x_{j_1} - x_{j'_1}) ... (x_{j_k} - x_{j'_k}) * prod_{i in I} x_i in Ma_{d,n}.
// Feeding coordinates w.r.t. the orthonormal t-basis into this matrix
// computes rho exactly (the sqrt(2)/2 weights belong to the t's, not to rho).
inline RatMatrix rho_map(int n, int d, const Subset& j1, const Subset& j2) {
    auto blocks = t_block_split(n, d);
    auto it = blocks.find({j1, j2});
    if (it == blocks.end()) throw std::invalid_argument("rho_map: no such block");
    const std::vector<std::size_t>& idx = it->second;
    TBasis tb(n, d);
    SubsetTable ma(n, d);
    int k = static_cast<int>(j1.size());
    RatMatrix m(ma.size(), idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) {
        TTriple tr = tb.triple(idx[c]);
        // expand the product of differences: subsets of picks from J2
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            Subset mono = tr.I;
            int flips = 0;
            for (int b = 0; b < k; ++b) {
                int v = (mask >> b) & 1 ? j2[b] : j1[b];
                flips += (mask >> b) & 1;
                mono.insert(std::lower_bound(mono.begin(), mono.end(), v), v);
            }
            m(ma.rank(mono), c) += (flips % 2 == 0) ? 1 : -1;
        }
    }
    return m;
}

// Diagonal (multiaffine) embedding Ma_{d,n} -> Sym_2(wedge^d R^n):
// the monomial over I goes to e_I (x) e_I.
inline RatMatrix ma_embed_matrix(const MaElement& f) {
    SubsetTable t(f.n, f.d);
    RatMatrix u(t.size(), t.size());
    for (std::size_t r = 0; r < t.size(); ++r) u(r, r) = f.coeffs(r, 0);
    return u;
}

inline RatMatrix ma_embed_coeffs(const RatMatrix& coeffs, int n, int d) {
    SubsetTable t(n, d);
    RatMatrix u(t.size(), t.size());
    for (std::size_t r = 0; r < t.size(); ++r) u(r, r) = coeffs(r, 0);
    return u;
}

}  // namespace hypercone
