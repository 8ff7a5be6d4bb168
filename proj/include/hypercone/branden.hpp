#pragma once

#include <stdexcept>
#include <vector>

#include "combinat.hpp"
#include "exactla.hpp"
#include "multiaffine.hpp"
#include "pencil.hpp"
#include "rational.hpp"

namespace hypercone {

// Word-indexed pencil B(x) whose PSD locus is the hyperbolicity cone of
// sigma_{d,n}. Diagonal at the word w_1..w_l:
//     (d-1-l)! * ((d-l) x_{w_l} + sum_{j not in w} x_j)      (no x_{w_l}
//     term for the empty word), and off-diagonal entries
//     -(d-l)! * x_{w_l} between a word and its parent prefix.
inline SymPencil branden_pencil(int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("branden_pencil: need 1 <= d <= n");
    WordTable wt = words(n, d);
    SymPencil p;
    p.n = n;
    p.size = wt.size();
    p.coeff.assign(n, RatMatrix(p.size, p.size));
    p.labels.reserve(wt.size());
    for (const Word& w : wt.all()) p.labels.push_back(WordTable::label(w));

    for (std::size_t r = 0; r < wt.size(); ++r) {
        const Word& w = wt.unrank(r);
        int l = static_cast<int>(w.size());
        Rational fac_diag = Rational(factorial(d - 1 - l));
        // sum over letters outside the word
        std::vector<bool> used(n + 1, false);
        for (int v : w) used[v] = true;
        for (int j = 1; j <= n; ++j)
            if (!used[j]) p.coeff[j - 1](r, r) += fac_diag;
        if (l >= 1) {
            p.coeff[w.back() - 1](r, r) += fac_diag * Rational(d - l);
            Word parent(w.begin(), w.end() - 1);
            std::size_t pr = wt.rank(parent);
            Rational fac_off = -Rational(factorial(d - l));
            p.coeff[w.back() - 1](r, pr) += fac_off;
            p.coeff[w.back() - 1](pr, r) += fac_off;
        }
    }
    return p;
}

// Kernel vector m(x): entry at w_1..w_l is
// prod_i x_{w_i} * sigma_{d-1-l}([n] \ {w_1..w_l}); B(x) m(x) = delta_{} d! sigma_d.
struct WordVector {
    int n = 0, d = 0;
    WordTable table;
    // per word: multiplier monomial (the word letters) and a multiaffine factor
    std::vector<std::pair<Word, MaElement>> entries;

    Rational eval_entry(std::size_t r, const std::vector<Rational>& x) const {
        Rational m = 1;
        for (int v : entries[r].first) m *= x[v - 1];
        return m * entries[r].second.eval(x);
    }

    std::vector<Rational> eval(const std::vector<Rational>& x) const {
        std::vector<Rational> out(entries.size());
        for (std::size_t r = 0; r < entries.size(); ++r) out[r] = eval_entry(r, x);
        return out;
    }
};

inline WordVector kernel_vector(int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("kernel_vector: need 1 <= d <= n");
    WordVector mv;
    mv.n = n;
    mv.d = d;
    mv.table = words(n, d);
    for (const Word& w : mv.table.all()) {
        Subset rest = full_set(n);
        for (int v : w) rest = set_minus(rest, v);
        int l = static_cast<int>(w.size());
        mv.entries.emplace_back(w, sigma(d - 1 - l, rest, n));
    }
    return mv;
}

// Compression matrix Q: rows indexed by words, columns by (d-1)-subsets;
// entry 1 iff all letters of the word lie in the subset.
inline RatMatrix branden_q(int n, int d) {
    WordTable wt = words(n, d);
    SubsetTable st(n, d - 1);
    RatMatrix q(wt.size(), st.size());
    for (std::size_t r = 0; r < wt.size(); ++r) {
        const Word& w = wt.unrank(r);
        for (std::size_t c = 0; c < st.size(); ++c) {
            const Subset& s = st.unrank(c);
            bool inside = true;
            for (int v : w)
                if (!contains(s, v)) { inside = false; break; }
            if (inside) q(r, c) = 1;
        }
    }
    return q;
}

// Compressed pencil B~(x) of size C(n,d-1), built from the closed-form entry
//     B~(x)[I,J] = 1/(d - |I n J|) * sum_{k not in I u J} x_k.
// Equals (1/d!) Q^t B(x) Q; that equality is a test, not a runtime path.
inline SymPencil compressed_pencil(int n, int d) {
    if (d < 1 || d > n) throw std::invalid_argument("compressed_pencil: need 1 <= d <= n");
    SubsetTable st(n, d - 1);
    SymPencil p;
    p.n = n;
    p.size = st.size();
    p.coeff.assign(n, RatMatrix(p.size, p.size));
    p.labels.reserve(st.size());
    for (std::size_t r = 0; r < st.size(); ++r) p.labels.push_back(subset_label(st.unrank(r)));
    for (std::size_t r = 0; r < st.size(); ++r) {
        const Subset& a = st.unrank(r);
        for (std::size_t c = r; c < st.size(); ++c) {
            const Subset& b = st.unrank(c);
            Subset inter;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(inter));
            Rational f = make_rational(1, Integer(long(d) - long(inter.size())));
            Subset un = set_union(a, b);
            for (int k = 1; k <= n; ++k) {
                if (contains(un, k)) continue;
                p.coeff[k - 1](r, c) += f;
                if (c != r) p.coeff[k - 1](c, r) += f;
            }
        }
    }
    return p;
}

// Compressed kernel vector m~(x): the monomial basis of Ma_{d-1,n}.
inline std::vector<Rational> compressed_kernel_eval(int n, int d,
                                                    const std::vector<Rational>& x) {
    SubsetTable st(n, d - 1);
    std::vector<Rational> out(st.size());
    for (std::size_t r = 0; r < st.size(); ++r) {
        Rational m = 1;
        for (int i : st.unrank(r)) m *= x[i - 1];
        out[r] = m;
    }
    return out;
}

// Membership in the hyperbolicity cone of sigma_{d,n} via the compressed LMI.
inline bool sigma_cone_member(int n, int d, const std::vector<Rational>& a) {
    return psd_check(compressed_pencil(n, d).eval(a));
}

// The explicit non-symmetric-cone 3x3 pencil for sigma_{2,4}: its determinant
// factors as (3/4)(x1+x2+x3) sigma_{2,4}; kept as reusable test data.
inline SymPencil small_sigma24_pencil() {
    SymPencil p;
    p.n = 4;
    p.size = 3;
    p.coeff.assign(4, RatMatrix(3, 3));
    auto set = [&](int var, int r, int c, Rational v) {
        p.coeff[var - 1](r, c) = v;
        p.coeff[var - 1](c, r) = v;
    };
    // row 1: x1+x2+x4, (1/2)x2 + x4, (1/2)x1 + x4
    set(1, 0, 0, 1); set(2, 0, 0, 1); set(4, 0, 0, 1);
    set(2, 0, 1, rat(1, 2)); set(4, 0, 1, 1);
    set(1, 0, 2, rat(1, 2)); set(4, 0, 2, 1);
    // row 2 diagonal: x2+x3+x4; (2,3): (1/2)x3 + x4
    set(2, 1, 1, 1); set(3, 1, 1, 1); set(4, 1, 1, 1);
    set(3, 1, 2, rat(1, 2)); set(4, 1, 2, 1);
    // row 3 diagonal: x1+x3+x4
    set(1, 2, 2, 1); set(3, 2, 2, 1); set(4, 2, 2, 1);
    p.labels = {"1", "2", "3"};
    return p;
}

}  // namespace hypercone
