#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace hypercone {

// Sparse multivariate polynomial over Q; exponent vectors of fixed length.
// Used for symbolic identity checks (pencil determinants, kernel identities,
// minor-span coefficient matrices), not in performance-critical paths.
class MultiPoly {
public:
    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly variable(int nvars, int idx, Rational c = Rational(1)) {
        MultiPoly p(nvars);
        std::vector<int> e(nvars, 0);
        e[idx] = 1;
        p.terms_[e] = std::move(c);
        return p;
    }

    static MultiPoly constant(int nvars, Rational c) {
        MultiPoly p(nvars);
        if (c != 0) p.terms_[std::vector<int>(nvars, 0)] = std::move(c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    void add_term(const std::vector<int>& expo, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(expo);
        if (it == terms_.end()) {
            terms_[expo] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    MultiPoly operator-(const MultiPoly& o) const {
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    MultiPoly operator*(const MultiPoly& o) const {
        MultiPoly r(nvars_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                std::vector<int> e(nvars_);
                for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    MultiPoly scaled(const Rational& s) const {
        MultiPoly r(nvars_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
        return r;
    }

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

    Rational eval(const std::vector<Rational>& x) const {
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            Rational m = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) m *= x[i];
            s += m;
        }
        return s;
    }

private:
    int nvars_;
    std::map<std::vector<int>, Rational> terms_;
};

// Symbolic determinant of a linear pencil given by coefficient matrices
// (variable k carries coefficient matrix coeff[k]); Leibniz expansion, meant
// for small sizes in tests.
inline MultiPoly pencil_det_symbolic(const std::vector<RatMatrix>& coeff) {
    if (coeff.empty()) throw std::invalid_argument("pencil_det_symbolic: empty pencil");
    int nv = static_cast<int>(coeff.size());
    std::size_t m = coeff[0].rows();
    // entries as polynomials
    std::vector<MultiPoly> entry(m * m, MultiPoly(nv));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            MultiPoly p(nv);
            for (int k = 0; k < nv; ++k)
                if (coeff[k](i, j) != 0) p = p + MultiPoly::variable(nv, k, coeff[k](i, j));
            entry[i * m + j] = std::move(p);
        }
    // permutations by Heap's algorithm
    std::vector<int> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = static_cast<int>(i);
    MultiPoly acc(nv);
    int sign_acc = 1;
    std::vector<int> c(m, 0);
    auto add_perm = [&](int sgn) {
        MultiPoly prod = MultiPoly::constant(nv, Rational(sgn));
        for (std::size_t i = 0; i < m; ++i) prod = prod * entry[i * m + perm[i]];
        acc = acc + prod;
    };
    add_perm(sign_acc);
    std::size_t i = 0;
    while (i < m) {
        if (c[i] < static_cast<int>(i)) {
            if (i % 2 == 0)
                std::swap(perm[0], perm[i]);
            else
                std::swap(perm[c[i]], perm[i]);
            sign_acc = -sign_acc;
            add_perm(sign_acc);
            ++c[i];
            i = 0;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    return acc;
}

}  // namespace hypercone
