#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace hypercone {

// Univariate polynomial over the rationals, coefficients ascending in degree.
// Invariant: leading coefficient nonzero unless the polynomial is zero.
class UniPoly {
public:
    UniPoly() {}
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(Rational v) {
        UniPoly p;
        if (v != 0) p.c_ = {std::move(v)};
        return p;
    }

    static UniPoly monomial(std::size_t deg, Rational v = Rational(1)) {
        UniPoly p;
        if (v != 0) {
            p.c_.assign(deg + 1, Rational(0));
            p.c_[deg] = std::move(v);
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    const Rational& lead() const {
        if (is_zero()) throw std::logic_error("lead of zero polynomial");
        return c_.back();
    }

    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(long(i)) * c_[i];
        return UniPoly(std::move(d));
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly operator-(const UniPoly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly operator-() const {
        std::vector<Rational> r(c_);
        for (auto& q : r) q = -q;
        return UniPoly(std::move(r));
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        return UniPoly(std::move(r));
    }

    UniPoly scaled(const Rational& s) const {
        std::vector<Rational> r(c_);
        for (auto& q : r) q *= s;
        return UniPoly(std::move(r));
    }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    // Euclidean remainder of *this by d.
    UniPoly rem(const UniPoly& d) const {
        if (d.is_zero()) throw std::invalid_argument("rem: division by zero polynomial");
        std::vector<Rational> r(c_);
        long dd = d.degree();
        while (static_cast<long>(r.size()) - 1 >= dd) {
            if (r.back() == 0) {
                r.pop_back();
                continue;
            }
            Rational f = r.back() / d.lead();
            std::size_t off = r.size() - 1 - dd;
            for (long i = 0; i <= dd; ++i) r[off + i] -= f * d[i];
            r.pop_back();
        }
        return UniPoly(std::move(r));
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += (sign(c_[i]) > 0) ? " + " : " - ";
            else if (sign(c_[i]) < 0) s += "-";
            Rational a = abs(c_[i]);
            bool unit = (a == 1) && i > 0;
            if (!unit) s += to_string(a);
            if (i > 0) {
                if (!unit) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Monic gcd.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.rem(b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(1 / a.lead());
}

// p with repeated roots stripped: p / gcd(p, p').
inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_part: zero polynomial");
    UniPoly g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    // exact division p / g via repeated leading-term elimination
    std::vector<Rational> r(p.coeffs());
    std::vector<Rational> q(p.coeffs().size() - g.coeffs().size() + 1, Rational(0));
    long dg = g.degree();
    while (static_cast<long>(r.size()) - 1 >= dg) {
        if (r.back() == 0) {
            r.pop_back();
            continue;
        }
        Rational f = r.back() / g.lead();
        std::size_t off = r.size() - 1 - dg;
        q[off] = f;
        for (long i = 0; i <= dg; ++i) r[off + i] -= f * g[i];
        r.pop_back();
    }
    return UniPoly(std::move(q));
}

// Sturm chain of a squarefree polynomial.
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain;
    chain.push_back(p);
    UniPoly d = p.derivative();
    if (!d.is_zero()) chain.push_back(d);
    while (chain.size() >= 2 && !chain.back().is_zero()) {
        UniPoly r = chain[chain.size() - 2].rem(chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

namespace detail {

enum class SturmPoint { NegInf, PosInf, Finite };

inline int sturm_variations(const std::vector<UniPoly>& chain, SturmPoint kind,
                            const Rational& x = Rational(0)) {
    int v = 0, prev = 0;
    for (const auto& p : chain) {
        int s;
        if (p.is_zero())
            s = 0;
        else if (kind == SturmPoint::Finite)
            s = sign(p.eval(x));
        else {
            s = sign(p.lead());
            if (kind == SturmPoint::NegInf && (p.degree() % 2 != 0)) s = -s;
        }
        if (s != 0) {
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
    }
    return v;
}

}  // namespace detail

// Number of distinct real roots of the squarefree polynomial p in (a, b],
// where the bounds may be infinite.
inline int count_distinct_real_roots(const UniPoly& squarefree) {
    auto chain = sturm_chain(squarefree);
    using detail::SturmPoint;
    return detail::sturm_variations(chain, SturmPoint::NegInf) -
           detail::sturm_variations(chain, SturmPoint::PosInf);
}

// True iff all complex roots of p are real (counted with multiplicity via the
// squarefree part). Nonzero constants are vacuously real-rooted.
inline bool sturm_real_rooted(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("sturm_real_rooted: zero polynomial");
    UniPoly q = squarefree_part(p);
    if (q.degree() <= 0) return true;
    return count_distinct_real_roots(q) == static_cast<int>(q.degree());
}

// True iff p is real-rooted and has no root in (-inf, 0); roots at 0 allowed.
inline bool roots_all_nonneg(const UniPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("roots_all_nonneg: zero polynomial");
    if (!sturm_real_rooted(p)) return false;
    UniPoly q = squarefree_part(p);
    // strip the root at zero so Sturm is evaluated at a non-root
    if (q.degree() >= 0 && q[0] == 0) {
        std::vector<Rational> c(q.coeffs().begin() + 1, q.coeffs().end());
        q = UniPoly(std::move(c));
    }
    if (q.degree() <= 0) return true;
    auto chain = sturm_chain(q);
    using detail::SturmPoint;
    int neg_roots = detail::sturm_variations(chain, SturmPoint::NegInf) -
                    detail::sturm_variations(chain, SturmPoint::Finite, Rational(0));
    return neg_roots == 0;
}

// Exact interpolation: the unique polynomial of degree < points.size()
// through the given (x, y) pairs (Lagrange).
inline UniPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    UniPoly acc;
    for (std::size_t i = 0; i < points.size(); ++i) {
        UniPoly li = UniPoly::constant(1);
        Rational denom = 1;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            li = li * UniPoly({-points[j].first, Rational(1)});
            denom *= points[i].first - points[j].first;
        }
        acc = acc + li.scaled(points[i].second / denom);
    }
    return acc;
}

}  // namespace hypercone
