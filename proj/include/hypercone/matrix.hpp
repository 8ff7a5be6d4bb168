#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace hypercone {

// Dense rational matrix, row-major.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RatMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        RatMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto& r : rows) {
            if (r.size() != m.cols()) throw std::invalid_argument("from_rows: ragged rows");
            std::size_t j = 0;
            for (long v : r) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& q : a_)
            if (q != 0) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matmul: shape mismatch");
        RatMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& v = (*this)(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (o(k, j) == 0) continue;
                    r(i, j) += v * o(k, j);
                }
            }
        return r;
    }

    RatMatrix operator+(const RatMatrix& o) const {
        check_same_shape(o, "add");
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }

    RatMatrix operator-(const RatMatrix& o) const {
        check_same_shape(o, "sub");
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

    RatMatrix operator-() const {
        RatMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
        return r;
    }

    RatMatrix& operator+=(const RatMatrix& o) {
        check_same_shape(o, "add");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }

    friend RatMatrix operator*(const Rational& s, const RatMatrix& m) {
        RatMatrix r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.a_.size(); ++i) r.a_[i] = s * m.a_[i];
        return r;
    }

    RatMatrix scaled(const Rational& s) const { return s * (*this); }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }

    RatMatrix col(std::size_t j) const {
        RatMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

    RatMatrix row(std::size_t i) const {
        RatMatrix r(1, cols_);
        for (std::size_t j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
        return r;
    }

    // Horizontal concatenation.
    RatMatrix hcat(const RatMatrix& o) const {
        if (o.empty()) return *this;
        if (empty()) return o;
        if (rows_ != o.rows_) throw std::invalid_argument("hcat: row mismatch");
        RatMatrix r(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }

    RatMatrix vcat(const RatMatrix& o) const {
        if (o.empty()) return *this;
        if (empty()) return o;
        if (cols_ != o.cols_) throw std::invalid_argument("vcat: col mismatch");
        RatMatrix r(rows_ + o.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = o(i, j);
        return r;
    }

    const std::vector<Rational>& data() const { return a_; }
    std::vector<Rational>& data() { return a_; }

private:
    void check_same_shape(const RatMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string(what) + ": shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

inline Rational dot(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != 1 || b.cols() != 1)
        throw std::invalid_argument("dot: expects equal-length column vectors");
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, 0) * b(i, 0);
    return s;
}

inline Rational trace(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("trace: square matrix expected");
    Rational s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
    return s;
}

// In-place reduced row echelon form. Returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

// Scales a column vector to primitive integer entries, leading nonzero positive.
inline void make_primitive(RatMatrix& v) {
    Integer den = 1;
    for (std::size_t i = 0; i < v.rows(); ++i)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v(i, 0).get_den_mpz_t());
    Integer g = 0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        Integer num = Integer(v(i, 0).get_num()) * den / v(i, 0).get_den();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    if (g == 0) return;
    Rational scale = make_rational(den, g);
    int lead = 0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        if (v(i, 0) != 0) {
            lead = sign(v(i, 0));
            break;
        }
    }
    if (lead < 0) scale = -scale;
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, 0) *= scale;
}

// Columns span ker(M). Canonical: RREF back-substitution per free column,
// each vector scaled to primitive integers with positive leading entry.
inline RatMatrix kernel_basis(const RatMatrix& m_in) {
    RatMatrix m = m_in;
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::size_t nullity = m.cols() - pivots.size();
    RatMatrix k(m.cols(), nullity);
    std::size_t out = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatMatrix v(m.cols(), 1);
        v(f, 0) = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) v(pivots[pi], 0) = -m(pi, f);
        make_primitive(v);
        for (std::size_t i = 0; i < m.cols(); ++i) k(i, out) = v(i, 0);
        ++out;
    }
    return k;
}

// One solution of A x = b, or nullopt if inconsistent.
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    RatMatrix aug = a.hcat(b);
    std::vector<std::size_t> pivots = rref(aug);
    for (auto c : pivots)
        if (c >= a.cols()) return std::nullopt;
    RatMatrix x(a.cols(), b.cols());
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
        for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[pi], j) = aug(pi, a.cols() + j);
    return x;
}

inline RatMatrix inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: square matrix expected");
    auto x = solve(a, RatMatrix::identity(a.rows()));
    if (!x || rank(a) != a.rows()) throw std::invalid_argument("inverse: singular matrix");
    return *x;
}

// Fraction-free Bareiss determinant on an integer matrix.
inline Integer det_integer_bareiss(std::vector<Integer> m, std::size_t n) {
    Integer prev = 1;
    int sgn_acc = 1;
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n + j]; };
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sgn_acc = -sgn_acc;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = t;
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    if (n == 0) return 1;
    return sgn_acc > 0 ? at(n - 1, n - 1) : Integer(-at(n - 1, n - 1));
}

inline Rational det(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det: square matrix expected");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    Integer den = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a(i, j).get_den_mpz_t());
    std::vector<Integer> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = Integer(a(i, j).get_num()) * (den / Integer(a(i, j).get_den()));
    Integer d = det_integer_bareiss(std::move(m), n);
    Integer dn;
    mpz_pow_ui(dn.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n));
    return make_rational(d, dn);
}

// Exact membership of column vector v in the column span of basis.
inline bool in_span(const RatMatrix& basis, const RatMatrix& v) {
    if (basis.empty()) return v.is_zero();
    auto x = solve(basis, v);
    return x.has_value();
}

// Coordinates of v in the (independent-column) basis; throws if not in span.
inline RatMatrix coordinates(const RatMatrix& basis, const RatMatrix& v) {
    auto x = solve(basis, v);
    if (!x) throw std::invalid_argument("coordinates: vector not in span");
    return *x;
}

}  // namespace hypercone
