#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace hypercone {

// Symmetric linear matrix pencil A(x) = x_1 A_1 + ... + x_n A_n.
struct SymPencil {
    int n = 0;           // number of variables
    std::size_t size = 0;
    std::vector<RatMatrix> coeff;     // n symmetric size x size matrices
    std::vector<std::string> labels;  // row/column labels (words or subsets)

    RatMatrix eval(const std::vector<Rational>& x) const {
        if (static_cast<int>(x.size()) != n) throw std::invalid_argument("pencil eval: dimension");
        RatMatrix m(size, size);
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            m += x[i] * coeff[i];
        }
        return m;
    }
};

// Index of the symmetric-matrix basis {E_ii} u {E_ij + E_ji, i<j} of
// Sym_2(R^n): the diagonal entries first, then the strict upper triangle
// in row-major order.
inline std::size_t sym_basis_dim(int n) { return std::size_t(n) * (n + 1) / 2; }

inline std::size_t sym_basis_index(int n, int i, int j) {
    if (i == j) return i;
    if (i > j) std::swap(i, j);
    // offset of the (i,j) strict-upper entry
    std::size_t off = n;
    off += std::size_t(i) * (2 * n - i - 1) / 2;
    return off + (j - i - 1);
}

inline RatMatrix sym_basis_element(int n, std::size_t k) {
    RatMatrix e(n, n);
    if (k < static_cast<std::size_t>(n)) {
        e(k, k) = 1;
        return e;
    }
    std::size_t r = k - n;
    for (int i = 0; i < n; ++i) {
        std::size_t row_len = n - i - 1;
        if (r < row_len) {
            e(i, i + 1 + r) = 1;
            e(i + 1 + r, i) = 1;
            return e;
        }
        r -= row_len;
    }
    throw std::invalid_argument("sym_basis_element: index out of range");
}

// Coordinates of a symmetric X in that basis: X = sum_i X_ii E_ii
// + sum_{i<j} X_ij (E_ij + E_ji).
inline std::vector<Rational> sym_coordinates(const RatMatrix& x) {
    int n = static_cast<int>(x.rows());
    std::vector<Rational> c(sym_basis_dim(n));
    for (int i = 0; i < n; ++i) c[i] = x(i, i);
    std::size_t k = n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c[k++] = x(i, j);
    return c;
}

// Linear map from symmetric n x n matrices to symmetric m x m matrices,
// stored through the images of the symmetric basis.
struct MatPencil {
    int n = 0;           // input side: Sym_2(R^n)
    std::size_t m = 0;   // output size
    std::vector<RatMatrix> coeff;  // one m x m matrix per symmetric basis element

    RatMatrix eval(const RatMatrix& x) const {
        if (!x.is_symmetric() || static_cast<int>(x.rows()) != n)
            throw std::invalid_argument("matpencil eval: expects symmetric n x n");
        auto c = sym_coordinates(x);
        RatMatrix out(m, m);
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            out += c[k] * coeff[k];
        }
        return out;
    }
};

}  // namespace hypercone
