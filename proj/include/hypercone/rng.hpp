#pragma once

#include <cstdint>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace hypercone {

// Deterministic splitmix64 stream; identical output on every platform, so
// seeded sampling suites are byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    // worker stream derived from a master seed; deterministic per index
    static Rng derive(std::uint64_t master, std::uint64_t index) {
        Rng mix(master ^ (0xa0761d6478bd642full * (index + 1)));
        mix.next();
        return mix;
    }

    // rational with numerator in [-num_range, num_range], denominator in [1, den_range]
    Rational rational(long num_range, long den_range) {
        long num = static_cast<long>(next_below(2 * num_range + 1)) - num_range;
        long den = 1 + static_cast<long>(next_below(den_range));
        return rat(num, den);
    }

    std::vector<Rational> rational_vector(int n, long num_range, long den_range) {
        std::vector<Rational> v(n);
        for (auto& q : v) q = rational(num_range, den_range);
        return v;
    }

    RatMatrix random_matrix(int rows, int cols, long num_range, long den_range) {
        RatMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = rational(num_range, den_range);
        return m;
    }

    RatMatrix random_symmetric(int n, long num_range, long den_range) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                m(i, j) = rational(num_range, den_range);
                m(j, i) = m(i, j);
            }
        return m;
    }

    // Rational orthogonal matrix via the Cayley transform (I-S)(I+S)^{-1}
    // of a random rational skew-symmetric S; I+S is always invertible.
    RatMatrix random_orthogonal(int n, long num_range = 2, long den_range = 2) {
        RatMatrix s(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                s(i, j) = rational(num_range, den_range);
                s(j, i) = -s(i, j);
            }
        RatMatrix id = RatMatrix::identity(n);
        return (id - s) * inverse(id + s);
    }

    std::vector<int> random_permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i + 1;
        for (int i = n - 1; i > 0; --i)
            std::swap(p[i], p[next_below(static_cast<std::uint64_t>(i) + 1)]);
        return p;
    }

private:
    std::uint64_t state_;
};

}  // namespace hypercone
