#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hypercone/exactla.hpp>
#include <hypercone/multiaffine.hpp>
#include <hypercone/rng.hpp>

using namespace hypercone;

namespace {

// coefficient vector of a polynomial given as a list of (subset, coeff)
RatMatrix ma_coeffs(int n, int d, std::initializer_list<std::pair<Subset, long>> terms) {
    SubsetTable t(n, d);
    RatMatrix v(t.size(), 1);
    for (const auto& [s, c] : terms) v(t.rank(s), 0) += c;
    return v;
}

}  // namespace

TEST_CASE("sigma coefficients") {
    MaElement s24 = sigma_full(2, 4);
    for (std::size_t r = 0; r < s24.coeffs.rows(); ++r) CHECK(s24.coeffs(r, 0) == 1);

    MaElement s0 = sigma(0, {1, 3}, 4);
    CHECK(s0.coeffs(0, 0) == 1);

    MaElement s13 = sigma_full(1, 3);
    CHECK(s13.coeffs.rows() == 3);
    for (std::size_t r = 0; r < 3; ++r) CHECK(s13.coeffs(r, 0) == 1);

    MaElement part = sigma(2, {1, 2, 4}, 4);
    CHECK(part.coeffs == ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 4}, 1}, {{2, 4}, 1}}));

    CHECK_THROWS(sigma(3, {1, 2}, 4));
}

TEST_CASE("deriv_matrix matches the displayed 4x6 matrix for n=4, d=2, a=e") {
    RatMatrix m = deriv_e_matrix(4, 2);
    RatMatrix expected = RatMatrix::from_rows({{1, 1, 1, 0, 0, 0},
                                               {1, 0, 0, 1, 1, 0},
                                               {0, 1, 0, 1, 0, 1},
                                               {0, 0, 1, 0, 1, 1}});
    CHECK(m == expected);
}

TEST_CASE("D_e sigma_d = (n-d+1) sigma_{d-1}") {
    for (int n = 2; n <= 6; ++n)
        for (int d = 1; d <= n; ++d) {
            RatMatrix lhs = deriv_e_matrix(n, d) * sigma_full(d, n).coeffs;
            RatMatrix rhs = Rational(n - d + 1) * sigma_full(d - 1, n).coeffs;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("deriv_matrix linear in a; zero direction gives zero map") {
    Rng rng(5);
    int n = 5, d = 3;
    auto a = rng.rational_vector(n, 4, 3);
    auto b = rng.rational_vector(n, 4, 3);
    std::vector<Rational> apb(n);
    for (int i = 0; i < n; ++i) apb[i] = a[i] + b[i];
    CHECK(deriv_matrix(apb, n, d) == deriv_matrix(a, n, d) + deriv_matrix(b, n, d));
    CHECK(deriv_matrix(std::vector<Rational>(n, Rational(0)), n, d).is_zero());
}

TEST_CASE("iota examples") {
    // iota_2(e) = 2 sigma_2 for n=4
    RatMatrix img(6, 1);
    RatMatrix io = iota(2, 4);
    for (int i = 0; i < 4; ++i)
        for (std::size_t r = 0; r < 6; ++r) img(r, 0) += io(r, i);
    CHECK(img == Rational(2) * sigma_full(2, 4).coeffs);

    CHECK(iota(1, 5) == RatMatrix::identity(5));
    CHECK(rank(iota(2, 4)) == 4);
    CHECK_THROWS(iota(0, 4));
    CHECK_THROWS(iota(4, 4));
}

TEST_CASE("chain decomposition of Ma_{1,4} matches the displayed bases") {
    ChainDecomposition cd = chain_decompose_ma(4, 1);
    REQUIRE(cd.comps.size() == 2);
    CHECK(cd.comps[0].label == 0);
    CHECK(cd.comps[0].basis == ma_coeffs(4, 1, {{{1}, 1}, {{2}, 1}, {{3}, 1}, {{4}, 1}}));
    CHECK(cd.comps[1].label == 1);
    RatMatrix v31 = cd.comps[1].basis;
    REQUIRE(v31.cols() == 3);
    for (int j = 0; j < 3; ++j) {
        RatMatrix expected = ma_coeffs(4, 1, {{{1}, 1}, {{j + 2}, -1}});
        CHECK(v31.col(j) == expected);
    }
}

TEST_CASE("chain decomposition of Ma_{2,4}: spans match the displayed components") {
    ChainDecomposition cd = chain_decompose_ma(4, 2);
    REQUIRE(cd.comps.size() == 3);

    const RatMatrix& v4 = cd.by_label(0).basis;
    CHECK(v4 == sigma_full(2, 4).coeffs);

    // V_{3,1} display: (x1-x2)(x3+x4), (x1-x3)(x2+x4), (x1-x4)(x2+x3)
    const RatMatrix& v31 = cd.by_label(1).basis;
    REQUIRE(v31.cols() == 3);
    RatMatrix d1 = ma_coeffs(4, 2, {{{1, 3}, 1}, {{1, 4}, 1}, {{2, 3}, -1}, {{2, 4}, -1}});
    RatMatrix d2 = ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 4}, 1}, {{2, 3}, -1}, {{3, 4}, -1}});
    RatMatrix d3 = ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 3}, 1}, {{2, 4}, -1}, {{3, 4}, -1}});
    CHECK(v31.col(0) == d1);
    CHECK(v31.col(1) == d2);
    CHECK(v31.col(2) == d3);

    // V_{2,2} display: (x1-x4)(x2-x3) and (x1-x3)(x2-x4); exact span equality
    const RatMatrix& v22 = cd.by_label(2).basis;
    REQUIRE(v22.cols() == 2);
    RatMatrix p1 = ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 3}, -1}, {{2, 4}, -1}, {{3, 4}, 1}});
    RatMatrix p2 = ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 4}, -1}, {{2, 3}, -1}, {{3, 4}, 1}});
    CHECK(in_span(v22, p1));
    CHECK(in_span(v22, p2));
    CHECK(in_span(p1.hcat(p2), v22.col(0)));
    CHECK(in_span(p1.hcat(p2), v22.col(1)));

    // the component is the kernel of D_e
    CHECK((deriv_e_matrix(4, 2) * v22).is_zero());
}

TEST_CASE("chain decomposition general properties") {
    for (int n = 1; n <= 6; ++n)
        for (int d = 0; d <= n; ++d) {
            ChainDecomposition cd = chain_decompose_ma(n, d);
            std::size_t total = 0;
            for (std::size_t a = 0; a < cd.comps.size(); ++a) {
                const auto& c = cd.comps[a];
                total += c.basis.cols();
                // dimension C(n,i) - C(n,i-1)
                Integer expect = binomial(n, c.label) -
                                 (c.label ? binomial(n, c.label - 1) : Integer(0));
                CHECK(Integer(long(c.basis.cols())) == expect);
                // component i sits inside ker(D_e^{d-i+1}); label 0 survives
                // every derivative down to the constants
                if (c.label >= 1) {
                    RatMatrix img = c.basis;
                    for (int level = d; level >= c.label; --level)
                        img = deriv_e_matrix(n, level) * img;
                    CHECK(img.is_zero());
                }
                // mutual orthogonality
                for (std::size_t b = 0; b < a; ++b)
                    CHECK((cd.comps[b].basis.transpose() * c.basis).is_zero());
            }
            CHECK(total == subsets(n, d).size());
        }
}

TEST_CASE("chain components are S_n-stable (20 random permutations)") {
    Rng rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        int n = 3 + int(rng.next_below(3));
        int d = int(rng.next_below(n + 1));
        auto perm = rng.random_permutation(n);
        RatMatrix p = ma_permutation_matrix(perm, n, d);
        ChainDecomposition cd = chain_decompose_ma(n, d);
        for (const auto& c : cd.comps) {
            RatMatrix moved = p * c.basis;
            for (std::size_t j = 0; j < moved.cols(); ++j) CHECK(in_span(c.basis, moved.col(j)));
        }
    }
}

TEST_CASE("Ma_{d,n-1} intersects V_{n-d,d} nontrivially for 0 <= 2d < n") {
    for (int n = 2; n <= 6; ++n)
        for (int d = 1; 2 * d < n; ++d) {
            ChainDecomposition cd = chain_decompose_ma(n, d);
            const RatMatrix& comp = cd.by_label(d).basis;
            // monomials containing x_n span the complement of Ma_{d,n-1}
            SubsetTable t(n, d);
            std::vector<std::size_t> uses_n;
            for (std::size_t r = 0; r < t.size(); ++r)
                if (contains(t.unrank(r), n)) uses_n.push_back(r);
            // stacked system: element of comp with zero coefficients on x_n-monomials
            RatMatrix rows(uses_n.size(), comp.cols());
            for (std::size_t i = 0; i < uses_n.size(); ++i)
                for (std::size_t j = 0; j < comp.cols(); ++j) rows(i, j) = comp(uses_n[i], j);
            CHECK(kernel_basis(rows).cols() > 0);
        }
}

TEST_CASE("D_e^{n-2d} iso and the Kneser matrix identity") {
    for (int n = 1; n <= 8; ++n)
        for (int d = 0; 2 * d <= n; ++d) {
            // Psi = psi o D_e^{n-2d} : Ma_{n-d} -> Ma_{n-d}; psi sends the
            // monomial over T to 1/(n-2d)! times the monomial over T^c.
            RatMatrix de = RatMatrix::identity(subsets(n, n - d).size());
            for (int level = n - d; level > d; --level) de = deriv_e_matrix(n, level) * de;
            SubsetTable lo(n, d), hi(n, n - d);
            RatMatrix psi(hi.size(), lo.size());
            Rational f = make_rational(1, factorial(n - 2 * d));
            for (std::size_t r = 0; r < lo.size(); ++r)
                psi(hi.rank(complement(lo.unrank(r), n)), r) = f;
            RatMatrix big_psi = psi * de;
            CHECK(rank(big_psi) == hi.size());  // isomorphism

            // equals the Kneser adjacency matrix after complement relabeling:
            // entry (U, S) is 1 iff U^c and S^c are disjoint d-subsets
            SubsetTable ds(n, d);
            RatMatrix reindex(hi.size(), ds.size());
            for (std::size_t r = 0; r < ds.size(); ++r)
                reindex(hi.rank(complement(ds.unrank(r), n)), r) = 1;
            CHECK(reindex.transpose() * big_psi * reindex == kneser_adjacency(n, d));
        }
}
