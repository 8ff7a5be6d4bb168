#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hypercone/combinat.hpp>
#include <hypercone/exactla.hpp>

using namespace hypercone;

TEST_CASE("subset tables") {
    CHECK(subsets(4, 2).size() == 6);
    CHECK(subsets(5, 2).size() == 10);
    CHECK(subsets(7, 0).size() == 1);
    CHECK(subsets(7, 0).unrank(0).empty());
    CHECK_THROWS(subsets(3, 4));
    CHECK_THROWS(subsets(3, -1));
}

TEST_CASE("rank and unrank are mutually inverse") {
    for (int n = 0; n <= 7; ++n)
        for (int d = 0; d <= n; ++d) {
            SubsetTable t(n, d);
            CHECK(t.size() == binomial(n, d).get_ui());
            for (std::size_t r = 0; r < t.size(); ++r) CHECK(t.rank(t.unrank(r)) == r);
            for (std::size_t r = 1; r < t.size(); ++r) CHECK(t.unrank(r - 1) < t.unrank(r));
        }
}

TEST_CASE("kneser adjacency K(5,2)") {
    RatMatrix a = kneser_adjacency(5, 2);
    CHECK(a.rows() == 10);
    CHECK(a.is_symmetric());
    for (std::size_t i = 0; i < 10; ++i) {
        Rational row_sum = 0;
        CHECK(a(i, i) == 0);
        for (std::size_t j = 0; j < 10; ++j) row_sum += a(i, j);
        CHECK(row_sum == 3);
    }
    CHECK(rank(a) == 10);
}

TEST_CASE("kneser adjacency K(4,2) is a permutation matrix") {
    RatMatrix a = kneser_adjacency(4, 2);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rational row_sum = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) row_sum += a(i, j);
        CHECK(row_sum == 1);
    }
    CHECK(rank(a) == a.rows());
}

TEST_CASE("kneser K(n,0) is [1]") {
    RatMatrix a = kneser_adjacency(6, 0);
    CHECK(a.rows() == 1);
    CHECK(a(0, 0) == 1);
}

TEST_CASE("kneser full rank for all 2m <= n <= 8") {
    for (int n = 0; n <= 8; ++n)
        for (int m = 0; 2 * m <= n; ++m) {
            RatMatrix a = kneser_adjacency(n, m);
            CHECK(rank(a) == a.rows());
        }
}

TEST_CASE("word tables") {
    WordTable w32 = words(3, 2);
    CHECK(w32.size() == 4);
    CHECK(w32.unrank(0).empty());
    CHECK(w32.unrank(1) == Word{1});
    CHECK(w32.unrank(3) == Word{3});

    CHECK(words(4, 2).size() == 5);
    CHECK(words(6, 1).size() == 1);

    WordTable w43 = words(4, 3);
    CHECK(w43.size() == 1 + 4 + 12);
    for (std::size_t r = 0; r < w43.size(); ++r) CHECK(w43.rank(w43.unrank(r)) == r);
    for (std::size_t r = 1; r < w43.size(); ++r) {
        const Word& a = w43.unrank(r - 1);
        const Word& b = w43.unrank(r);
        CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
    }
    for (const Word& w : w43.all()) {
        Word s = w;
        std::sort(s.begin(), s.end());
        CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    }
}

TEST_CASE("set helpers") {
    CHECK(disjoint({1, 3}, {2, 4}));
    CHECK_FALSE(disjoint({1, 3}, {3, 4}));
    CHECK(set_union({1, 4}, {2}) == Subset{1, 2, 4});
    CHECK(complement({2, 3}, 5) == Subset{1, 4, 5});
    CHECK(set_minus({2, 3, 7}, 3) == Subset{2, 7});
}
