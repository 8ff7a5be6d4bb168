#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hypercone/exactla.hpp>
#include <hypercone/rng.hpp>

using namespace hypercone;

TEST_CASE("rational basics") {
    CHECK(parse_rational("-3/6") == rat(-1, 2));
    CHECK(to_string(rat(4, -6)) == "-2/3");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK(common_denominator({rat(1, 2), rat(1, 3), rat(5)}) == 6);
}

TEST_CASE("kernel_basis identity and zero") {
    CHECK(kernel_basis(RatMatrix::identity(3)).cols() == 0);
    RatMatrix z(2, 3);
    RatMatrix k = kernel_basis(z);
    CHECK(k.cols() == 3);
    CHECK((z * k).is_zero());
}

TEST_CASE("kernel_basis of the D_e matrix on Ma_{2,4}") {
    RatMatrix m = RatMatrix::from_rows({{1, 1, 1, 0, 0, 0},
                                        {1, 0, 0, 1, 1, 0},
                                        {0, 1, 0, 1, 0, 1},
                                        {0, 0, 1, 0, 1, 1}});
    RatMatrix k = kernel_basis(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());
    CHECK(rank(m) + k.cols() == m.cols());
}

TEST_CASE("char_poly examples") {
    RatMatrix d = RatMatrix::from_rows({{1, 0}, {0, 2}});
    CHECK(char_poly(d) == UniPoly({rat(2), rat(-3), rat(1)}));  // t^2 - 3t + 2
    RatMatrix m = RatMatrix::from_rows({{2, 1}, {1, 2}});
    CHECK(char_poly(m) == UniPoly({rat(3), rat(-4), rat(1)}));  // t^2 - 4t + 3
    RatMatrix z(3, 3);
    CHECK(char_poly(z) == UniPoly::monomial(3));
}

TEST_CASE("char_poly invariant under signed permutation congruence") {
    Rng rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        int n = 2 + int(rng.next_below(5));
        RatMatrix m = rng.random_symmetric(n, 5, 3);
        // random signed permutation
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.next_below(i + 1)]);
        RatMatrix s(n, n);
        for (int i = 0; i < n; ++i) s(perm[i], i) = rng.next_below(2) ? 1 : -1;
        CHECK(char_poly(s.transpose() * m * s) == char_poly(m));
    }
}

TEST_CASE("psd_check examples") {
    CHECK(psd_check(RatMatrix::from_rows({{2, 1}, {1, 2}})));
    CHECK_FALSE(psd_check(RatMatrix::from_rows({{1, 2}, {2, 1}})));
    CHECK(psd_check(RatMatrix(4, 4)));
    CHECK_THROWS(psd_check(RatMatrix::from_rows({{1, 2}, {0, 1}})));
}

TEST_CASE("ldlt examples") {
    auto r = ldlt_psd_decompose(RatMatrix::from_rows({{4, 0}, {0, 9}}));
    CHECK(r.d(0, 0) == 9);  // largest-diagonal pivot first
    CHECK(r.d(1, 1) == 4);
    CHECK(r.l == RatMatrix::identity(2));

    auto r2 = ldlt_psd_decompose(RatMatrix::from_rows({{2, 1}, {1, 2}}));
    CHECK(r2.d(0, 0) == 2);
    CHECK(r2.d(1, 1) == rat(3, 2));

    auto r3 = ldlt_psd_decompose(RatMatrix::from_rows({{1, 1}, {1, 1}}));
    CHECK(r3.d(0, 0) == 1);
    CHECK(r3.d(1, 1) == 0);

    CHECK_THROWS(ldlt_psd_decompose(RatMatrix::from_rows({{1, 2}, {2, 1}})));
}

TEST_CASE("ldlt reconstructs P^t M P") {
    Rng rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        int n = 1 + int(rng.next_below(6));
        RatMatrix b = rng.random_matrix(n, n, 4, 2);
        RatMatrix m = b * b.transpose();  // PSD by construction
        auto r = ldlt_psd_decompose(m);
        RatMatrix p = permutation_matrix(r.perm);
        CHECK(p.transpose() * m * p == r.l * r.d * r.l.transpose());
    }
}

TEST_CASE("psd_check agrees with LDLT feasibility on 500 random symmetric matrices") {
    Rng rng(0);
    int agree = 0;
    for (int iter = 0; iter < 500; ++iter) {
        int n = 1 + int(rng.next_below(8));
        RatMatrix m = rng.random_symmetric(n, 5, 2);
        bool by_poly = psd_check(m);
        bool by_ldlt = true;
        try {
            ldlt_psd_decompose(m);
        } catch (const std::invalid_argument&) {
            by_ldlt = false;
        }
        CHECK(by_poly == by_ldlt);
        agree += (by_poly == by_ldlt);
    }
    CHECK(agree == 500);
}

TEST_CASE("sturm examples") {
    UniPoly p({rat(-1), rat(0), rat(1)});  // t^2 - 1
    CHECK(sturm_real_rooted(p));
    CHECK_FALSE(roots_all_nonneg(p));

    UniPoly q({rat(-1), rat(-2), rat(3)});  // 3t^2 - 2t - 1, roots 1 and -1/3
    CHECK(sturm_real_rooted(q));
    CHECK_FALSE(roots_all_nonneg(q));

    UniPoly sq = UniPoly::monomial(2);  // t^2
    CHECK(sturm_real_rooted(sq));
    CHECK(roots_all_nonneg(sq));

    UniPoly nr({rat(1), rat(0), rat(1)});  // t^2 + 1
    CHECK_FALSE(sturm_real_rooted(nr));

    CHECK_THROWS(sturm_real_rooted(UniPoly()));

    // (t-2)^3 (t+1): multiplicities handled through the squarefree part
    UniPoly c = UniPoly({rat(-2), rat(1)});
    UniPoly m = c * c * c * UniPoly({rat(1), rat(1)});
    CHECK(sturm_real_rooted(m));
    CHECK_FALSE(roots_all_nonneg(m));
    UniPoly pos = c * c * UniPoly({rat(0), rat(1)});  // (t-2)^2 t
    CHECK(roots_all_nonneg(pos));
}

TEST_CASE("rank-nullity on random matrices") {
    Rng rng(3);
    for (int iter = 0; iter < 40; ++iter) {
        int r = 1 + int(rng.next_below(6)), c = 1 + int(rng.next_below(6));
        RatMatrix m = rng.random_matrix(r, c, 3, 2);
        RatMatrix k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(rank(m) + k.cols() == m.cols());
        if (k.cols()) CHECK(rank(k) == k.cols());
    }
}

TEST_CASE("det and inverse") {
    RatMatrix m = RatMatrix::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
    CHECK(det(m) == 18);
    CHECK(m * inverse(m) == RatMatrix::identity(3));
}
