#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "congr/heckechar.hpp"

using namespace congr;

namespace {

mpz_class norm_of(const ImagQuadField& K, const QuadInt& z) {
    return (z.a * z.a + K.disc_abs * z.b * z.b) / 4;
}

bool unit_equivalent(const ImagQuadField& K, QuadInt x, const QuadInt& y) {
    // walk the unit orbit of x and compare
    auto rot = [&](const QuadInt& z) -> QuadInt {
        if (K.disc_abs == 3) return {(z.a - 3 * z.b) / 2, (z.a + z.b) / 2};
        if (K.disc_abs == 4) return {-2 * z.b, z.a / 2};
        return {-z.a, -z.b};
    };
    QuadInt cur = x;
    for (int i = 0; i < K.unit_order; ++i) {
        if (cur.a == y.a && cur.b == y.b) return true;
        if (-cur.a == y.a && -cur.b == y.b) return true;
        cur = rot(cur);
    }
    return false;
}

}  // namespace

TEST_CASE("field validation") {
    auto K = ImagQuadField::of_disc(-3);
    CHECK(K.unit_order == 6);
    CHECK(ImagQuadField::of_disc(-4).unit_order == 4);
    CHECK(ImagQuadField::of_disc(-7).unit_order == 2);
    CHECK_THROWS_AS(ImagQuadField::of_disc(-5), UnsupportedField);
    CHECK_THROWS_AS(ImagQuadField::of_disc(-15), UnsupportedField);  // h = 2
}

TEST_CASE("ideals_of_norm") {
    auto K = ImagQuadField::of_disc(-3);
    auto i3 = ideals_of_norm(K, 3);
    REQUIRE(i3.size() == 1);
    CHECK(norm_of(K, i3[0]) == 3);
    CHECK(unit_equivalent(K, i3[0], {0, 2}));  // sqrt(-3) = (0 + 2 sqrt(-3))/2

    auto i7 = ideals_of_norm(K, 7);
    REQUIRE(i7.size() == 2);
    CHECK(norm_of(K, i7[0]) == 7);
    CHECK(norm_of(K, i7[1]) == 7);
    bool match = (unit_equivalent(K, i7[0], {5, 1}) && unit_equivalent(K, i7[1], {5, -1})) ||
                 (unit_equivalent(K, i7[0], {5, -1}) && unit_equivalent(K, i7[1], {5, 1}));
    CHECK(match);  // generators (5 +- sqrt(-3))/2
    CHECK_FALSE(unit_equivalent(K, i7[0], i7[1]));

    CHECK(ideals_of_norm(K, 2).empty());  // 2 inert
    CHECK(ideals_of_norm(K, 9).size() == 1);
    CHECK(ideals_of_norm(K, 4).size() == 1);
}

TEST_CASE("cm_form reproduces the known expansion through q^19") {
    auto K = ImagQuadField::of_disc(-3);
    QExpansion g = cm_form(K, -6, 19);
    long expected[20] = {0, 1, 0, -27, 64, 0, 0, -286, 0, 729, 0, 0, -1728, 506, 0, 0, 4096, 0, 0, -10582};
    for (long n = 1; n <= 19; ++n) CHECK(g.a(n) == expected[n]);
    CHECK(g.weight == 7);
    CHECK(g.level == 3);
    CHECK(g.character.kronecker_disc == -3);
}

TEST_CASE("cm_form a(13) against the Newton power-sum recursion") {
    // (5 +- sqrt(-3))/2-style: norm-13 generators have trace 7, norm 13
    long p0 = 2, p1 = 7;
    for (int k = 2; k <= 6; ++k) {
        long pk = 7 * p1 - 13 * p0;
        p0 = p1;
        p1 = pk;
    }
    CHECK(p1 == 506);
    auto K = ImagQuadField::of_disc(-3);
    QExpansion g = cm_form(K, -6, 13);
    CHECK(g.a(13) == p1);
}

TEST_CASE("cm_form hecke structure") {
    auto K = ImagQuadField::of_disc(-3);
    long N = 600;
    QExpansion g = cm_form(K, -6, N);
    auto chi = K.chi();
    // multiplicativity
    for (long m = 2; m <= 24; ++m) {
        for (long n = m + 1; m * n <= N; ++n) {
            mpz_class gc;
            mpz_gcd(gc.get_mpz_t(), mpz_class(m).get_mpz_t(), mpz_class(n).get_mpz_t());
            if (gc != 1) continue;
            CHECK(g.a(m * n) == g.a(m) * g.a(n));
        }
    }
    // recursion at prime powers: a(p^{r+1}) = a(p)a(p^r) - chi(p) p^6 a(p^{r-1})
    for (long p : {2, 3, 5, 7, 11, 13}) {
        mpz_class p6;
        mpz_ui_pow_ui(p6.get_mpz_t(), p, 6);
        long pr = p;
        while (pr * p <= N) {
            CHECK(g.a(pr * p) == g.a(p) * g.a(pr) - chi(p) * p6 * g.a(pr / p));
            pr *= p;
        }
    }
    // CM vanishing at inert primes, Ramanujan bound at split primes
    for (long p = 2; p <= N; ++p) {
        if (!is_prime(mpz_class(p))) continue;
        if (chi(p) == -1) {
            CHECK(g.a(p) == 0);
        } else if (chi(p) == 1) {
            double bound = 2.0 * std::pow(static_cast<double>(p), 3.0) * (1 + 1e-9);
            CHECK(std::abs(g.a(p).get_d()) < bound);
        }
    }
}

TEST_CASE("cm_form obstructions") {
    auto K = ImagQuadField::of_disc(-3);
    CHECK_THROWS_AS(cm_form(K, -4, 10), UnitObstruction);  // 6 does not divide 4
    CHECK_THROWS_AS(cm_form(K, 6, 10), Error);             // u < 0 required
    auto K7 = ImagQuadField::of_disc(-7);
    QExpansion g7 = cm_form(K7, -2, 50);  // unit order 2 | 2
    CHECK(g7.weight == 3);
    CHECK(g7.a(1) == 1);
}

TEST_CASE("shift_identity_points") {
    std::vector<mpq_class> pts = {8, 7, 6, 5, 4};
    auto out = shift_identity_points(-6, pts);
    std::vector<mpq_class> expect = {11, 10, 9, 8, 7};
    CHECK(out == expect);
    CHECK(shift_identity_points(0, pts) == pts);
    std::vector<mpq_class> one = {5};
    CHECK(shift_identity_points(-2, one) == std::vector<mpq_class>{6});
}
