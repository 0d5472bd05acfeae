#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include "congr/exact.hpp"

using namespace congr;

namespace {

// independent trial-division oracle
std::vector<std::pair<mpz_class, unsigned>> trial_factor(long n) {
    std::vector<std::pair<mpz_class, unsigned>> out;
    for (long p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

mpq_class sec9_sym2_28() {
    // 2^38 * 5 * 7^2 * 11 * 13 * 23 * 31 * 137 / (3^38 * 5^6 * 7^4 * 11^2 * 13^2 * 23^2)
    mpz_class num = (mpz_class(1) << 38) * 5 * 49 * 11 * 13 * 23 * 31 * 137;
    mpz_class den = 1;
    for (int i = 0; i < 38; ++i) den *= 3;
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 5, 6);
    den *= t;
    mpz_ui_pow_ui(t.get_mpz_t(), 7, 4);
    den *= t;
    den *= mpz_class(11) * 11 * 13 * 13 * 23 * 23;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace

TEST_CASE("factor basics") {
    CHECK(factor(64).str() == "2^6");
    auto f = factor(6761);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first == 6761);
    CHECK(f.factors[0].second == 1);
    CHECK(is_prime(mpz_class(6761)));

    auto g = factor(195804);
    auto oracle = trial_factor(195804);
    REQUIRE(g.factors.size() == oracle.size());
    for (size_t i = 0; i < oracle.size(); ++i) {
        CHECK(g.factors[i].first == oracle[i].first);
        CHECK(g.factors[i].second == oracle[i].second);
    }
    CHECK(g.value() == 195804);
    CHECK(factor(1).factors.empty());
}

TEST_CASE("factor round-trips random factor lists") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(42ul);
    for (int it = 0; it < 25; ++it) {
        mpz_class n = 1;
        std::vector<long> primes = {2, 3, 5, 7, 11, 13, 10007, 65537, 6761};
        for (long p : primes) {
            unsigned long e = mpz_get_ui(mpz_class(rng.get_z_range(3)).get_mpz_t());
            mpz_class pe;
            mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), e);
            n *= pe;
        }
        CHECK(factor(n).value() == n);
    }
}

TEST_CASE("val_p") {
    CHECK(val_p(mpq_class(4, 27), 3) == -3);
    CHECK(val_p(mpq_class(1), 7) == 0);
    CHECK(val_p(sec9_sym2_28(), 31) == 1);
    CHECK(val_p(sec9_sym2_28(), 137) == 1);
    CHECK(val_p(sec9_sym2_28(), 3) == -38);
    CHECK_THROWS_AS(val_p(mpq_class(0), 5), ZeroInput);
}

TEST_CASE("val_p is a homomorphism") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(7ul);
    mpz_class p(13);
    for (int i = 0; i < 500; ++i) {
        mpq_class x(rng.get_z_range(10000) + 1, rng.get_z_range(10000) + 1);
        mpq_class y(rng.get_z_range(10000) + 1, rng.get_z_range(10000) + 1);
        x.canonicalize();
        y.canonicalize();
        CHECK(val_p(x * y, p) == val_p(x, p) + val_p(y, p));
    }
}

TEST_CASE("kronecker character") {
    auto chi = DirichletCharacter::kronecker(-3);
    CHECK(chi(2) == -1);
    CHECK(chi(7) == 1);
    CHECK(chi(6) == 0);
    CHECK(chi.is_odd());
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(3ul);
    for (int i = 0; i < 200; ++i) {
        mpz_class a = rng.get_z_range(100000) + 1;
        mpz_class b = rng.get_z_range(100000) + 1;
        CHECK(chi(a * b) == chi(a) * chi(b));
    }
    CHECK_THROWS(DirichletCharacter::kronecker(-5));  // not fundamental
    auto chi4 = DirichletCharacter::kronecker(-4);
    CHECK(chi4(3) == -1);
    CHECK(chi4(5) == 1);
    // chi^2 collapses to the trivial character mod 3
    auto chi2 = chi.power(2);
    CHECK(chi2.is_trivial());
    CHECK(chi2.modulus == 3);
    CHECK(chi2(3) == 0);
    CHECK(chi2(5) == 1);
}

TEST_CASE("generalized Bernoulli numbers") {
    auto chi = DirichletCharacter::kronecker(-3);
    // independent finite-sum oracle for B_{1,chi}: (1/3) sum chi(a) a
    mpq_class oracle = (mpq_class(chi(1)) * 1 + mpq_class(chi(2)) * 2) / 3;
    CHECK(gen_bernoulli(1, chi) == oracle);
    CHECK(gen_bernoulli(1, chi) == mpq_class(-1, 3));
    CHECK(gen_bernoulli(2, chi) == 0);  // parity vanishing
    CHECK(gen_bernoulli(2, DirichletCharacter::trivial(1)) == mpq_class(1, 6));
    CHECK(bernoulli(4) == mpq_class(-1, 30));
    CHECK(bernoulli(12) == mpq_class(-691, 2730));
}

TEST_CASE("dirichlet_L_critical exact values") {
    auto chi = DirichletCharacter::kronecker(-3);
    auto triv3 = DirichletCharacter::trivial(3);

    ExactScalar v2 = dirichlet_L_critical(2, triv3);
    CHECK(v2.rat == mpq_class(4, 27));
    CHECK(v2.sqrt_disc == 0);
    CHECK(v2.pi_exp == 2);

    ExactScalar v3 = dirichlet_L_critical(3, chi);
    CHECK(v3.rat == mpq_class(4, 243));
    CHECK(v3.sqrt_disc == 3);
    CHECK(v3.pi_exp == 3);

    ExactScalar v4 = dirichlet_L_critical(4, triv3);
    CHECK(v4.rat == mpq_class(8, 729));

    ExactScalar v5 = dirichlet_L_critical(5, chi);
    CHECK(v5.rat == mpq_class(4, 2187));
    CHECK(v5.sqrt_disc == 3);

    CHECK_THROWS_AS(dirichlet_L_critical(2, chi), NotCritical);
    CHECK_THROWS_AS(dirichlet_L_critical(3, triv3), NotCritical);
}

TEST_CASE("ExactScalar algebra and valuations") {
    ExactScalar a{mpq_class(4, 243), 3, 3, false};
    CHECK(a.val(3) == mpq_class(-9, 2));  // 243 = 3^5, plus the half from sqrt(3)
    CHECK(a.val(2) == mpq_class(2));
    ExactScalar b = a;
    ExactScalar c = a * b;  // sqrt(3)^2 = 3
    CHECK(c.sqrt_disc == 0);
    CHECK(c.rat == mpq_class(16, mpz_class(243) * 243) * 3);
    CHECK(c.pi_exp == 6);
    ExactScalar g{1, 3, 0, true};  // i sqrt(3)
    ExactScalar g2 = g * g;
    CHECK(g2.rat == -3);
    CHECK(g2.sqrt_disc == 0);
    CHECK_FALSE(g2.imaginary);
}

TEST_CASE("cf_recognize recovers rationals and rejects pi") {
    mpfr_prec_t W = 1024;
    Real x = Real::of(mpq_class(4, 27), W);
    auto r = cf_recognize(x, 80, 10);
    REQUIRE(r.has_value());
    CHECK(r->value == mpq_class(4, 27));

    auto pi = cf_recognize(Real::pi(3600), 150, 30);
    CHECK_FALSE(pi.has_value());

    Real e = exp(Real::of(1l, 3600));
    CHECK_FALSE(cf_recognize(e, 150, 30).has_value());

    CHECK_THROWS_AS(cf_recognize(x, 20, 5), PrecisionTooLow);
    CHECK_THROWS_AS(cf_recognize(x, 80, 45), PrecisionTooLow);
}

TEST_CASE("cf_recognize property: random rationals at 150 digits") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(20240801ul);
    mpz_class lim;
    mpz_ui_pow_ui(lim.get_mpz_t(), 10, 40);
    mpfr_prec_t W = 3600;
    for (int i = 0; i < 150; ++i) {
        mpz_class den = rng.get_z_range(lim - 2) + 2;
        mpz_class num = rng.get_z_range(den * 17) + 1;
        mpq_class q(num, den);
        q.canonicalize();
        auto r = cf_recognize(Real::of(q, W), 150, 40);
        REQUIRE(r.has_value());
        CHECK(r->value == q);
    }
}
