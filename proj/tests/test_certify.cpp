#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "congr/certify.hpp"

using namespace congr;

TEST_CASE("unit group orders mod N") {
    auto K = ImagQuadField::of_disc(-3);
    CHECK(unit_group_order_mod(K, 3) == 6);    // ramified: 9 - 3
    CHECK(unit_group_order_mod(K, 5) == 24);   // inert: 25 - 1
    CHECK(unit_group_order_mod(K, 7) == 36);   // split: 6^2
    CHECK(unit_group_order_mod(K, 15) == 144); // multiplicative
}

TEST_CASE("dimension formula at level 1") {
    CHECK(dim_cusp_forms_level1(12) == 1);
    CHECK(dim_cusp_forms_level1(16) == 1);
    CHECK(dim_cusp_forms_level1(22) == 1);
    CHECK(dim_cusp_forms_level1(24) == 2);
    CHECK(dim_cusp_forms_level1(26) == 1);
    CHECK(dim_cusp_forms_level1(28) == 2);
}

TEST_CASE("config validation") {
    CertConfig ok;  // sec9 defaults
    CHECK_NOTHROW(ok.validate());

    CertConfig t1 = ok;
    t1.t = -18;  // violates t < -20 for n = 5
    CHECK_THROWS_AS(t1.validate(), ConfigInvalid);

    CertConfig t2 = ok;
    t2.t = -31;  // violates -2k-2m <= t
    CHECK_THROWS_AS(t2.validate(), ConfigInvalid);

    CertConfig t3 = ok;
    t3.t = -23;  // unit order 6 does not divide 23
    CHECK_THROWS_AS(t3.validate(), ConfigInvalid);

    CertConfig d5 = ok;
    d5.disc = -5;
    CHECK_THROWS_AS(d5.validate(), ConfigInvalid);

    CertConfig sturm = ok;
    sturm.k = 2;  // n = 5 > 2k-1 = 3
    CHECK_THROWS_AS(sturm.validate(), ConfigInvalid);
}

TEST_CASE("sec9 certification end to end at reduced precision") {
    CertConfig cfg;
    cfg.precision_digits = 100;
    cfg.prime_bound = 200;
    Certifier cert(cfg);
    const CertData& data = cert.compute();

    // V = product of the four table rationals; candidate primes = script-L
    mpz_class num = abs(data.V.get_num());
    std::vector<long> script_L = {31, 67, 137, 139, 523, 1609, 3463, 6761};
    for (long ell : script_L) CHECK(val_p(data.V, ell) == 1);
    CHECK(val_p(data.V, 29) <= 0);
    CHECK(val_p(data.V, 29) == -1);
    CHECK(val_p(data.U, 5) < 0);
    for (long ell : script_L) CHECK(val_p(data.U, ell) == 0);

    auto reports = cert.congruence_primes();
    REQUIRE(reports.size() == script_L.size());
    for (size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i].ell == script_L[i]);
        CHECK(reports[i].certified);
        CHECK(reports[i].depth_b == 1);
        CHECK(reports[i].witness_prime >= 3);
    }

    // rejections with recorded reasons
    auto r29 = cert.check_hypotheses(29);
    CHECK_FALSE(r29.certified);
    CHECK(r29.checks[0].name == "ell > 2k+2m");
    CHECK_FALSE(r29.checks[0].pass);

    auto r3 = cert.check_hypotheses(3);
    CHECK_FALSE(r3.certified);
    bool dk_check_failed = false;
    for (auto& c : r3.checks)
        if (c.name == "ell coprime to 2 h_K D_K i(phi)" && !c.pass) dk_check_failed = true;
    CHECK(dk_check_failed);

    // determinism of repeated hypothesis checks
    auto a = cert.check_hypotheses(31);
    auto b = cert.check_hypotheses(31);
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].pass == b.checks[i].pass);
        CHECK(a.checks[i].detail == b.checks[i].detail);
    }
}

TEST_CASE("even n is reported unsupported") {
    CertConfig cfg;
    cfg.n = 4;
    cfg.m = 2;
    cfg.t = -24;
    CHECK_THROWS_AS(Certifier{cfg}, Unsupported);
}
