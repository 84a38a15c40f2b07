#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "bnls/analytic.hpp"
#include "oracles.hpp"

using namespace bnls;

TEST_CASE("derived exponents") {
    // p = p_bar forces p*gamma_p = 2.
    Exponents e = derive_exponents(4, 4.0);
    CHECK(e.gamma_p == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.p_bar == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(4.0 * e.gamma_p == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::isinf(e.p_star4));

    e = derive_exponents(5, 3.8);
    CHECK(e.gamma_p == doctest::Approx(9.0 / 15.2).epsilon(1e-15));
    CHECK(3.8 * e.gamma_p == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(e.p_star4 == doctest::Approx(10.0).epsilon(1e-15));

    e = derive_exponents(8, 3.5);
    CHECK(e.p_bar == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(e.p_star4 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(e.gamma_p == doctest::Approx(3.0 / 3.5).epsilon(1e-14));

    CHECK_THROWS(derive_exponents(1, 3.0));
    CHECK_THROWS(derive_exponents(5, 2.0));
    CHECK_THROWS(derive_exponents(5, 1.5));
}

TEST_CASE("params validation") {
    CHECK_NOTHROW(make_params(5, 3.8, 1.0, 1.0));
    CHECK_NOTHROW(make_params(5, 3.8, 1.0, 0.0));  // limit problem allowed
    CHECK_THROWS(make_params(5, 3.6, 1.0, 1.0));   // p = p_bar
    CHECK_THROWS(make_params(5, 10.0, 1.0, 1.0));  // p = 4*
    CHECK_THROWS(make_params(5, 3.8, -1.0, 1.0));
    CHECK_THROWS(make_params(5, 3.8, 1.0, -1.0));
    // p * gamma_p > 2 exactly when p > p_bar
    for (double p : {3.61, 3.9, 5.0, 9.9}) {
        ProblemParams pm = make_params(5, p, 1.0, 1.0);
        CHECK(pm.p * pm.gamma_p > 2.0);
    }
}

TEST_CASE("thresholds reference value and mu = 0") {
    GNConstant gn{1.0, GNProvenance::UserSupplied, 0.0};
    ProblemParams pm = make_params(5, 3.8, 1.0, 1.0);
    Thresholds th = thresholds(pm, gn);
    // Hand arithmetic with p gamma_p = 2.25: (3.8/2.5) * 0.2^{0.25}.
    double expect = (3.8 / 2.5) * std::pow(0.2, 0.25);
    CHECK(th.c_tilde == doctest::Approx(expect).epsilon(1e-13));
    CHECK(th.c_tilde == doctest::Approx(1.0164852).epsilon(1e-6));
    CHECK(th.c_tilde > 0.0);
    CHECK(th.c_upper > 0.0);
    CHECK(th.c_lower > 0.0);

    // mu = 0 admissible for every a.
    for (double a : {1e-3, 1.0, 1e3}) {
        ProblemParams p0 = make_params(5, 3.8, a, 0.0);
        CHECK(thresholds(p0, gn).admissible_min_flag);
    }
}

TEST_CASE("threshold equivalence with the landscape maximum") {
    // mu^{pg-2} a^{p-2} < c_tilde  iff  phi(t_bar) > mu a / 2, with
    // phi(t) = t/2 - (C^p/p) a^{p(1-g)} t^{p g - 1} evaluated independently.
    GNConstant gn{1.3, GNProvenance::UserSupplied, 0.0};
    std::mt19937_64 rng(7);
    int checked_adm = 0, checked_inadm = 0;
    for (int trial = 0; trial < 200; ++trial) {
        double ratio = std::exp(std::log(0.05) + u01(rng) * std::log(10.0 / 0.05));
        ProblemParams pm = oracles::random_params(rng, gn, 5, 3.8, ratio);
        Thresholds th = thresholds(pm, gn);
        double lhs = std::pow(pm.mu, pm.p * pm.gamma_p - 2.0) * std::pow(pm.a, pm.p - 2.0);
        bool c_tilde_ok = lhs < th.c_tilde;

        double pg = pm.p * pm.gamma_p;
        double cp = std::pow(gn.c_np, pm.p);
        double t_bar = std::pow(
            pm.p / (2.0 * (pg - 1.0) * cp * std::pow(pm.a, pm.p * (1.0 - pm.gamma_p))),
            1.0 / (pg - 2.0));
        auto phi = [&](double t) {
            return 0.5 * t -
                   (cp / pm.p) * std::pow(pm.a, pm.p * (1.0 - pm.gamma_p)) * std::pow(t, pg - 1.0);
        };
        CHECK(c_tilde_ok == (phi(t_bar) > 0.5 * pm.mu * pm.a));
        (c_tilde_ok ? checked_adm : checked_inadm)++;
    }
    CHECK(checked_adm > 20);
    CHECK(checked_inadm > 20);
}

TEST_CASE("landscape roots, ordering and sign pattern") {
    GNConstant gn{1.0, GNProvenance::UserSupplied, 0.0};
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        ProblemParams pm = oracles::random_params(rng, gn, 5, 3.8, 0.1 + 0.8 * u01(rng));
        Landscape L = landscape_h(pm, gn);

        CHECK(0.0 < pm.mu * pm.a);
        CHECK(pm.mu * pm.a < L.r0);
        CHECK(L.r0 < L.t_bar);
        CHECK(L.t_bar < L.r1);
        CHECK(landscape_value(pm, gn, pm.mu * pm.a) < 0.0);
        CHECK(landscape_value(pm, gn, L.t_bar) > 0.0);
        CHECK(std::abs(landscape_value(pm, gn, L.r0)) <= 1e-12 * std::max(1.0, L.h_max));
        CHECK(std::abs(landscape_value(pm, gn, L.r1)) <= 1e-12 * std::max(1.0, L.h_max));
        CHECK(L.h_max > 0.0);
        CHECK(L.h_max >= landscape_value(pm, gn, L.t_bar));

        // Independent fine sign scan: exactly two roots, matching r0, r1.
        auto h = [&](double t) { return landscape_value(pm, gn, t); };
        auto roots = oracles::log_scan_roots(h, L.r0 * 1e-3, L.r1 * 10.0, 20000);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == doctest::Approx(L.r0).epsilon(1e-3));
        CHECK(roots[1] == doctest::Approx(L.r1).epsilon(1e-3));

        // Sign pattern (-, +, -) by dense sampling.
        for (int k = 1; k < 50; ++k) {
            double t_in = L.r0 + (L.r1 - L.r0) * k / 50.0;
            CHECK(h(t_in) >= -1e-12 * std::max(1.0, L.h_max));
            CHECK(h(0.9 * L.r0 * k / 50.0 + 1e-6) <= 1e-12);
            CHECK(h(L.r1 * (1.0 + k)) < 0.0);
        }
    }
}

TEST_CASE("landscape rejects mu = 0 and inadmissible data") {
    GNConstant gn{1.0, GNProvenance::UserSupplied, 0.0};
    ProblemParams p0 = make_params(5, 3.8, 0.5, 0.0);
    CHECK_THROWS_AS(landscape_h(p0, gn), HypothesisError);

    std::mt19937_64 rng(13);
    ProblemParams bad = oracles::random_params(rng, gn, 5, 3.8, 1.8);
    CHECK_FALSE(thresholds(bad, gn).admissible_min_flag);
    CHECK_THROWS_AS(landscape_h(bad, gn), HypothesisError);
}

TEST_CASE("rescaled landscape and the tau identity") {
    GNConstant gn{0.9, GNProvenance::UserSupplied, 0.0};
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        ProblemParams pm = oracles::random_params(rng, gn, 5, 3.8, 0.1 + 0.8 * u01(rng));
        Landscape L = landscape_h(pm, gn);
        LandscapeTilde Lt = landscape_h_tilde(pm, gn);
        RescaleConstants rc = rescale_constants(pm);

        // tau_tilde = a_tilde^{2 - N/2} b_tilde t_bar
        double predicted = std::pow(rc.a_tilde, 2.0 - 0.5 * pm.N) * rc.b_tilde * L.t_bar;
        CHECK(Lt.tau_tilde == doctest::Approx(predicted).epsilon(1e-10));

        double mass = pm.a * std::sqrt(rc.c_tilde_mass);
        CHECK(0.0 < 2.0 * mass);
        CHECK(2.0 * mass < Lt.r0_tilde);
        CHECK(Lt.r0_tilde < Lt.tau_tilde);
        CHECK(Lt.tau_tilde < Lt.r1_tilde);
        CHECK(landscape_tilde_value(pm, gn, 2.0 * mass) < 0.0);

        auto ht = [&](double t) { return landscape_tilde_value(pm, gn, t); };
        auto roots = oracles::log_scan_roots(ht, Lt.r0_tilde * 1e-3, Lt.r1_tilde * 10.0, 20000);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == doctest::Approx(Lt.r0_tilde).epsilon(1e-3));
        CHECK(roots[1] == doctest::Approx(Lt.r1_tilde).epsilon(1e-3));

        // Energy factor identity behind the -a^2 mu^2/8 translation:
        // a_tilde^N b_tilde^{-p} c_tilde_mass = mu^2 / 8.
        CHECK(rc.energy_factor * rc.c_tilde_mass ==
              doctest::Approx(pm.mu * pm.mu / 8.0).epsilon(1e-12));
    }
}

TEST_CASE("multiplier bounds") {
    GNConstant gn{1.1, GNProvenance::UserSupplied, 0.0};
    ProblemParams pm = make_params(5, 3.8, 0.4, 1.0);
    MultiplierBounds mb = multiplier_bounds(pm, gn);
    CHECK(mb.upper == doctest::Approx(-0.25).epsilon(1e-15));

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        ProblemParams r = oracles::random_params(rng, gn, 5, 3.8, 0.05 + 0.9 * u01(rng));
        MultiplierBounds b = multiplier_bounds(r, gn);
        CHECK(b.upper == doctest::Approx(-0.25 * r.mu * r.mu).epsilon(1e-15));
        CHECK(b.lower < b.upper);
    }
}
