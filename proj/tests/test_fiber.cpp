#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bnls/fiber.hpp"
#include "oracles.hpp"

using namespace bnls;

namespace {
const GNConstant kGn{1.2, GNProvenance::UserSupplied, 0.0};
}

TEST_CASE("energy and pohozaev formulas") {
    double p = 3.8;
    // pp = p makes the quadratic and nonlinear parts cancel at mu = 0.
    NormQuadruple q{2.0, 1.0, p, 1.0};
    CHECK(energy(q, 0.0, p) == doctest::Approx(0.0).epsilon(1e-15));

    // mu-linearity: E(q, mu) - E(q, 0) = -mu gg / 2.
    for (double mu : {0.3, 1.0, 2.5}) {
        CHECK(energy(q, mu, p) - energy(q, 0.0, p) ==
              doctest::Approx(-0.5 * mu * q.gg).epsilon(1e-14));
    }

    double gamma_p = derive_exponents(5, p).gamma_p;
    NormQuadruple q2{gamma_p * 3.0, 0.7, 3.0, 1.0};  // dd = gamma_p pp
    CHECK(pohozaev(q2, 0.0, gamma_p) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("fiber map values, derivative oracle and limits") {
    ProblemParams pm = make_params(5, 3.8, 0.7, 1.0);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        NormQuadruple q = oracles::random_admissible_quadruple(rng, pm, kGn);
        double mu = pm.mu;

        // Psi(0) = E(q).
        CHECK(fiber_value(q, mu, pm.p, pm.gamma_p, 0.0) ==
              doctest::Approx(energy(q, mu, pm.p)).epsilon(1e-14));

        // Psi' against centered differences at random s; tolerance relative
        // to the quadruple scale since s may land near a critical point.
        for (int k = 0; k < 20; ++k) {
            double s = -3.0 + 6.0 * u01(rng);
            auto psi = [&](double x) { return fiber_value(q, mu, pm.p, pm.gamma_p, x); };
            double fd = oracles::centered_diff(psi, s, 1e-6);
            double an = fiber_deriv(q, mu, pm.p, pm.gamma_p, s);
            CHECK(std::abs(fd - an) <= 1e-6 * (1.0 + q.dd + q.pp + std::abs(an)));
        }

        // Psi(-inf) = 0^- and Psi(+inf) = -inf for mu > 0.
        double left = fiber_value(q, mu, pm.p, pm.gamma_p, -30.0);
        CHECK(left < 0.0);
        CHECK(left > -1e-20 * (q.dd + q.gg + q.pp + 1.0));
        CHECK(fiber_value(q, mu, pm.p, pm.gamma_p, 30.0) < -1e20);
    }
}

TEST_CASE("dilation covariance and mass invariance") {
    ProblemParams pm = make_params(5, 3.8, 0.7, 1.0);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        NormQuadruple q = oracles::random_admissible_quadruple(rng, pm, kGn);
        double s = -2.0 + 4.0 * u01(rng);
        double h = -2.0 + 4.0 * u01(rng);
        NormQuadruple qs = scaled(q, pm.p, pm.gamma_p, s);
        CHECK(qs.mm == q.mm);
        double lhs = fiber_value(q, pm.mu, pm.p, pm.gamma_p, s + h);
        double rhs = fiber_value(qs, pm.mu, pm.p, pm.gamma_p, h);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("mu = 0 closed-form maximum") {
    ProblemParams pm = make_params(5, 3.8, 0.7, 0.0);
    double gamma_p = pm.gamma_p;

    NormQuadruple q{gamma_p * 2.0, 0.5, 2.0, 0.49};  // dd = gamma_p pp -> t = 0
    FiberGeometry geo = fiber_geometry(q, 0.0, pm.p, gamma_p);
    CHECK_FALSE(geo.has_min);
    CHECK(geo.t_max == doctest::Approx(0.0).epsilon(1e-15));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        NormQuadruple qr = oracles::random_admissible_quadruple(rng, pm, kGn);
        FiberGeometry g = fiber_geometry(qr, 0.0, pm.p, gamma_p);
        double closed =
            std::log(qr.dd / (gamma_p * qr.pp)) / (2.0 * pm.p * gamma_p - 4.0);
        CHECK(g.t_max == doctest::Approx(closed).epsilon(1e-12));
        // The maximum is a critical point at positive level.
        CHECK(std::abs(fiber_deriv(qr, 0.0, pm.p, gamma_p, g.t_max)) <=
              1e-10 * (qr.dd + qr.pp));
        CHECK(fiber_value(qr, 0.0, pm.p, gamma_p, g.t_max) > 0.0);
    }
}

TEST_CASE("two critical points under admissibility, against the scan oracle") {
    GNConstant gn = kGn;
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        ProblemParams pm = oracles::random_params(rng, gn, 5, 3.8, 0.1 + 0.85 * u01(rng));
        NormQuadruple q = oracles::random_admissible_quadruple(rng, pm, gn);
        FiberGeometry geo = fiber_geometry(q, pm.mu, pm.p, pm.gamma_p);
        REQUIRE(geo.has_min);

        // Full ordering s < zero < t < zero.
        CHECK(geo.s_min < geo.zero_lo);
        CHECK(geo.zero_lo < geo.t_max);
        CHECK(geo.t_max < geo.zero_hi);

        auto psi = [&](double s) { return fiber_value(q, pm.mu, pm.p, pm.gamma_p, s); };
        auto dpsi = [&](double s) { return fiber_deriv(q, pm.mu, pm.p, pm.gamma_p, s); };

        CHECK(psi(geo.s_min) < 0.0);
        CHECK(psi(geo.t_max) > 0.0);
        CHECK(fiber_second(q, pm.mu, pm.p, pm.gamma_p, geo.s_min) > 0.0);
        CHECK(fiber_second(q, pm.mu, pm.p, pm.gamma_p, geo.t_max) < 0.0);

        // Independent dense scan of Psi' finds exactly the same two roots.
        auto roots = oracles::lin_scan_roots(dpsi, -40.0, 40.0, 4096);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] == doctest::Approx(geo.s_min).epsilon(0.05));
        CHECK(roots[1] == doctest::Approx(geo.t_max).epsilon(0.05));

        // Zeros bracket the maximum and Psi > 0 exactly on (zero_lo, zero_hi).
        // Near a zero the fiber terms cancel, so the honest tolerance scales
        // with the dilated term magnitudes at that point.
        auto psi_scale = [&](double s) {
            return 0.5 * std::exp(4.0 * s) * q.dd + 0.5 * pm.mu * std::exp(2.0 * s) * q.gg +
                   std::exp(2.0 * pm.p * pm.gamma_p * s) * q.pp / pm.p + 1.0;
        };
        CHECK(std::abs(psi(geo.zero_lo)) <= 1e-9 * psi_scale(geo.zero_lo));
        CHECK(std::abs(psi(geo.zero_hi)) <= 1e-9 * psi_scale(geo.zero_hi));
        for (int k = 1; k < 40; ++k) {
            double s_in = geo.zero_lo + (geo.zero_hi - geo.zero_lo) * k / 40.0;
            CHECK(psi(s_in) >= -1e-9 * psi_scale(s_in));
        }
        CHECK(psi(geo.zero_lo - 0.05 * (geo.zero_hi - geo.zero_lo)) < 0.0);
        CHECK(psi(geo.zero_hi + 0.05 * (geo.zero_hi - geo.zero_lo)) < 0.0);

        // Concavity beyond the maximum.
        for (int k = 0; k < 100; ++k) {
            double s = geo.t_max + 10.0 * k / 99.0;
            CHECK(fiber_second(q, pm.mu, pm.p, pm.gamma_p, s) < 0.0);
        }
    }
}

TEST_CASE("fiber minimum attains the constrained infimum inside the disk") {
    GNConstant gn = kGn;
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        ProblemParams pm = oracles::random_params(rng, gn, 5, 3.8, 0.2 + 0.6 * u01(rng));
        Landscape L = landscape_h(pm, gn);
        NormQuadruple q = oracles::random_admissible_quadruple(rng, pm, gn);
        FiberGeometry geo = fiber_geometry(q, pm.mu, pm.p, pm.gamma_p);

        // min{ Psi(s) : e^{2s} ||Du|| < R_0 } is attained at s_min.
        double s_cap = 0.5 * std::log(L.r0 / std::sqrt(q.dd));
        double best = 1e300;
        for (int k = 0; k < 4000; ++k) {
            double s = s_cap - 30.0 + 30.0 * k / 3999.0;
            best = std::min(best, fiber_value(q, pm.mu, pm.p, pm.gamma_p, s));
        }
        double at_min = fiber_value(q, pm.mu, pm.p, pm.gamma_p, geo.s_min);
        CHECK(at_min < 0.0);
        CHECK(at_min <= best + 1e-9 * (1.0 + std::abs(best)));
        // The projected point stays strictly inside the disk.
        CHECK(std::exp(2.0 * geo.s_min) * std::sqrt(q.dd) < L.r0);
    }
}

TEST_CASE("classification") {
    GNConstant gn = kGn;
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        ProblemParams pm = oracles::random_params(rng, gn, 5, 3.8, 0.1 + 0.8 * u01(rng));
        NormQuadruple q = oracles::random_admissible_quadruple(rng, pm, gn);
        FiberGeometry geo = fiber_geometry(q, pm.mu, pm.p, pm.gamma_p);

        NormQuadruple q_plus = scaled(q, pm.p, pm.gamma_p, geo.s_min);
        NormQuadruple q_minus = scaled(q, pm.p, pm.gamma_p, geo.t_max);
        CHECK(classify(q_plus, pm.mu, pm.p, pm.gamma_p) == ManifoldClass::Pplus);
        CHECK(classify(q_minus, pm.mu, pm.p, pm.gamma_p) == ManifoldClass::Pminus);
        CHECK(classify(q_minus, pm.mu, pm.p, pm.gamma_p) != ManifoldClass::Pzero);

        // A generic unscaled quadruple is off the manifold.
        if (std::abs(pohozaev(q, pm.mu, pm.gamma_p)) > 1e-6 * std::max(q.dd, 1.0))
            CHECK(classify(q, pm.mu, pm.p, pm.gamma_p) == ManifoldClass::OffManifold);
    }
}

TEST_CASE("quadruple validation") {
    CHECK_THROWS(validated(NormQuadruple{1.0, 5.0, 1.0, 1.0}));   // gg > sqrt(mm dd)
    CHECK_THROWS(validated(NormQuadruple{1.0, 0.5, 1.0, 0.0}));   // zero mass
    CHECK_THROWS(validated(NormQuadruple{-1.0, 0.5, 1.0, 1.0}));  // negative
    CHECK_NOTHROW(validated(NormQuadruple{1.0, 0.5, 1.0, 1.0}));
}
