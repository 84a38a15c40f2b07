#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bnls/grid.hpp"
#include "bnls/operators.hpp"
#include "bnls/profile.hpp"
#include "bnls/radial.hpp"
#include "bnls/solve.hpp"

using namespace bnls;

namespace {

std::vector<double> sample(const RadialGrid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.n());
    for (int i = 0; i < g.n(); ++i) v[i] = f(g.r[i]);
    v.back() = 0.0;
    return v;
}

}  // namespace

TEST_CASE("weights: positivity and Gaussian mass on the default grid") {
    for (int N : {2, 3, 5, 8}) {
        RadialGrid g = make_graded_grid(N, 40.0, 4096);
        for (double w : g.w) CHECK(w > 0.0);
        for (double fw : g.face_w) CHECK(fw > 0.0);

        // ||e^{-r^2}||_2^2 = (pi/2)^{N/2} (closed-form Gaussian integral).
        auto u = sample(g, [](double r) { return std::exp(-r * r); });
        double mm = g.inner(u, u);
        double exact = std::pow(M_PI / 2.0, 0.5 * N);
        CHECK(mm == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("quadrature integrates cubics against r^{N-1} exactly") {
    RadialGrid g = make_graded_grid(5, 10.0, 512);
    // f(r) = r^3 - 2 r^2 + 3 r - 1; integral of f(r) r^4 dr over [0, rmax]
    // has closed form; the scheme integrates the cubic interpolant of f
    // against r^{N-1} exactly, and the interpolant of a cubic is itself.
    auto f = [](double r) { return r * r * r - 2.0 * r * r + 3.0 * r - 1.0; };
    std::vector<double> v(g.n());
    for (int i = 0; i < g.n(); ++i) v[i] = f(g.r[i]);
    // Node 0 carries the operator calibration weight instead of the moment
    // weight; the discrepancy it introduces is O(r_1^{N+1}), far below the
    // 1e-12 relative budget here.
    double got = 0.0;
    for (int i = 0; i < g.n(); ++i) got += g.w[i] * v[i];
    double R = g.rmax();
    auto I = [&](double k, double c) { return c * std::pow(R, k + 5.0) / (k + 5.0); };
    double exact = (I(3, 1.0) + I(2, -2.0) + I(1, 3.0) + I(0, -1.0)) * g.area;
    CHECK(got == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("laplacian: constants, symmetry, exact by-parts") {
    RadialGrid grid = make_graded_grid(5, 40.0, 2048);

    // Annihilates constants on interior nodes.
    std::vector<double> ones(grid.n(), 1.0), lap(grid.n());
    apply_lap(grid, ones, lap);
    for (int i = 0; i + 1 < grid.n(); ++i) CHECK(std::abs(lap[i]) <= 1e-10);

    // Symmetry <L u, v>_w = <u, L v>_w and <L u, u>_w = -grad_sq(u).
    std::mt19937_64 rng(3);
    GridPtr gp = share(make_graded_grid(5, 40.0, 2048));
    for (int trial = 0; trial < 10; ++trial) {
        RadialProfile u = random_mass_profile(gp, 1.0, rng);
        RadialProfile v = random_mass_profile(gp, 1.0, rng);
        auto Lu = lap_of(*gp, u.values);
        auto Lv = lap_of(*gp, v.values);
        double a = gp->inner(Lu, v.values);
        double b = gp->inner(u.values, Lv);
        CHECK(std::abs(a - b) <= 1e-8 * (std::abs(a) + std::abs(b) + 1e-30));
        double c = gp->inner(Lu, u.values);
        double d = grad_sq(*gp, u.values);
        CHECK(std::abs(c + d) <= 1e-12 * (std::abs(c) + d + 1e-30));
    }
}

TEST_CASE("laplacian accuracy on a Gaussian (fine grid)") {
    // Delta e^{-r^2} = (4 r^2 - 2N) e^{-r^2}; the squared norm of the discrete
    // Laplacian matches the quadrature of the analytic square to 1e-6.
    RadialGrid g = make_uniform_grid(5, 12.0, 8193);
    auto u = sample(g, [](double r) { return std::exp(-r * r); });
    std::vector<double> lap(g.n());
    apply_lap(g, u, lap);
    double dd = g.inner(lap, lap);
    auto exact_lap = sample(g, [](double r) { return (4.0 * r * r - 10.0) * std::exp(-r * r); });
    double dd_exact = g.inner(exact_lap, exact_lap);
    CHECK(dd == doctest::Approx(dd_exact).epsilon(1e-6));
}

TEST_CASE("bilaplacian refinement ratio is second order") {
    // Delta^2 e^{-r^2} = (16 r^4 - 16(N+2) r^2 + 4N(N+2)) e^{-r^2}.
    const int N = 5;
    auto exact = [&](double r) {
        return (16.0 * std::pow(r, 4) - 16.0 * (N + 2.0) * r * r + 4.0 * N * (N + 2.0)) *
               std::exp(-r * r);
    };
    auto weighted_error = [&](int nodes) {
        RadialGrid g = make_graded_grid(N, 40.0, nodes);
        auto u = sample(g, [](double r) { return std::exp(-r * r); });
        std::vector<double> bl(g.n());
        apply_bilap(g, u, bl);
        double err = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            double e = bl[i] - exact(g.r[i]);
            err += g.w[i] * e * e;
        }
        return std::sqrt(err);
    };
    double e1 = weighted_error(2048);
    double e2 = weighted_error(4096);
    double ratio = e1 / e2;
    CHECK(ratio > 3.7);
    CHECK(ratio < 4.3);
}

TEST_CASE("shifted bilaplacian solver") {
    GridPtr gp = share(make_graded_grid(5, 40.0, 1024));
    std::mt19937_64 rng(5);
    for (double theta : {1.0, 50.0}) {
        ShiftedBilapSolver solver(*gp, theta);
        RadialProfile b = random_mass_profile(gp, 1.0, rng);
        std::vector<double> x(gp->n()), res(gp->n());
        solver.solve(b.values, x);
        apply_bilap(*gp, x, res);
        double err = 0.0, scale = 0.0;
        for (int i = 0; i < gp->n(); ++i) {
            double r = res[i] + theta * x[i] - b.values[i];
            if (i + 1 == gp->n()) r = 0.0;  // boundary row
            err += gp->w[i] * r * r;
            scale += gp->w[i] * b.values[i] * b.values[i];
        }
        CHECK(std::sqrt(err) <= 1e-9 * std::sqrt(scale));
    }
}

TEST_CASE("grad_sq against an analytic gradient") {
    RadialGrid g = make_uniform_grid(5, 12.0, 8193);
    auto u = sample(g, [](double r) { return std::exp(-r * r); });
    double gg = grad_sq(g, u);
    // |u'|^2 = 4 r^2 e^{-2 r^2}.
    std::vector<double> gsq(g.n());
    for (int i = 0; i < g.n(); ++i)
        gsq[i] = 4.0 * g.r[i] * g.r[i] * std::exp(-2.0 * g.r[i] * g.r[i]);
    double exact = g.integrate(gsq);
    CHECK(gg == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("exact homothety of grids and dilation of quadruples") {
    GridPtr gp = share(make_graded_grid(5, 40.0, 1024));
    std::mt19937_64 rng(7);
    RadialProfile u = random_mass_profile(gp, 0.8, rng);
    double p = 3.8, gamma_p = derive_exponents(5, p).gamma_p;
    NormQuadruple q = norm_quadruple(u, p);
    for (double s : {-1.0, 0.37, 2.0}) {
        RadialProfile v = dilate_rescaled(u, s);
        NormQuadruple qs = norm_quadruple(v, p);
        NormQuadruple expect = scaled(q, p, gamma_p, s);
        CHECK(qs.mm == doctest::Approx(expect.mm).epsilon(1e-13));
        CHECK(qs.dd == doctest::Approx(expect.dd).epsilon(1e-12));
        CHECK(qs.gg == doctest::Approx(expect.gg).epsilon(1e-13));
        CHECK(qs.pp == doctest::Approx(expect.pp).epsilon(1e-13));
    }
}
