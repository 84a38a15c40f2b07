#include "bnls/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bnls/detail/rootfind.hpp"

namespace bnls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Log-spaced coarse scan locating sign changes of f on [lo, hi].
// Returns cell indices [t_k, t_{k+1}] where the sign flips.
template <typename F>
std::vector<std::pair<double, double>> log_scan_sign_changes(F&& f, double lo, double hi,
                                                             int points) {
    std::vector<std::pair<double, double>> cells;
    double llo = std::log(lo), lhi = std::log(hi);
    double prev_t = lo, prev_f = f(lo);
    for (int k = 1; k < points; ++k) {
        double t = std::exp(llo + (lhi - llo) * k / (points - 1));
        double ft = f(t);
        if ((prev_f <= 0.0 && ft > 0.0) || (prev_f >= 0.0 && ft < 0.0) ||
            (prev_f < 0.0 && ft >= 0.0) || (prev_f > 0.0 && ft <= 0.0)) {
            cells.emplace_back(prev_t, t);
        }
        prev_t = t;
        prev_f = ft;
    }
    return cells;
}

}  // namespace

Exponents derive_exponents(int N, double p) {
    if (N < 2) throw std::invalid_argument("derive_exponents: N must be >= 2");
    if (!(p > 2.0)) throw std::invalid_argument("derive_exponents: p must be > 2");
    Exponents e;
    e.gamma_p = N * (p - 2.0) / (4.0 * p);
    e.p_bar = 2.0 + 8.0 / N;
    e.p_star4 = (N <= 4) ? kInf : 2.0 * N / (N - 4.0);
    return e;
}

ProblemParams make_params(int N, double p, double a, double mu) {
    Exponents e = derive_exponents(N, p);
    if (!(a > 0.0)) throw std::invalid_argument("make_params: a must be > 0");
    if (!(mu >= 0.0)) throw std::invalid_argument("make_params: mu must be >= 0");
    if (!(p > e.p_bar && p < e.p_star4))
        throw HypothesisError("make_params: p outside the supercritical window (p_bar, 4*)");
    ProblemParams params;
    params.N = N;
    params.p = p;
    params.a = a;
    params.mu = mu;
    params.gamma_p = e.gamma_p;
    params.p_bar = e.p_bar;
    params.p_star4 = e.p_star4;
    return params;
}

Thresholds thresholds(const ProblemParams& params, const GNConstant& gn) {
    const double p = params.p;
    const double g = params.gamma_p;
    const double pg = p * g;
    const double cp = std::pow(gn.c_np, p);
    const double base = p / (2.0 * (pg - 1.0) * cp);

    Thresholds t;
    t.c_tilde = base * std::pow((pg - 2.0) / (pg - 1.0), pg - 2.0);
    t.c_upper = std::pow(2.0, pg - 2.0) * base * std::pow((1.0 - g) / g, 0.5 * (pg - 2.0));
    t.c_lower = base * std::pow(2.0 * (p - 2.0) / (pg - 1.0), 0.5 * (pg - 2.0));

    double lhs = std::pow(params.mu, pg - 2.0) * std::pow(params.a, p - 2.0);
    double min3 = std::min({t.c_tilde, t.c_upper, t.c_lower});
    t.admissible_min_flag = lhs < min3;
    t.admissibility_ratio = lhs / min3;
    return t;
}

double landscape_value(const ProblemParams& params, const GNConstant& gn, double t) {
    const double p = params.p;
    const double cp = std::pow(gn.c_np, p);
    const double nl = (cp / p) * std::pow(params.a, p * (1.0 - params.gamma_p));
    return 0.5 * t * t - 0.5 * params.mu * params.a * t - nl * std::pow(t, p * params.gamma_p);
}

namespace {

struct LandscapeShape {
    double zero_lo, zero_hi, arg_max, max_value;
};

template <typename F, typename DF>
double newton_polish(F&& f, DF&& df, double x, int iters = 4) {
    for (int it = 0; it < iters; ++it) {
        double d = df(x);
        if (d == 0.0) break;
        double step = f(x) / d;
        if (!std::isfinite(step) || std::abs(step) > 0.1 * std::abs(x) + 1.0) break;
        x -= step;
    }
    return x;
}

// Shared zero/max search for h-type landscapes: f < 0 near 0, one positive
// window (zl, zh) containing peak_guess, f -> -inf at +inf.
template <typename F, typename DF>
LandscapeShape resolve_landscape(F&& f, DF&& df, double left_anchor, double peak_guess) {
    if (!(f(peak_guess) > 0.0))
        throw HypothesisError("no positive window");

    // Expand to the right of the peak until f < 0 again.
    double hi = 2.0 * peak_guess;
    while (f(hi) > 0.0) hi *= 2.0;

    auto cells = log_scan_sign_changes(f, std::max(left_anchor * 1e-8, 1e-300), hi, 2048);
    // The scan may resolve extra flips from roundoff near zero; keep the two
    // cells bracketing the peak.
    double zl_lo = left_anchor, zl_hi = peak_guess;
    double zh_lo = peak_guess, zh_hi = hi;
    for (auto& c : cells) {
        if (c.second <= peak_guess && f(c.first) < 0.0 && f(c.second) >= 0.0) {
            zl_lo = c.first;
            zl_hi = c.second;
        }
        if (c.first >= peak_guess && f(c.first) > 0.0 && f(c.second) <= 0.0 && zh_lo == peak_guess) {
            zh_lo = c.first;
            zh_hi = c.second;
        }
    }

    LandscapeShape s;
    double xtol0 = 1e-12 * std::max(1.0, zl_hi);
    s.zero_lo = detail::bisect(f, zl_lo, zl_hi, xtol0);
    s.zero_hi = detail::bisect(f, zh_lo, zh_hi, 1e-12 * std::max(1.0, zh_hi));
    s.zero_lo = newton_polish(f, df, s.zero_lo);
    s.zero_hi = newton_polish(f, df, s.zero_hi);

    // Interior maximum by golden-section refinement of a dense scan.
    double best_t = peak_guess, best_f = f(peak_guess);
    int m = 512;
    for (int k = 0; k <= m; ++k) {
        double t = s.zero_lo + (s.zero_hi - s.zero_lo) * k / m;
        double ft = f(t);
        if (ft > best_f) {
            best_f = ft;
            best_t = t;
        }
    }
    double lo = std::max(s.zero_lo, best_t - (s.zero_hi - s.zero_lo) / m);
    double hi2 = std::min(s.zero_hi, best_t + (s.zero_hi - s.zero_lo) / m);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi2 - gr * (hi2 - lo), x2 = lo + gr * (hi2 - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (hi2 - lo) > 1e-13 * std::max(1.0, hi2); ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi2 - lo);
            f2 = f(x2);
        } else {
            hi2 = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi2 - gr * (hi2 - lo);
            f1 = f(x1);
        }
    }
    s.arg_max = 0.5 * (lo + hi2);
    s.max_value = f(s.arg_max);
    return s;
}

}  // namespace

Landscape landscape_h(const ProblemParams& params, const GNConstant& gn) {
    if (!(params.mu > 0.0))
        throw HypothesisError("landscape_h: mu = 0 has a degenerate landscape; use the limit problem");
    if (!thresholds(params, gn).admissible_min_flag)
        throw HypothesisError("no positive window");

    const double p = params.p;
    const double pg = p * params.gamma_p;
    const double cp = std::pow(gn.c_np, p);
    Landscape L;
    L.t_bar = std::pow(
        p / (2.0 * (pg - 1.0) * cp * std::pow(params.a, p * (1.0 - params.gamma_p))),
        1.0 / (pg - 2.0));

    auto f = [&](double t) { return landscape_value(params, gn, t); };
    const double nl = cp * std::pow(params.a, p * (1.0 - params.gamma_p));
    auto df = [&, nl](double t) {
        return t - 0.5 * params.mu * params.a -
               params.gamma_p * nl * std::pow(t, pg - 1.0);
    };
    LandscapeShape s = resolve_landscape(f, df, params.mu * params.a, L.t_bar);
    L.r0 = s.zero_lo;
    L.r1 = s.zero_hi;
    L.t_max = s.arg_max;
    L.h_max = s.max_value;
    return L;
}

RescaleConstants rescale_constants(const ProblemParams& params) {
    if (!(params.mu > 0.0))
        throw HypothesisError("rescale_constants: requires mu > 0");
    RescaleConstants rc;
    const double p = params.p;
    rc.a_tilde = std::sqrt(2.0 / params.mu);
    rc.b_tilde = std::pow(8.0 / (params.mu * params.mu), 1.0 / (p - 2.0));
    rc.c_tilde_mass = std::pow(2.0, 6.0 / (p - 2.0) - 0.5 * params.N) *
                      std::pow(params.mu, 0.5 * params.N - 4.0 / (p - 2.0));
    rc.energy_factor = std::pow(rc.a_tilde, params.N) * std::pow(rc.b_tilde, -p);
    return rc;
}

double landscape_tilde_value(const ProblemParams& params, const GNConstant& gn, double tau) {
    const double p = params.p;
    const double cp = std::pow(gn.c_np, p);
    RescaleConstants rc = rescale_constants(params);
    const double mass = params.a * std::sqrt(rc.c_tilde_mass);
    const double nl = (cp / p) * std::pow(mass, p * (1.0 - params.gamma_p));
    return tau * tau - 2.0 * mass * tau - nl * std::pow(tau, p * params.gamma_p);
}

LandscapeTilde landscape_h_tilde(const ProblemParams& params, const GNConstant& gn) {
    if (!(params.mu > 0.0))
        throw HypothesisError("landscape_h_tilde: requires mu > 0");
    if (!thresholds(params, gn).admissible_min_flag)
        throw HypothesisError("no positive window");

    const double p = params.p;
    const double pg = p * params.gamma_p;
    const double cp = std::pow(gn.c_np, p);
    RescaleConstants rc = rescale_constants(params);
    const double mass = params.a * std::sqrt(rc.c_tilde_mass);

    LandscapeTilde L;
    L.tau_tilde = std::pow(
        p / ((pg - 1.0) * cp * std::pow(mass, p * (1.0 - params.gamma_p))), 1.0 / (pg - 2.0));

    auto f = [&](double tau) { return landscape_tilde_value(params, gn, tau); };
    const double nl = cp * std::pow(mass, p * (1.0 - params.gamma_p));
    auto df = [&, nl](double tau) {
        return 2.0 * tau - 2.0 * mass - params.gamma_p * nl * std::pow(tau, pg - 1.0);
    };
    LandscapeShape s = resolve_landscape(f, df, 2.0 * mass, L.tau_tilde);
    L.r0_tilde = s.zero_lo;
    L.r1_tilde = s.zero_hi;
    L.tau_max = s.arg_max;
    L.h_max = s.max_value;
    return L;
}

MultiplierBounds multiplier_bounds(const ProblemParams& params, const GNConstant& gn) {
    const double p = params.p;
    const double g = params.gamma_p;
    const double pg = p * g;
    const double mu = params.mu;
    const double cp = std::pow(gn.c_np, p);

    MultiplierBounds b;
    b.upper = -0.25 * mu * mu;
    b.lower = -(pg - 1.0) * mu * mu / (4.0 * (pg - 2.0)) +
              (g - 1.0) * cp * std::pow((pg - 1.0) / (2.0 * (pg - 2.0)), pg) *
                  std::pow(mu, pg) * std::pow(params.a, p - 2.0);
    return b;
}

}  // namespace bnls
