#ifndef BNLS_TESTS_ORACLES_HPP
#define BNLS_TESTS_ORACLES_HPP

// Independent oracles used by the test suites: brute-force sign scans,
// centered finite differences, and random admissible parameter/quadruple
// generators. Deliberately written against the documented formulas only, not
// against the library's own root-finders.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bnls/analytic.hpp"
#include "bnls/fiber.hpp"
#include "bnls/solve.hpp"

namespace oracles {

/// Sign changes of f on a dense log-spaced grid of [lo, hi].
inline std::vector<double> log_scan_roots(const std::function<double(double)>& f, double lo,
                                          double hi, int points) {
    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    for (int k = 1; k < points; ++k) {
        double x = lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
        double fx = f(x);
        if ((prev_f < 0.0 && fx >= 0.0) || (prev_f >= 0.0 && fx < 0.0))
            roots.push_back(0.5 * (prev_x + x));
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

/// Sign changes of f on a uniform grid of [lo, hi].
inline std::vector<double> lin_scan_roots(const std::function<double(double)>& f, double lo,
                                          double hi, int points) {
    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    for (int k = 1; k < points; ++k) {
        double x = lo + (hi - lo) * k / (points - 1);
        double fx = f(x);
        if ((prev_f < 0.0 && fx >= 0.0) || (prev_f >= 0.0 && fx < 0.0))
            roots.push_back(0.5 * (prev_x + x));
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

inline double centered_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Random parameters with mu^{p g - 2} a^{p-2} = ratio * min(thresholds).
inline bnls::ProblemParams random_params(std::mt19937_64& rng, const bnls::GNConstant& gn,
                                         int N, double p, double ratio) {
    double mu = std::exp(-1.5 + 3.0 * bnls::u01(rng));
    bnls::Exponents e = bnls::derive_exponents(N, p);
    bnls::ProblemParams probe = bnls::make_params(N, p, 1.0, mu);
    bnls::Thresholds th = bnls::thresholds(probe, gn);
    double min3 = std::min({th.c_tilde, th.c_upper, th.c_lower});
    double a = std::pow(ratio * min3 / std::pow(mu, p * e.gamma_p - 2.0), 1.0 / (p - 2.0));
    return bnls::make_params(N, p, a, mu);
}

/// Random synthetic quadruple at mass a^2 satisfying both the interpolation
/// inequality and the GN inequality for the supplied constant.
inline bnls::NormQuadruple random_admissible_quadruple(std::mt19937_64& rng,
                                                       const bnls::ProblemParams& params,
                                                       const bnls::GNConstant& gn) {
    bnls::NormQuadruple q;
    q.mm = params.a * params.a;
    double scale = params.mu > 0.0 ? params.mu * params.a : 1.0;
    q.dd = scale * scale * std::exp(std::log(1e-2) + bnls::u01(rng) * std::log(1e6));
    q.gg = (0.01 + 0.99 * bnls::u01(rng)) * std::sqrt(q.mm * q.dd);
    double gn_cap = std::pow(gn.c_np, params.p) *
                    std::pow(q.mm, 0.5 * params.p * (1.0 - params.gamma_p)) *
                    std::pow(q.dd, 0.5 * params.p * params.gamma_p);
    q.pp = (0.05 + 0.95 * bnls::u01(rng)) * gn_cap;
    return q;
}

}  // namespace oracles

#endif
