#ifndef BNLS_HARNESS_HPP
#define BNLS_HARNESS_HPP

// Verification experiments: the Bessel-profile test-function bound certifying
// m_r(a, mu) < -a^2 mu^2 / 8, and the mu -> 0+ / a -> 0+ parameter sweeps
// with their diagnostic columns.

#include <optional>
#include <string>
#include <vector>

#include "bnls/solve.hpp"

namespace bnls {

struct BesselWitness {
    double m = 0.0;             // cutoff scale; the profile is psi * phi(r/m)
    RadialProfile profile;      // normalized to mass^2 = c_tilde * a^2
    double phi0_value = 0.0;    // Phi_0(profile) = dd - 2 gg - pp/p
    double mass_sq = 0.0;       // should equal c_tilde * a^2
    double dd_norm = 0.0;       // ||D profile||_2
    double residual_sq = 0.0;   // ||(lap + 1) profile||_2^2
    double bound_margin = 0.0;  // -c_tilde a^2 - phi0_value; > 0 certifies the bound
    double implied_upper_bound = 0.0;  // a_tilde^N b_tilde^{-p} * phi0_value >= m_r(a, mu)
    double tau_tilde = 0.0;
};

/// Cutoff-at-scale-m Bessel test function, normalized into the rescaled mass
/// sphere. Requires p < 4 (throws HypothesisError otherwise) and m >= 1.
/// The certification succeeds when bound_margin > 0 (guaranteed for large m).
BesselWitness build_witness(const ProblemParams& params, const GNConstant& gn, double m);

/// Doubling search m = m0, 2 m0, ... <= m_max for a positive bound margin.
std::optional<BesselWitness> find_witness(const ProblemParams& params, const GNConstant& gn,
                                          double m0 = 8.0, double m_max = 1024.0);

/// Smooth plateau cutoff: 1 on [0,1], 0 on [2,inf), exp(-1/s)-based blend.
double bump_cutoff(double t);

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;   // aligned with `columns`
    std::vector<std::string> row_errors;     // empty string when the row is good
    int failed_points = 0;
};

/// Per-mu ground and mountain-pass solves at fixed (N, p, a), plus the mu = 0
/// limit state for the H^2-distance column. Mountain-pass solves continue
/// along decreasing mu (warm starts); ground solves are independent.
/// Columns: mu, m_r, lambda_ground, delta_norm_ground, sigma, lambda_mp,
///          h2_dist_limit, h2_dist_limit_rel, ok
SweepResult sweep_mu(const ProblemParams& params, const GNConstant& gn,
                     const SolverConfig& cfg, const std::vector<double>& mu_values,
                     GridPtr base_grid, int workers = 1);

/// Per-a ground solves at fixed (N, p, mu), with the vanishing-mass ratio
/// columns. Columns: a, m_r, ratio_mr, eps_k, lambda, dd_over_mm, gg_over_mm,
///                   concentration, lq_p, lq_mid, ok
SweepResult sweep_a(const ProblemParams& params, const GNConstant& gn, const SolverConfig& cfg,
                    const std::vector<double>& a_values, GridPtr base_grid, int workers = 1);

struct DecayCheck {
    double fitted = 0.0;
    double predicted = 0.0;  // sqrt(2 sqrt(-lambda) + mu) / 2
    double margin = 0.0;     // fitted - (predicted - 0.05)
};

/// Tail-rate diagnostic of a converged report. Requires lambda < -mu^2/4.
DecayCheck decay_check(const SolveReport& report, const ProblemParams& params);

}  // namespace bnls

#endif
