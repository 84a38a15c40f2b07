#ifndef BNLS_SOLVE_HPP
#define BNLS_SOLVE_HPP

// Constructive solvers for the two normalized solutions: the local minimizer
// of E_mu inside the dilation disk ||Du||_2 < R_0 (ground branch, projected
// onto P+), the excited state minimizing E_mu over P- (mountain-pass branch),
// the mu = 0 limit problem, and the Gagliardo-Nirenberg constant estimator.
//
// Both branches run the same scheme: preconditioned tangent-gradient descent
// on the mass sphere, with the iterate kept exactly on its Pohozaev component
// by the fiber projection (grid-rescaling dilation, which transforms the norm
// quadruple exactly). Because the projection sits at a nondegenerate critical
// point of the fiber map, the reduced functional's gradient equals the free
// tangent gradient at the projected point, so at convergence the full
// gradient, not just a constrained one, is below tolerance.

#include <cstdint>
#include <random>

#include "bnls/analytic.hpp"
#include "bnls/fiber.hpp"
#include "bnls/profile.hpp"
#include "bnls/radial.hpp"

namespace bnls {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    double step0 = 1.0;
    int max_iter = 20000;
    double tol_grad = 1e-8;      // preconditioned tangent-gradient norm, scaled by max(1, |E|)
    double tol_pohozaev = 1e-8;  // relative to 1 + ||Du||_2^2
    double backtrack = 0.5;
    double armijo = 1e-4;
    int cadence = 1;  // fiber re-projection every k accepted steps
    int multistart = 50;
    std::uint64_t seed = 42;
    bool record_trace = false;
};

enum class Branch { GroundLocalMin, MountainPass, LimitMuZero };
const char* to_string(Branch b);

struct SolveReport {
    RadialProfile profile;
    double energy = 0.0;
    double lambda = 0.0;
    double pohozaev_residual = 0.0;
    double grad_norm = 0.0;
    double grad_tol_effective = 0.0;
    Branch branch = Branch::GroundLocalMin;
    int iterations = 0;
    NormQuadruple quadruple;
    ManifoldClass manifold_class = ManifoldClass::OffManifold;
    bool truncation_flag_ok = true;
    double mass_error = 0.0;
    std::vector<double> energy_trace;
};

/// Dilate u to the local minimum of its fiber map (lands on P+ with
/// ||Du||_2 < R_0). Mass is preserved exactly.
RadialProfile project_plus(const RadialProfile& u, const ProblemParams& params);

/// Dilate u to the global maximum of its fiber map (lands on P-).
RadialProfile project_minus(const RadialProfile& u, const ProblemParams& params);

SolveReport solve_ground(const ProblemParams& params, const GNConstant& gn,
                         const SolverConfig& cfg, GridPtr grid,
                         const RadialProfile* u0 = nullptr);

SolveReport solve_mountain_pass(const ProblemParams& params, const GNConstant& gn,
                                const SolverConfig& cfg, GridPtr grid,
                                const RadialProfile* u0 = nullptr);

/// mu = 0 limit problem (P_{a,0} consists of the P- component only).
SolveReport solve_limit(const ProblemParams& params, const GNConstant& gn,
                        const SolverConfig& cfg, GridPtr grid,
                        const RadialProfile* u0 = nullptr);

struct MultistartResult {
    SolveReport best;
    int attempted = 0;
    int converged = 0;
    double spread = 0.0;  // (max - min)/|min| over converged levels
    std::vector<double> energies;
};

MultistartResult solve_mountain_pass_multistart(const ProblemParams& params,
                                                const GNConstant& gn, const SolverConfig& cfg,
                                                GridPtr grid, int starts, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Gagliardo-Nirenberg constant: maximize the Weinstein quotient
//   ||u||_p^p / (||u||_2^{p(1-gamma)} ||Du||_2^{p gamma})
// by preconditioned ascent with the gauge ||u||_2 = ||Du||_2 = 1 fixed by an
// amplitude scaling and an exact dilation per step.

double weinstein_quotient(const NormQuadruple& q, int N, double p);

GNConstant gn_constant_estimate(int N, double p, int nodes = 2048, double rmax = 40.0,
                                int max_iter = 4000);

/// Smooth random radial bump mixture with prescribed mass (test corpora and
/// multistart seeds).
RadialProfile random_mass_profile(GridPtr grid, double a, std::mt19937_64& rng);

/// Deterministic uniform draw in [0, 1).
double u01(std::mt19937_64& rng);

}  // namespace bnls

#endif
