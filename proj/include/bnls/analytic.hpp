#ifndef BNLS_ANALYTIC_HPP
#define BNLS_ANALYTIC_HPP

// Closed-form layer for the mixed-dispersion problem
//
//     Delta^2 u + mu*Delta u - lambda*u = |u|^{p-2} u,   ||u||_2 = a  on R^N,
//
// with energy E_mu(u) = 1/2||Du||^2 - mu/2||grad u||^2 - 1/p||u||_p^p.
// Everything in this header is computable from (N, p, a, mu) and a
// Gagliardo-Nirenberg constant, with no discretized function involved.

#include <stdexcept>

namespace bnls {

struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Exponents {
    double gamma_p;  // N(p-2)/(4p)
    double p_bar;    // L2-critical exponent 2 + 8/N
    double p_star4;  // 2N/(N-4) for N >= 5, +inf for N <= 4
};

/// Derived exponents; rejects N < 2 or p <= 2.
Exponents derive_exponents(int N, double p);

struct ProblemParams {
    int N = 0;
    double p = 0.0;
    double a = 0.0;   // prescribed L2 norm
    double mu = 0.0;  // second-order dispersion coefficient, >= 0
    double gamma_p = 0.0;
    double p_bar = 0.0;
    double p_star4 = 0.0;
};

/// Validated constructor. Requires N >= 2, a > 0, mu >= 0 and the
/// supercritical window p_bar < p < 4*. mu = 0 selects the limit problem.
ProblemParams make_params(int N, double p, double a, double mu);

enum class GNProvenance { UserSupplied, Estimated };

// Constant C in ||u||_p^p <= C^p ||u||_2^{p(1-gamma_p)} ||Du||_2^{p gamma_p}.
struct GNConstant {
    double c_np = 0.0;
    GNProvenance provenance = GNProvenance::UserSupplied;
    double refinement_delta = 0.0;  // |c(h) - c(h/2)| / c(h/2) when estimated
};

struct Thresholds {
    double c_tilde;   // controls the convex-concave landscape geometry
    double c_upper;   // C^*: multiplier bound, gamma_p > 1/2 case
    double c_lower;   // C_*: multiplier bound, gamma_p <= 1/2 case
    bool admissible_min_flag;    // mu^{p gamma_p - 2} a^{p-2} < min of the three
    double admissibility_ratio;  // mu^{p gamma_p - 2} a^{p-2} / min of the three
};

Thresholds thresholds(const ProblemParams& params, const GNConstant& gn);

// Landscape function h(t) = t^2/2 - mu*a*t/2 - (C^p/p) a^{p(1-gamma_p)} t^{p gamma_p}
// controlling E_mu(u) >= h(||Du||_2) on the mass sphere.
struct Landscape {
    double t_bar;  // maximizer of phi(t) = t/2 - (C^p/p) a^{p(1-gamma_p)} t^{p gamma_p - 1}
    double r0;     // first zero of h; the local-minimization disk radius
    double r1;     // second zero of h
    double t_max;  // interior maximizer of h on (r0, r1)
    double h_max;  // h(t_max) > 0
};

double landscape_value(const ProblemParams& params, const GNConstant& gn, double t);

/// Zeros and maximum of h. Requires mu > 0 and the admissibility flag;
/// throws HypothesisError("no positive window") otherwise.
Landscape landscape_h(const ProblemParams& params, const GNConstant& gn);

// Zoom constants of the equivalent rescaled minimization problem:
// v(x) = b_tilde * u(a_tilde * x) carries the local minimization of E_mu
// into Phi_0(v) = ||Dv||^2 - 2||grad v||^2 - 1/p ||v||_p^p at mass a*sqrt(c).
struct RescaleConstants {
    double a_tilde;       // (2/mu)^{1/2}
    double b_tilde;       // (8/mu^2)^{1/(p-2)}
    double c_tilde_mass;  // 2^{6/(p-2) - N/2} mu^{N/2 - 4/(p-2)}
    double energy_factor; // a_tilde^N b_tilde^{-p}; equals (mu^2/8)/c_tilde_mass * ... kept explicit
};

RescaleConstants rescale_constants(const ProblemParams& params);

struct LandscapeTilde {
    double tau_tilde;  // maximizer scale; equals a_tilde^{2-N/2} b_tilde * t_bar
    double r0_tilde;
    double r1_tilde;
    double tau_max;
    double h_max;
};

double landscape_tilde_value(const ProblemParams& params, const GNConstant& gn, double tau);
LandscapeTilde landscape_h_tilde(const ProblemParams& params, const GNConstant& gn);

// Lagrange-multiplier window for the local-minimization branch.
struct MultiplierBounds {
    double upper;  // -mu^2/4
    double lower;  // explicit lower bound; always < upper
};

MultiplierBounds multiplier_bounds(const ProblemParams& params, const GNConstant& gn);

}  // namespace bnls

#endif
