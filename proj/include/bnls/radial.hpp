#ifndef BNLS_RADIAL_HPP
#define BNLS_RADIAL_HPP

// Functional evaluation on radial profiles: norm quadruples, the constrained
// energy gradient with its multiplier estimate, the real-space concentration
// quantity, sign-change counting and exponential decay fitting.

#include "bnls/analytic.hpp"
#include "bnls/fiber.hpp"
#include "bnls/profile.hpp"

namespace bnls {

NormQuadruple norm_quadruple(const RadialProfile& u, double p);

double energy_of(const RadialProfile& u, double mu, double p);

struct ConstrainedGradient {
    std::vector<double> free_grad;  // lap^2 u + mu lap u - |u|^{p-2} u
    std::vector<double> tangent;    // free_grad - lambda u; <tangent, u>_w = 0
    double lambda;                  // (dd - mu gg - pp)/mm
};

ConstrainedGradient constrained_gradient(const RadialProfile& u, double mu, double p);

/// ||(lap + mu/2) u||_2^2 / ||u||_2^2, the real-space form of the Fourier
/// concentration near |xi|^2 = mu/2.
double concentration(const RadialProfile& u, double mu);

/// Count of strict sign alternations above the noise floor 1e-9 * max|u|.
int sign_changes(const RadialProfile& u);

struct DecayFit {
    double rate;      // positive means decay exp(-rate * r)
    double residual;  // rms residual of the log-linear fit
    int points;
};

/// Least-squares slope of log|u| against r on [r_lo, r_hi]. If |u| is not
/// monotone there (oscillatory tail), the fit runs through the local maxima
/// of |u| (the decay envelope). Throws std::runtime_error("window too noisy")
/// when fewer than 6 usable points remain or the fit residual exceeds 0.5.
DecayFit decay_rate_fit(const RadialProfile& u, double r_lo, double r_hi);

}  // namespace bnls

#endif
