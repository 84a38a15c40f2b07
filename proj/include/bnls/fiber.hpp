#ifndef BNLS_FIBER_HPP
#define BNLS_FIBER_HPP

// Dilation geometry on the mass sphere, computed exactly from the four
// numbers (||Du||_2^2, ||grad u||_2^2, ||u||_p^p, ||u||_2^2). The fiber map
//
//   Psi(s) = E_mu(s * u) = e^{4s}/2 dd - mu/2 e^{2s} gg - e^{2 p gamma_p s}/p pp
//
// is pure algebra on the quadruple, so critical points, zeros and manifold
// classification are available to root-finder accuracy.

#include "bnls/analytic.hpp"

namespace bnls {

struct NormQuadruple {
    double dd = 0.0;  // ||Delta u||_2^2
    double gg = 0.0;  // ||grad u||_2^2
    double pp = 0.0;  // ||u||_p^p
    double mm = 0.0;  // ||u||_2^2
};

/// gg <= sqrt(mm*dd) within tolerance (holds exactly for grid profiles).
bool interpolation_ok(const NormQuadruple& q, double rel_tol = 1e-12);

/// Throws std::invalid_argument for non-finite, negative, zero-mass or
/// interpolation-violating quadruples.
NormQuadruple validated(const NormQuadruple& q);

/// Quadruple of the dilated profile s * u: (e^{4s} dd, e^{2s} gg, e^{2 p g s} pp, mm).
NormQuadruple scaled(const NormQuadruple& q, double p, double gamma_p, double s);

double energy(const NormQuadruple& q, double mu, double p);
double pohozaev(const NormQuadruple& q, double mu, double gamma_p);

double fiber_value(const NormQuadruple& q, double mu, double p, double gamma_p, double s);
double fiber_deriv(const NormQuadruple& q, double mu, double p, double gamma_p, double s);
double fiber_second(const NormQuadruple& q, double mu, double p, double gamma_p, double s);

enum class ManifoldClass { Pplus, Pzero, Pminus, OffManifold };

const char* to_string(ManifoldClass c);

struct FiberGeometry {
    bool has_min = false;  // false on the mu = 0 path (single critical point)
    double s_min = 0.0;    // local minimum of Psi (mu > 0 only)
    double t_max = 0.0;    // global maximum of Psi
    double zero_lo = 0.0;  // first zero (mu > 0 only), s_min < zero_lo < t_max
    double zero_hi = 0.0;  // second zero, t_max < zero_hi
    ManifoldClass class_at_zero = ManifoldClass::OffManifold;
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Critical points and zeros of the fiber map. For mu > 0 requires the
/// two-critical-point structure (throws GeometryError("geometry not
/// guaranteed") when the scan finds a different count). For mu = 0 the single
/// maximum has the closed form t = log(dd/(gamma_p pp)) / (2 p gamma_p - 4).
FiberGeometry fiber_geometry(const NormQuadruple& q, double mu, double p, double gamma_p);

/// OffManifold when |P_mu| > tol * max(dd, 1); otherwise the sign of Psi''(0)
/// decides, with a |Psi''(0)| <= 1e-9 (dd + 1) band mapped to Pzero.
ManifoldClass classify(const NormQuadruple& q, double mu, double p, double gamma_p,
                       double pohozaev_tol = 1e-8);

}  // namespace bnls

#endif
