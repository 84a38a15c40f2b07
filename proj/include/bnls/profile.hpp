#ifndef BNLS_PROFILE_HPP
#define BNLS_PROFILE_HPP

// Discretized radial functions. A profile owns (a pointer to) its grid; the
// solvers dilate profiles by rescaling the grid, which transforms every
// quadrature moment exactly, so the fiber-map algebra of fiber.hpp holds to
// roundoff along dilation orbits. The resampling dilate() keeps the grid and
// interpolates instead (monotone cubic, preserving sign-change counts).

#include <functional>
#include <string>

#include "bnls/grid.hpp"

namespace bnls {

struct RadialProfile {
    GridPtr grid;
    std::vector<double> values;  // values.back() == 0 (Dirichlet boundary)
};

RadialProfile make_profile(GridPtr grid, const std::function<double(double)>& f);
RadialProfile make_profile(GridPtr grid, std::vector<double> values);

double max_abs(const RadialProfile& u);

/// Tail decays below 1e-12 * max|u| at the outer boundary.
bool truncation_ok(const RadialProfile& u);

/// Exact mass-preserving dilation (s * u)(x) = e^{Ns/2} u(e^s x), realized by
/// scaling the grid by e^{-s} and the values by e^{Ns/2}.
RadialProfile dilate_rescaled(const RadialProfile& u, double s);

/// Resampling dilation onto the profile's own grid (monotone cubic); the
/// interpolated profile is rescaled to restore the original mass exactly.
/// Throws std::runtime_error("domain overflow") when the dilated support
/// escapes the grid.
RadialProfile dilate(const RadialProfile& u, double s);

/// Monotone-cubic resampling onto another grid (values beyond the source
/// domain are zero).
RadialProfile resample_to(const RadialProfile& u, GridPtr target);

/// Weighted H^2 distance (||d||_2^2 + ||lap d||_2^2)^{1/2} on a's grid.
double h2_distance(const RadialProfile& a, const RadialProfile& b);
double h2_norm(const RadialProfile& a);

// -------------------------------------------------------------------------
// Serialization: two-column text with a header line carrying the problem
// scalars at 17 significant digits; '#'-prefixed lines after the header hold
// the resolved run configuration.

struct ProfileHeader {
    int N = 0;
    double p = 0.0, a = 0.0, mu = 0.0, lambda = 0.0;
    std::string branch;
};

void write_profile(const std::string& path, const RadialProfile& u, const ProfileHeader& hdr,
                   const std::vector<std::string>& config_lines = {});

struct LoadedProfile {
    RadialProfile profile;
    ProfileHeader header;
};

LoadedProfile read_profile(const std::string& path);

}  // namespace bnls

#endif
