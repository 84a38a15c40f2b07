#ifndef BNLS_GRID_HPP
#define BNLS_GRID_HPP

// Radial grids on [0, rmax] with quadrature realizing
//   integral_{R^N} f = omega_{N-1} * integral_0^rmax f(r) r^{N-1} dr
// for radial f. Node weights come from integrating the piecewise-cubic
// interpolant against r^{N-1} exactly (binomial moments), so polynomials of
// degree <= 3 times r^{N-1} integrate exactly per subinterval. Face moments
// omega * integral r^{N-1} dr over each subinterval drive the conservative
// Laplacian; both are homogeneous under r -> factor * r, which makes the
// mass-preserving dilation exact (see profile.hpp).

#include <memory>
#include <span>
#include <vector>

namespace bnls {

class RadialGrid {
  public:
    int dim = 0;                  // space dimension N
    double area = 0.0;            // omega_{N-1} = 2 pi^{N/2} / Gamma(N/2)
    std::vector<double> r;        // nodes, r[0] = 0, strictly increasing
    std::vector<double> w;        // nodal quadrature weights
    std::vector<double> face_w;   // face_w[i] = omega * int_{r_i}^{r_{i+1}} s^{N-1} ds

    int n() const { return static_cast<int>(r.size()); }
    double rmax() const { return r.back(); }

    double integrate(std::span<const double> f) const;
    double inner(std::span<const double> f, std::span<const double> g) const;

    /// Homothetic copy: nodes scaled by `factor`, moments by factor^N.
    RadialGrid scaled(double factor) const;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Graded grid: spacing grows smoothly from ~eps * (uniform spacing) at the
/// origin to a uniform tail, via the mapping density eps + (1-eps) tanh(beta x).
RadialGrid make_graded_grid(int N, double rmax, int nodes, double grading_eps = 0.1,
                            double grading_beta = 8.0);

RadialGrid make_uniform_grid(int N, double rmax, int nodes);

/// Rebuild a grid (weights and face moments) from an explicit node array,
/// e.g. when deserializing a profile.
RadialGrid make_grid_from_nodes(int N, std::vector<double> nodes);

GridPtr share(RadialGrid g);

double unit_sphere_area(int N);

}  // namespace bnls

#endif
