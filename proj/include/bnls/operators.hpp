#ifndef BNLS_OPERATORS_HPP
#define BNLS_OPERATORS_HPP

// Conservative radial operators tied to RadialGrid. The Laplacian is the flux
// form (1/w_i)[F_{i+1/2} - F_{i-1/2}] with F = face_w * du/dr, zero flux
// through r = 0 and homogeneous Dirichlet on u and on lap(u) at rmax (the last
// node is the boundary and is always treated as 0). With the grid's weights
// this triple satisfies, exactly in floating point:
//
//   <lap u, v>_w = <u, lap v>_w,     <lap u, u>_w = -grad_sq(u),
//
// which is what makes energy gradients, multiplier estimates and the
// interpolation inequality exact at the discrete level.

#include <span>
#include <vector>

#include "bnls/grid.hpp"

namespace bnls {

void apply_lap(const RadialGrid& g, std::span<const double> u, std::span<double> out);
void apply_bilap(const RadialGrid& g, std::span<const double> u, std::span<double> out);
std::vector<double> lap_of(const RadialGrid& g, std::span<const double> u);

/// Quadrature of |u'|^2 r^{N-1} via face differences; equals -<lap u, u>_w.
double grad_sq(const RadialGrid& g, std::span<const double> u);

/// Banded LDL^T factorization of W (lap^2 + theta I), solving
/// (lap^2 + theta) x = b. theta > 0.
class ShiftedBilapSolver {
  public:
    ShiftedBilapSolver(const RadialGrid& g, double theta);
    void solve(std::span<const double> b, std::span<double> x) const;
    double theta() const { return theta_; }

  private:
    const RadialGrid* grid_;
    double theta_;
    std::vector<double> d_, l1_, l2_;  // LDL^T bands
};

}  // namespace bnls

#endif
