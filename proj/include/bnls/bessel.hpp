#ifndef BNLS_BESSEL_HPP
#define BNLS_BESSEL_HPP

namespace bnls {

/// psi(r) = r^{-(N-2)/2} J_{(N-2)/2}(r), the radial solution of
/// (Delta + 1) psi = 0 on R^N that is regular at the origin, normalized by
/// psi(0) = 1 / (2^{(N-2)/2} Gamma(N/2)). Power series for small argument,
/// spherical-Bessel closed forms (odd N) or Hankel asymptotics plus upward
/// recurrence (even N) for large argument.
double bessel_psi(int N, double r);

}  // namespace bnls

#endif
