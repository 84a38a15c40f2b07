#ifndef BNLS_DETAIL_ROOTFIND_HPP
#define BNLS_DETAIL_ROOTFIND_HPP

#include <cmath>
#include <stdexcept>

namespace bnls::detail {

/// Bisection on a bracketing interval [lo, hi] with f(lo)*f(hi) <= 0,
/// to absolute tolerance xtol on the interval width.
template <typename F>
double bisect(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::runtime_error("bisect: endpoints do not bracket a root");
    for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace bnls::detail

#endif
