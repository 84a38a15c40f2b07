#include "bnls/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace bnls {

namespace {

// Hankel asymptotic expansion of J_nu for large x (nu = 0 or 1 here).
double bessel_j_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = 1e300;
    for (int k = 1; k <= 12; ++k) {
        double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) >= prev) break;  // asymptotic tail started growing
        prev = std::abs(term);
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            case 0: p += term; break;
        }
        if (std::abs(term) < 1e-17) break;
    }
    double chi = x - (2.0 * nu + 1.0) * M_PI / 4.0;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double psi_series(int N, double r) {
    const double nu = 0.5 * (N - 2);
    const double z = 0.25 * r * r;
    double term = 1.0 / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k <= 200; ++k) {
        term *= -z / (k * (nu + k));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
    }
    return std::pow(2.0, -nu) * sum;
}

}  // namespace

double bessel_psi(int N, double r) {
    if (N < 2) throw std::invalid_argument("bessel_psi: N >= 2 required");
    if (r < 0.0) throw std::invalid_argument("bessel_psi: r >= 0 required");
    if (r <= 14.0) return psi_series(N, r);

    if (N % 2 == 1) {
        // nu = l + 1/2: spherical Bessel closed forms, stable upward for r > l.
        const int l = (N - 3) / 2;
        double j_prev = std::sin(r) / r;  // j_0
        if (l == 0) return std::sqrt(2.0 / M_PI) * j_prev;
        double j_cur = std::sin(r) / (r * r) - std::cos(r) / r;  // j_1
        for (int k = 1; k < l; ++k) {
            double j_next = (2.0 * k + 1.0) / r * j_cur - j_prev;
            j_prev = j_cur;
            j_cur = j_next;
        }
        return std::sqrt(2.0 / M_PI) * j_cur / std::pow(r, l);
    }

    const int nu = (N - 2) / 2;
    double j0 = bessel_j_asymptotic(0, r);
    if (nu == 0) return j0;
    double j1 = bessel_j_asymptotic(1, r);
    double j_prev = j0, j_cur = j1;
    for (int k = 1; k < nu; ++k) {
        double j_next = 2.0 * k / r * j_cur - j_prev;
        j_prev = j_cur;
        j_cur = j_next;
    }
    return j_cur / std::pow(r, nu);
}

}  // namespace bnls
