#include "bnls/fiber.hpp"

#include <cmath>

#include "bnls/detail/rootfind.hpp"

namespace bnls {

bool interpolation_ok(const NormQuadruple& q, double rel_tol) {
    return q.gg <= std::sqrt(q.mm * q.dd) * (1.0 + rel_tol);
}

NormQuadruple validated(const NormQuadruple& q) {
    if (!(std::isfinite(q.dd) && std::isfinite(q.gg) && std::isfinite(q.pp) &&
          std::isfinite(q.mm)))
        throw std::invalid_argument("NormQuadruple: non-finite entry");
    if (q.dd < 0.0 || q.gg < 0.0 || q.pp < 0.0)
        throw std::invalid_argument("NormQuadruple: negative entry");
    if (!(q.mm > 0.0)) throw std::invalid_argument("NormQuadruple: mass must be positive");
    if (!interpolation_ok(q))
        throw std::invalid_argument("NormQuadruple: interpolation inequality violated");
    return q;
}

NormQuadruple scaled(const NormQuadruple& q, double p, double gamma_p, double s) {
    return {q.dd * std::exp(4.0 * s), q.gg * std::exp(2.0 * s),
            q.pp * std::exp(2.0 * p * gamma_p * s), q.mm};
}

double energy(const NormQuadruple& q, double mu, double p) {
    return 0.5 * q.dd - 0.5 * mu * q.gg - q.pp / p;
}

double pohozaev(const NormQuadruple& q, double mu, double gamma_p) {
    return 2.0 * q.dd - mu * q.gg - 2.0 * gamma_p * q.pp;
}

double fiber_value(const NormQuadruple& q, double mu, double p, double gamma_p, double s) {
    return 0.5 * std::exp(4.0 * s) * q.dd - 0.5 * mu * std::exp(2.0 * s) * q.gg -
           std::exp(2.0 * p * gamma_p * s) * q.pp / p;
}

double fiber_deriv(const NormQuadruple& q, double mu, double p, double gamma_p, double s) {
    return pohozaev(scaled(q, p, gamma_p, s), mu, gamma_p);
}

double fiber_second(const NormQuadruple& q, double mu, double p, double gamma_p, double s) {
    return 8.0 * std::exp(4.0 * s) * q.dd - 2.0 * mu * std::exp(2.0 * s) * q.gg -
           4.0 * p * gamma_p * gamma_p * std::exp(2.0 * p * gamma_p * s) * q.pp;
}

const char* to_string(ManifoldClass c) {
    switch (c) {
        case ManifoldClass::Pplus: return "Pplus";
        case ManifoldClass::Pzero: return "Pzero";
        case ManifoldClass::Pminus: return "Pminus";
        case ManifoldClass::OffManifold: return "OffManifold";
    }
    return "?";
}

ManifoldClass classify(const NormQuadruple& q, double mu, double p, double gamma_p,
                       double pohozaev_tol) {
    double P = pohozaev(q, mu, gamma_p);
    if (std::abs(P) > pohozaev_tol * std::max(q.dd, 1.0)) return ManifoldClass::OffManifold;
    double second = fiber_second(q, mu, p, gamma_p, 0.0);
    if (std::abs(second) <= 1e-9 * (q.dd + 1.0)) return ManifoldClass::Pzero;
    return second > 0.0 ? ManifoldClass::Pplus : ManifoldClass::Pminus;
}

namespace {

// Psi'(s) = e^{2s} * reduced(s) with
// reduced(s) = 2 dd e^{2s} - 2 gamma_p pp e^{2(p gamma_p - 1)s} - mu gg.
// reduced is strictly unimodal for p gamma_p > 2, so its roots bracket the
// unique interior maximum s_hat.
struct Reduced {
    double dd, gg, pp, mu, p, g;
    double operator()(double s) const {
        return 2.0 * dd * std::exp(2.0 * s) -
               2.0 * g * pp * std::exp(2.0 * (p * g - 1.0) * s) - mu * gg;
    }
};

double newton_polish_deriv(const NormQuadruple& q, double mu, double p, double gamma_p,
                           double s) {
    for (int it = 0; it < 4; ++it) {
        double f = fiber_deriv(q, mu, p, gamma_p, s);
        double df = fiber_second(q, mu, p, gamma_p, s);
        if (df == 0.0) break;
        double step = f / df;
        if (!std::isfinite(step) || std::abs(step) > 1.0) break;
        s -= step;
    }
    return s;
}

double newton_polish_value(const NormQuadruple& q, double mu, double p, double gamma_p,
                           double s) {
    for (int it = 0; it < 4; ++it) {
        double f = fiber_value(q, mu, p, gamma_p, s);
        double df = fiber_deriv(q, mu, p, gamma_p, s);
        if (df == 0.0) break;
        double step = f / df;
        if (!std::isfinite(step) || std::abs(step) > 1.0) break;
        s -= step;
    }
    return s;
}

}  // namespace

FiberGeometry fiber_geometry(const NormQuadruple& q, double mu, double p, double gamma_p) {
    validated(q);
    if (!(q.dd > 0.0) || !(q.pp > 0.0))
        throw GeometryError("fiber_geometry: needs dd > 0 and pp > 0");
    const double pg = p * gamma_p;
    if (!(pg > 2.0)) throw GeometryError("fiber_geometry: requires p gamma_p > 2");

    FiberGeometry geo;
    if (mu == 0.0) {
        geo.has_min = false;
        geo.t_max = std::log(q.dd / (gamma_p * q.pp)) / (2.0 * pg - 4.0);
        // Single zero beyond the maximum: e^{(2pg-4)s} = p dd / (2 pp).
        geo.zero_hi = std::log(p * q.dd / (2.0 * q.pp)) / (2.0 * pg - 4.0);
        geo.class_at_zero = classify(q, mu, p, gamma_p);
        return geo;
    }

    if (!(q.gg > 0.0))
        throw GeometryError("geometry not guaranteed: mu > 0 requires a positive gradient norm");

    Reduced red{q.dd, q.gg, q.pp, mu, p, gamma_p};
    const double s_hat = std::log(q.dd / (gamma_p * (pg - 1.0) * q.pp)) / (2.0 * (pg - 2.0));

    // Coarse scan of the search window, then exhaustive check via the
    // unimodal split at s_hat.
    double lo_cell_lo = 0, lo_cell_hi = 0, hi_cell_lo = 0, hi_cell_hi = 0;
    int flips = 0;
    {
        const int n = 4096;
        const double a = -40.0, b = 40.0;
        double prev_s = a, prev_f = red(a);
        for (int k = 1; k <= n; ++k) {
            double s = a + (b - a) * k / n;
            double f = red(s);
            if ((prev_f < 0.0 && f >= 0.0) || (prev_f >= 0.0 && f < 0.0)) {
                ++flips;
                if (flips == 1) {
                    lo_cell_lo = prev_s;
                    lo_cell_hi = s;
                } else if (flips == 2) {
                    hi_cell_lo = prev_s;
                    hi_cell_hi = s;
                }
            }
            prev_s = s;
            prev_f = f;
        }
    }

    if (flips != 2) {
        // Exact split: reduced is unimodal with maximum at s_hat.
        if (!(red(s_hat) > 0.0)) throw GeometryError("geometry not guaranteed");
        double left = s_hat - 1.0;
        while (red(left) > 0.0) left -= std::max(1.0, std::abs(left));
        double right = s_hat + 1.0;
        while (red(right) > 0.0) right += std::max(1.0, std::abs(right));
        lo_cell_lo = left;
        lo_cell_hi = s_hat;
        hi_cell_lo = s_hat;
        hi_cell_hi = right;
    }

    geo.has_min = true;
    geo.s_min = detail::bisect(red, lo_cell_lo, lo_cell_hi, 1e-12);
    geo.t_max = detail::bisect(red, hi_cell_lo, hi_cell_hi, 1e-12);
    geo.s_min = newton_polish_deriv(q, mu, p, gamma_p, geo.s_min);
    geo.t_max = newton_polish_deriv(q, mu, p, gamma_p, geo.t_max);

    auto psi = [&](double s) { return fiber_value(q, mu, p, gamma_p, s); };
    if (!(psi(geo.s_min) < 0.0 && psi(geo.t_max) > 0.0))
        throw GeometryError("geometry not guaranteed");

    geo.zero_lo = detail::bisect(psi, geo.s_min, geo.t_max, 1e-12);
    double hi = geo.t_max + 1.0;
    while (psi(hi) > 0.0) hi += std::max(1.0, std::abs(hi));
    geo.zero_hi = detail::bisect(psi, geo.t_max, hi, 1e-12);
    geo.zero_lo = newton_polish_value(q, mu, p, gamma_p, geo.zero_lo);
    geo.zero_hi = newton_polish_value(q, mu, p, gamma_p, geo.zero_hi);

    geo.class_at_zero = classify(q, mu, p, gamma_p);
    return geo;
}

}  // namespace bnls
