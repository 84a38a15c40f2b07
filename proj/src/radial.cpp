#include "bnls/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bnls/operators.hpp"

namespace bnls {

NormQuadruple norm_quadruple(const RadialProfile& u, double p) {
    const RadialGrid& g = *u.grid;
    NormQuadruple q;
    std::vector<double> lap(u.values.size());
    apply_lap(g, u.values, lap);
    q.dd = g.inner(lap, lap);
    q.gg = grad_sq(g, u.values);
    q.mm = g.inner(u.values, u.values);
    double pp = 0.0;
    for (int i = 0; i < g.n(); ++i) pp += g.w[i] * std::pow(std::abs(u.values[i]), p);
    q.pp = pp;
    return q;
}

double energy_of(const RadialProfile& u, double mu, double p) {
    return energy(norm_quadruple(u, p), mu, p);
}

ConstrainedGradient constrained_gradient(const RadialProfile& u, double mu, double p) {
    const RadialGrid& g = *u.grid;
    const int n = g.n();
    ConstrainedGradient out;
    std::vector<double> lap(n), bilap(n);
    apply_lap(g, u.values, lap);
    apply_lap(g, lap, bilap);

    NormQuadruple q;
    q.dd = g.inner(lap, lap);
    q.gg = grad_sq(g, u.values);
    q.mm = g.inner(u.values, u.values);
    double pp = 0.0;
    out.free_grad.resize(n);
    for (int i = 0; i < n; ++i) {
        double absu = std::abs(u.values[i]);
        double nl = (absu == 0.0) ? 0.0 : std::pow(absu, p - 2.0) * u.values[i];
        pp += g.w[i] * std::pow(absu, p);
        out.free_grad[i] = bilap[i] + mu * lap[i] - nl;
    }
    out.free_grad[n - 1] = 0.0;
    q.pp = pp;

    // Multiplier from the weak form tested with u itself; exact discrete
    // integration by parts makes <free_grad, u>_w = dd - mu gg - pp hold to
    // roundoff, so the tangent component is orthogonal to u by construction.
    out.lambda = (q.dd - mu * q.gg - q.pp) / q.mm;
    out.tangent.resize(n);
    for (int i = 0; i < n; ++i) out.tangent[i] = out.free_grad[i] - out.lambda * u.values[i];
    out.tangent[n - 1] = 0.0;
    return out;
}

double concentration(const RadialProfile& u, double mu) {
    const RadialGrid& g = *u.grid;
    std::vector<double> lap(u.values.size());
    apply_lap(g, u.values, lap);
    for (size_t i = 0; i < lap.size(); ++i) lap[i] += 0.5 * mu * u.values[i];
    lap.back() = 0.0;
    return g.inner(lap, lap) / g.inner(u.values, u.values);
}

int sign_changes(const RadialProfile& u) {
    double floor = 1e-9 * max_abs(u);
    int count = 0;
    int last = 0;
    for (double v : u.values) {
        if (std::abs(v) <= floor) continue;
        int s = v > 0.0 ? 1 : -1;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

DecayFit decay_rate_fit(const RadialProfile& u, double r_lo, double r_hi) {
    const RadialGrid& g = *u.grid;
    const int n = g.n();
    double floor = 1e-13 * std::max(max_abs(u), 1e-300);

    std::vector<double> xs, ys;
    // Window samples with |u| above the floor.
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
        if (g.r[i] >= r_lo && g.r[i] <= r_hi && std::abs(u.values[i]) > floor) idx.push_back(i);
    if (idx.size() < 6) throw std::runtime_error("window too noisy");

    bool monotone = true;
    for (size_t k = 1; k < idx.size(); ++k)
        if (std::abs(u.values[idx[k]]) > std::abs(u.values[idx[k - 1]])) {
            monotone = false;
            break;
        }

    if (monotone) {
        for (int i : idx) {
            xs.push_back(g.r[i]);
            ys.push_back(std::log(std::abs(u.values[i])));
        }
    } else {
        // Oscillatory tail: fit the envelope through local maxima of |u|.
        for (size_t k = 1; k + 1 < idx.size(); ++k) {
            int i = idx[k];
            double v = std::abs(u.values[i]);
            if (v >= std::abs(u.values[i - 1]) && v >= std::abs(u.values[i + 1])) {
                xs.push_back(g.r[i]);
                ys.push_back(std::log(v));
            }
        }
    }
    if (xs.size() < 6) throw std::runtime_error("window too noisy");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(xs.size());
    for (size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double icept = (sy - slope * sx) / m;
    double rss = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
        double e = ys[k] - (icept + slope * xs[k]);
        rss += e * e;
    }
    DecayFit fit;
    fit.rate = -slope;
    fit.residual = std::sqrt(rss / m);
    fit.points = static_cast<int>(xs.size());
    if (fit.residual > 0.5) throw std::runtime_error("window too noisy");
    return fit;
}

}  // namespace bnls
