#include "bnls/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace bnls {

double unit_sphere_area(int N) {
    return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

double RadialGrid::integrate(std::span<const double> f) const {
    double s = 0.0;
    for (size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
    return s;
}

double RadialGrid::inner(std::span<const double> f, std::span<const double> g) const {
    double s = 0.0;
    for (size_t i = 0; i < f.size(); ++i) s += w[i] * f[i] * g[i];
    return s;
}

namespace {

// int_0^h (r0 + t)^{N-1} t^q dt, exact via binomial expansion (N integer).
double shifted_moment(int N, double r0, double h, int q) {
    double sum = 0.0;
    double binom = 1.0;
    double rpow = std::pow(r0, N - 1);
    for (int j = 0; j <= N - 1; ++j) {
        sum += binom * rpow * std::pow(h, q + j + 1) / (q + j + 1);
        binom *= static_cast<double>(N - 1 - j) / (j + 1);
        rpow = (r0 == 0.0) ? (j + 1 == N - 1 ? 1.0 : 0.0) : rpow / r0;
    }
    return sum;
}

// Coefficients (in t) of the cubic Lagrange basis through (t[0..3], delta_k).
void lagrange_cubic_coeffs(const double t[4], int k, double coef[4]) {
    coef[0] = 1.0;
    coef[1] = coef[2] = coef[3] = 0.0;
    double denom = 1.0;
    int deg = 0;
    for (int m = 0; m < 4; ++m) {
        if (m == k) continue;
        denom *= t[k] - t[m];
        // multiply polynomial by (t - t_m)
        for (int q = deg + 1; q >= 1; --q) coef[q] = coef[q - 1] - t[m] * coef[q];
        coef[0] = -t[m] * coef[0];
        ++deg;
    }
    for (int q = 0; q <= 3; ++q) coef[q] /= denom;
}

void build_weights(RadialGrid& g) {
    const int n = g.n();
    const int N = g.dim;
    if (n < 8) throw std::invalid_argument("RadialGrid: need at least 8 nodes");
    g.w.assign(n, 0.0);
    g.face_w.assign(n - 1, 0.0);

    for (int i = 0; i + 1 < n; ++i) {
        const double r0 = g.r[i];
        const double h = g.r[i + 1] - g.r[i];
        if (!(h > 0.0)) throw std::invalid_argument("RadialGrid: nodes must increase");
        g.face_w[i] = g.area * shifted_moment(N, r0, h, 0);

        int j0 = i - 1;
        if (j0 < 0) j0 = 0;
        if (j0 > n - 4) j0 = n - 4;
        double t[4];
        for (int k = 0; k < 4; ++k) t[k] = g.r[j0 + k] - r0;
        double mom[4];
        for (int q = 0; q < 4; ++q) mom[q] = shifted_moment(N, r0, h, q);
        for (int k = 0; k < 4; ++k) {
            double coef[4];
            lagrange_cubic_coeffs(t, k, coef);
            double contrib = 0.0;
            for (int q = 0; q < 4; ++q) contrib += coef[q] * mom[q];
            g.w[j0 + k] += g.area * contrib;
        }
    }

    // Node 0 carries the removable-singularity calibration: with zero flux
    // through r = 0, this weight makes (lap u)(0) = 2N (u_1 - u_0)/r_1^2,
    // the ghost-node value of Delta u(0) = N u''(0) under u'(0) = 0. It is
    // homogeneous of degree N, so homothety stays exact.
    g.w[0] = g.area * std::pow(g.r[1], N) / (2.0 * N * N);
}

}  // namespace

RadialGrid RadialGrid::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("RadialGrid::scaled: factor must be > 0");
    RadialGrid g;
    g.dim = dim;
    g.area = area;
    const double fn = std::pow(factor, dim);
    g.r.resize(r.size());
    g.w.resize(w.size());
    g.face_w.resize(face_w.size());
    for (size_t i = 0; i < r.size(); ++i) g.r[i] = r[i] * factor;
    for (size_t i = 0; i < w.size(); ++i) g.w[i] = w[i] * fn;
    for (size_t i = 0; i < face_w.size(); ++i) g.face_w[i] = face_w[i] * fn;
    return g;
}

RadialGrid make_graded_grid(int N, double rmax, int nodes, double grading_eps,
                            double grading_beta) {
    if (N < 2) throw std::invalid_argument("make_graded_grid: N >= 2 required");
    if (!(rmax > 0.0)) throw std::invalid_argument("make_graded_grid: rmax must be > 0");
    if (!(grading_eps > 0.0 && grading_eps <= 1.0))
        throw std::invalid_argument("make_graded_grid: grading_eps in (0, 1]");
    RadialGrid g;
    g.dim = N;
    g.area = unit_sphere_area(N);
    g.r.resize(nodes);
    auto rho = [&](double x) {
        return grading_eps * x +
               (1.0 - grading_eps) * std::log(std::cosh(grading_beta * x)) / grading_beta;
    };
    const double rho1 = rho(1.0);
    for (int i = 0; i < nodes; ++i) {
        double x = static_cast<double>(i) / (nodes - 1);
        g.r[i] = rmax * rho(x) / rho1;
    }
    g.r[0] = 0.0;
    g.r[nodes - 1] = rmax;
    build_weights(g);
    return g;
}

RadialGrid make_uniform_grid(int N, double rmax, int nodes) {
    if (N < 2) throw std::invalid_argument("make_uniform_grid: N >= 2 required");
    RadialGrid g;
    g.dim = N;
    g.area = unit_sphere_area(N);
    g.r.resize(nodes);
    for (int i = 0; i < nodes; ++i) g.r[i] = rmax * static_cast<double>(i) / (nodes - 1);
    build_weights(g);
    return g;
}

RadialGrid make_grid_from_nodes(int N, std::vector<double> nodes) {
    if (N < 2) throw std::invalid_argument("make_grid_from_nodes: N >= 2 required");
    RadialGrid g;
    g.dim = N;
    g.area = unit_sphere_area(N);
    g.r = std::move(nodes);
    build_weights(g);
    return g;
}

GridPtr share(RadialGrid g) { return std::make_shared<const RadialGrid>(std::move(g)); }

}  // namespace bnls
