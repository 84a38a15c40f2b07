#include "bnls/operators.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace bnls {

void apply_lap(const RadialGrid& g, std::span<const double> u, std::span<double> out) {
    const int n = g.n();
    assert(static_cast<int>(u.size()) == n && static_cast<int>(out.size()) == n);
    auto val = [&](int i) { return i == n - 1 ? 0.0 : u[i]; };
    double flux_left = 0.0;  // no flux through r = 0
    for (int i = 0; i + 1 < n; ++i) {
        double h = g.r[i + 1] - g.r[i];
        // face_w/h approximates the face area omega * r_f^{N-1}; pairing it
        // with the face difference keeps <lap u, u>_w = -grad_sq(u) exact.
        double flux_right = g.face_w[i] * (val(i + 1) - u[i]) / (h * h);
        out[i] = (flux_right - flux_left) / g.w[i];
        flux_left = flux_right;
    }
    out[n - 1] = 0.0;
}

std::vector<double> lap_of(const RadialGrid& g, std::span<const double> u) {
    std::vector<double> out(u.size());
    apply_lap(g, u, out);
    return out;
}

void apply_bilap(const RadialGrid& g, std::span<const double> u, std::span<double> out) {
    std::vector<double> tmp(u.size());
    apply_lap(g, u, tmp);
    apply_lap(g, tmp, out);
}

double grad_sq(const RadialGrid& g, std::span<const double> u) {
    const int n = g.n();
    auto val = [&](int i) { return i == n - 1 ? 0.0 : u[i]; };
    double s = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        double d = (val(i + 1) - u[i]) / (g.r[i + 1] - g.r[i]);
        s += g.face_w[i] * d * d;
    }
    return s;
}

ShiftedBilapSolver::ShiftedBilapSolver(const RadialGrid& g, double theta)
    : grid_(&g), theta_(theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("ShiftedBilapSolver: theta must be > 0");
    const int n = g.n();
    const int m = n - 1;  // interior DOFs, last node is the Dirichlet boundary

    // Stiffness A (tridiagonal, SPD): a(u,v) = sum_f face_w (Du)_f (Dv)_f.
    std::vector<double> c(m);  // c[i] = face_w[i] / h_i^2, faces 0..n-2
    for (int i = 0; i < m; ++i) {
        double h = g.r[i + 1] - g.r[i];
        c[i] = g.face_w[i] / (h * h);
    }
    std::vector<double> ad(m), ae(m > 1 ? m - 1 : 0);
    for (int i = 0; i < m; ++i) {
        ad[i] = c[i] + (i > 0 ? c[i - 1] : 0.0);
        if (i + 1 < m) ae[i] = -c[i];
    }

    // M = A W^{-1} A + theta W, pentadiagonal SPD.
    std::vector<double> m0(m), m1(m > 1 ? m - 1 : 0), m2(m > 2 ? m - 2 : 0);
    for (int i = 0; i < m; ++i) {
        double v = ad[i] * ad[i] / g.w[i] + theta * g.w[i];
        if (i > 0) v += ae[i - 1] * ae[i - 1] / g.w[i - 1];
        if (i + 1 < m) v += ae[i] * ae[i] / g.w[i + 1];
        m0[i] = v;
    }
    for (int i = 0; i + 1 < m; ++i)
        m1[i] = ae[i] * (ad[i] / g.w[i] + ad[i + 1] / g.w[i + 1]);
    for (int i = 0; i + 2 < m; ++i) m2[i] = ae[i] * ae[i + 1] / g.w[i + 1];

    // LDL^T with bandwidth 2.
    d_.assign(m, 0.0);
    l1_.assign(m > 1 ? m - 1 : 0, 0.0);
    l2_.assign(m > 2 ? m - 2 : 0, 0.0);
    for (int j = 0; j < m; ++j) {
        double dj = m0[j];
        if (j >= 1) dj -= l1_[j - 1] * l1_[j - 1] * d_[j - 1];
        if (j >= 2) dj -= l2_[j - 2] * l2_[j - 2] * d_[j - 2];
        if (!(dj > 0.0)) throw std::runtime_error("ShiftedBilapSolver: factorization broke down");
        d_[j] = dj;
        if (j + 1 < m) {
            double v = m1[j];
            if (j >= 1) v -= l2_[j - 1] * l1_[j - 1] * d_[j - 1];
            l1_[j] = v / dj;
        }
        if (j + 2 < m) l2_[j] = m2[j] / dj;
    }
}

void ShiftedBilapSolver::solve(std::span<const double> b, std::span<double> x) const {
    const RadialGrid& g = *grid_;
    const int n = g.n();
    const int m = n - 1;
    std::vector<double> z(m);
    for (int i = 0; i < m; ++i) z[i] = g.w[i] * b[i];
    for (int i = 0; i < m; ++i) {
        if (i >= 1) z[i] -= l1_[i - 1] * z[i - 1];
        if (i >= 2) z[i] -= l2_[i - 2] * z[i - 2];
    }
    for (int i = 0; i < m; ++i) z[i] /= d_[i];
    for (int i = m - 1; i >= 0; --i) {
        if (i + 1 < m) z[i] -= l1_[i] * z[i + 1];
        if (i + 2 < m) z[i] -= l2_[i] * z[i + 2];
    }
    for (int i = 0; i < m; ++i) x[i] = z[i];
    x[n - 1] = 0.0;
}

}  // namespace bnls
