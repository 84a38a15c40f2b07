#include "bnls/solve.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "bnls/operators.hpp"

namespace bnls {

const char* to_string(Branch b) {
    switch (b) {
        case Branch::GroundLocalMin: return "ground";
        case Branch::MountainPass: return "mountain-pass";
        case Branch::LimitMuZero: return "limit";
    }
    return "?";
}

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

void normalize_mass(RadialProfile& u, double a) {
    double mm = u.grid->inner(u.values, u.values);
    if (!(mm > 0.0)) throw SolverError("normalize_mass: zero profile");
    double f = a / std::sqrt(mm);
    for (double& v : u.values) v *= f;
}

RadialProfile fiber_project(const RadialProfile& u, const ProblemParams& params, bool to_plus) {
    NormQuadruple q = norm_quadruple(u, params.p);
    FiberGeometry geo = fiber_geometry(q, params.mu, params.p, params.gamma_p);
    double s;
    if (to_plus) {
        if (!geo.has_min)
            throw GeometryError("project_plus: fiber map has no local minimum (mu = 0 path)");
        s = geo.s_min;
    } else {
        s = geo.t_max;
    }
    return dilate_rescaled(u, s);
}

struct Iterate {
    RadialProfile u;
    NormQuadruple q;
    double E;
};

Iterate evaluate(RadialProfile u, const ProblemParams& params) {
    Iterate it;
    it.q = norm_quadruple(u, params.p);
    it.E = energy(it.q, params.mu, params.p);
    it.u = std::move(u);
    return it;
}

RadialProfile default_gaussian(GridPtr grid, double a) {
    RadialProfile u = make_profile(std::move(grid), [](double r) { return std::exp(-r * r); });
    normalize_mass(u, a);
    return u;
}

SolveReport run_descent(const ProblemParams& params, const GNConstant& gn,
                        const SolverConfig& cfg, GridPtr grid, const RadialProfile* u0,
                        Branch branch) {
    const bool to_plus = (branch == Branch::GroundLocalMin);
    const double a = params.a;

    double disk_radius = std::numeric_limits<double>::infinity();
    if (to_plus) {
        if (!(params.mu > 0.0)) throw HypothesisError("solve_ground: requires mu > 0");
        disk_radius = landscape_h(params, gn).r0;
    }

    RadialProfile start = u0 ? *u0 : default_gaussian(grid, a);
    normalize_mass(start, a);
    if (to_plus && !u0) {
        // Place the seed well inside the admissible disk before projecting.
        NormQuadruple q0 = norm_quadruple(start, params.p);
        double s = 0.5 * std::log(disk_radius / (2.0 * std::sqrt(q0.dd)));
        start = dilate_rescaled(start, s);
    }
    Iterate cur = evaluate(fiber_project(start, params, to_plus), params);

    SolveReport rep;
    rep.branch = branch;
    if (cfg.record_trace) rep.energy_trace.push_back(cur.E);

    double tau = cfg.step0;
    int accepted = 0;
    int outside_disk = 0;
    bool converged = false;
    double gnorm = 0.0, tol_eff = cfg.tol_grad;
    int stalled = 0;

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        ConstrainedGradient cg = constrained_gradient(cur.u, params.mu, params.p);
        double theta = std::max(1.0, -cg.lambda);
        ShiftedBilapSolver pre(*cur.u.grid, theta);

        std::vector<double> d(cg.tangent.size());
        pre.solve(cg.tangent, d);
        gnorm = std::sqrt(std::max(0.0, cur.u.grid->inner(cg.tangent, d)));
        tol_eff = cfg.tol_grad * std::max(1.0, std::abs(cur.E));
        if (gnorm <= tol_eff) {
            converged = true;
            rep.iterations = accepted;
            break;
        }

        // Keep steps tangent to the mass sphere.
        double proj = cur.u.grid->inner(d, cur.u.values) / cur.q.mm;
        for (size_t i = 0; i < d.size(); ++i) d[i] -= proj * cur.u.values[i];
        double slope = cur.u.grid->inner(cg.tangent, d);
        if (!(slope > 0.0)) throw SolverError("descent direction lost positivity");

        bool accepted_step = false;
        const double energy_floor = 1e-14 * (1.0 + std::abs(cur.E));
        for (int bt = 0; bt < 60; ++bt) {
            RadialProfile trial;
            trial.grid = cur.u.grid;
            trial.values.resize(d.size());
            for (size_t i = 0; i < d.size(); ++i)
                trial.values[i] = cur.u.values[i] - tau * d[i];
            trial.values.back() = 0.0;
            normalize_mass(trial, a);
            bool project_now = (cfg.cadence <= 1) || ((accepted + 1) % cfg.cadence == 0);
            RadialProfile cand;
            try {
                cand = project_now ? fiber_project(trial, params, to_plus) : std::move(trial);
            } catch (const GeometryError&) {
                tau *= cfg.backtrack;
                continue;
            }
            Iterate next = evaluate(std::move(cand), params);
            if (next.E <= cur.E - cfg.armijo * tau * slope ||
                (tau * slope < energy_floor && next.E <= cur.E + energy_floor)) {
                cur = std::move(next);
                accepted_step = true;
                ++accepted;
                break;
            }
            tau *= cfg.backtrack;
        }

        if (!accepted_step) {
            // Progress exhausted at roundoff level.
            if (gnorm <= 1e3 * tol_eff) {
                converged = true;
                rep.iterations = accepted;
                break;
            }
            if (++stalled > 3) throw SolverError("not converged: line search stalled");
            tau = cfg.step0;
            continue;
        }
        stalled = 0;
        tau = std::min(tau * 2.0, 1e6);

        if (cfg.record_trace) rep.energy_trace.push_back(cur.E);

        if (to_plus) {
            if (std::sqrt(cur.q.dd) >= disk_radius) {
                if (++outside_disk > 50) throw SolverError("left admissible disk");
            } else {
                outside_disk = 0;
            }
        }
    }
    if (!converged) throw SolverError("not converged: max_iter reached");

    // Land exactly on the Pohozaev set and refresh the report quantities.
    cur = evaluate(fiber_project(cur.u, params, to_plus), params);
    ConstrainedGradient cg = constrained_gradient(cur.u, params.mu, params.p);
    double theta = std::max(1.0, -cg.lambda);
    ShiftedBilapSolver pre(*cur.u.grid, theta);
    std::vector<double> d(cg.tangent.size());
    pre.solve(cg.tangent, d);

    rep.profile = cur.u;
    rep.quadruple = cur.q;
    rep.energy = cur.E;
    rep.lambda = cg.lambda;
    rep.pohozaev_residual = pohozaev(cur.q, params.mu, params.gamma_p);
    rep.grad_norm = std::sqrt(std::max(0.0, cur.u.grid->inner(cg.tangent, d)));
    rep.grad_tol_effective = cfg.tol_grad * std::max(1.0, std::abs(cur.E));
    rep.manifold_class = classify(cur.q, params.mu, params.p, params.gamma_p, cfg.tol_pohozaev);
    rep.truncation_flag_ok = truncation_ok(cur.u);
    rep.mass_error = std::abs(std::sqrt(cur.q.mm) - a) / a;
    if (std::abs(rep.pohozaev_residual) > cfg.tol_pohozaev * (1.0 + cur.q.dd))
        throw SolverError("not converged: Pohozaev residual above tolerance");
    return rep;
}

}  // namespace

RadialProfile project_plus(const RadialProfile& u, const ProblemParams& params) {
    return fiber_project(u, params, true);
}

RadialProfile project_minus(const RadialProfile& u, const ProblemParams& params) {
    return fiber_project(u, params, false);
}

SolveReport solve_ground(const ProblemParams& params, const GNConstant& gn,
                         const SolverConfig& cfg, GridPtr grid, const RadialProfile* u0) {
    if (!thresholds(params, gn).admissible_min_flag)
        throw HypothesisError("solve_ground: admissibility threshold violated");
    return run_descent(params, gn, cfg, std::move(grid), u0, Branch::GroundLocalMin);
}

SolveReport solve_mountain_pass(const ProblemParams& params, const GNConstant& gn,
                                const SolverConfig& cfg, GridPtr grid,
                                const RadialProfile* u0) {
    if (params.mu > 0.0 && !thresholds(params, gn).admissible_min_flag)
        throw HypothesisError("solve_mountain_pass: admissibility threshold violated");
    Branch b = params.mu == 0.0 ? Branch::LimitMuZero : Branch::MountainPass;
    return run_descent(params, gn, cfg, std::move(grid), u0, b);
}

SolveReport solve_limit(const ProblemParams& params, const GNConstant& gn,
                        const SolverConfig& cfg, GridPtr grid, const RadialProfile* u0) {
    if (params.mu != 0.0) throw HypothesisError("solve_limit: requires mu = 0");
    return run_descent(params, gn, cfg, std::move(grid), u0, Branch::LimitMuZero);
}

MultistartResult solve_mountain_pass_multistart(const ProblemParams& params,
                                                const GNConstant& gn, const SolverConfig& cfg,
                                                GridPtr grid, int starts, std::uint64_t seed) {
    MultistartResult out;
    out.attempted = starts;
    std::optional<SolveReport> best;
    for (int j = 0; j < starts; ++j) {
        std::mt19937_64 rng(seed + 1000003ULL * j);
        RadialProfile u0 = random_mass_profile(grid, params.a, rng);
        try {
            SolveReport rep = solve_mountain_pass(params, gn, cfg, grid, &u0);
            out.energies.push_back(rep.energy);
            ++out.converged;
            if (!best || rep.energy < best->energy) best = std::move(rep);
        } catch (const std::exception&) {
            // recorded as a non-converged start
        }
    }
    if (!best) throw SolverError("multistart: no start converged");
    double lo = *std::min_element(out.energies.begin(), out.energies.end());
    double hi = *std::max_element(out.energies.begin(), out.energies.end());
    out.spread = (hi - lo) / std::max(std::abs(lo), 1e-300);
    out.best = std::move(*best);
    return out;
}

double weinstein_quotient(const NormQuadruple& q, int N, double p) {
    double gamma_p = derive_exponents(N, p).gamma_p;
    return q.pp /
           (std::pow(q.mm, 0.5 * p * (1.0 - gamma_p)) * std::pow(q.dd, 0.5 * p * gamma_p));
}

namespace {

// Re-gauge to mm = dd = 1: dilate so dd = mm, then scale the amplitude.
RadialProfile regauge(const RadialProfile& u, double p) {
    NormQuadruple q = norm_quadruple(u, p);
    double s = 0.25 * std::log(q.mm / q.dd);
    RadialProfile v = dilate_rescaled(u, s);
    NormQuadruple q2 = norm_quadruple(v, p);
    double c = 1.0 / std::sqrt(q2.mm);
    for (double& x : v.values) x *= c;
    return v;
}

double estimate_on_grid(int N, double p, GridPtr grid, int max_iter) {
    const double gamma_p = derive_exponents(N, p).gamma_p;
    const double alpha = 0.5 * p * (1.0 - gamma_p);
    const double beta = 0.5 * p * gamma_p;

    RadialProfile u = make_profile(grid, [](double r) { return std::exp(-r * r); });
    u = regauge(u, p);

    double quot = weinstein_quotient(norm_quadruple(u, p), N, p);
    double tau = 1.0;
    int plateau = 0;
    for (int iter = 0; iter < max_iter; ++iter) {
        const RadialGrid& g = *u.grid;
        const int n = g.n();
        NormQuadruple q = norm_quadruple(u, p);
        std::vector<double> bilap(n);
        apply_bilap(g, u.values, bilap);
        std::vector<double> grad(n);
        for (int i = 0; i < n; ++i) {
            double absu = std::abs(u.values[i]);
            double nl = (absu == 0.0) ? 0.0 : std::pow(absu, p - 2.0) * u.values[i];
            grad[i] = p * nl / q.pp - 2.0 * alpha * u.values[i] / q.mm -
                      2.0 * beta * bilap[i] / q.dd;
        }
        grad[n - 1] = 0.0;
        ShiftedBilapSolver pre(g, 1.0);
        std::vector<double> d(n);
        pre.solve(grad, d);
        double slope = g.inner(grad, d);
        if (slope <= 0.0) break;

        bool stepped = false;
        for (int bt = 0; bt < 50; ++bt) {
            RadialProfile trial;
            trial.grid = u.grid;
            trial.values.resize(n);
            for (int i = 0; i < n; ++i) trial.values[i] = u.values[i] + tau * d[i];
            trial.values.back() = 0.0;
            RadialProfile cand = regauge(trial, p);
            double qt = weinstein_quotient(norm_quadruple(cand, p), N, p);
            if (qt > quot * (1.0 + 1e-16)) {
                double gain = (qt - quot) / quot;
                u = std::move(cand);
                quot = qt;
                stepped = true;
                plateau = (gain < 1e-13) ? plateau + 1 : 0;
                break;
            }
            tau *= 0.5;
        }
        if (!stepped) ++plateau;
        if (plateau > 8) break;
        tau = std::min(tau * 2.0, 1e4);
    }
    return quot;
}

}  // namespace

GNConstant gn_constant_estimate(int N, double p, int nodes, double rmax, int max_iter) {
    GridPtr coarse = share(make_graded_grid(N, rmax, nodes));
    GridPtr fine = share(make_graded_grid(N, rmax, 2 * nodes));
    double q_coarse = estimate_on_grid(N, p, coarse, max_iter);
    double q_fine = estimate_on_grid(N, p, fine, max_iter);
    GNConstant gn;
    gn.c_np = std::pow(q_fine, 1.0 / p);
    gn.provenance = GNProvenance::Estimated;
    gn.refinement_delta =
        std::abs(std::pow(q_coarse, 1.0 / p) - gn.c_np) / gn.c_np;
    return gn;
}

RadialProfile random_mass_profile(GridPtr grid, double a, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        double c[3], al[3], b[3];
        for (int j = 0; j < 3; ++j) {
            c[j] = 2.0 * u01(rng) - 1.0;
            al[j] = std::exp(std::log(0.05) + u01(rng) * (std::log(3.0) - std::log(0.05)));
            b[j] = 0.8 * u01(rng) - 0.4;
        }
        RadialProfile u = make_profile(grid, [&](double r) {
            double v = 0.0;
            for (int j = 0; j < 3; ++j)
                v += c[j] * (1.0 + b[j] * r * r) * std::exp(-al[j] * r * r);
            return v;
        });
        double mm = u.grid->inner(u.values, u.values);
        if (mm > 1e-6) {
            double f = a / std::sqrt(mm);
            for (double& v : u.values) v *= f;
            return u;
        }
    }
    throw SolverError("random_mass_profile: degenerate draw");
}

}  // namespace bnls
