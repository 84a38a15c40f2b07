#include "bnls/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "bnls/harness.hpp"
#include "bnls/io.hpp"

namespace bnls {

namespace {

namespace fs = std::filesystem;

std::string gn_cache_key(const RunConfig& cfg) {
    return "N=" + std::to_string(cfg.N) + ";p=" + format_g17(cfg.p) +
           ";grid=" + format_g17(cfg.grid.rmax) + ":" + std::to_string(cfg.grid.nodes) + ":" +
           format_g17(cfg.grid.grading_eps) + ":" + format_g17(cfg.grid.grading_beta);
}

bool gn_cache_lookup(const std::string& path, const std::string& key, GNConstant& gn) {
    std::ifstream in(path);
    if (!in) return false;
    nlohmann::json j;
    try {
        in >> j;
    } catch (...) {
        return false;
    }
    if (!j.contains(key)) return false;
    gn.c_np = j[key]["c_np"].get<double>();
    gn.refinement_delta = j[key]["refinement_delta"].get<double>();
    gn.provenance = GNProvenance::Estimated;
    return true;
}

void gn_cache_store(const std::string& path, const std::string& key, const GNConstant& gn) {
    nlohmann::json j;
    {
        std::ifstream in(path);
        if (in) {
            try {
                in >> j;
            } catch (...) {
                j = nlohmann::json::object();
            }
        }
    }
    j[key] = {{"c_np", gn.c_np}, {"refinement_delta", gn.refinement_delta}};
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

JsonWriter config_json(const RunConfig& cfg) {
    JsonWriter j;
    for (const auto& line : dump_config(cfg)) {
        auto eq = line.find(" = ");
        j.put(line.substr(0, eq), line.substr(eq + 3));
    }
    return j;
}

JsonWriter quadruple_json(const NormQuadruple& q) {
    JsonWriter j;
    j.put("dd", q.dd).put("gg", q.gg).put("pp", q.pp).put("mm", q.mm);
    return j;
}

JsonWriter report_json(const SolveReport& rep, const RunConfig& cfg,
                       const ProblemParams& params, const GNConstant& gn,
                       const std::string& profile_path) {
    JsonWriter j;
    j.put("branch", to_string(rep.branch));
    j.put("energy", rep.energy);
    j.put("lambda", rep.lambda);
    j.put("pohozaev_residual", rep.pohozaev_residual);
    j.put("grad_norm", rep.grad_norm);
    j.put("grad_tol_effective", rep.grad_tol_effective);
    j.put("iterations", rep.iterations);
    j.put("manifold_class", to_string(rep.manifold_class));
    j.put("mass_error", rep.mass_error);
    j.put("truncation_ok", rep.truncation_flag_ok);
    j.put_object("quadruple", quadruple_json(rep.quadruple));
    j.put("a", params.a);
    j.put("mu", params.mu);
    j.put("gamma_p", params.gamma_p);
    j.put("gn_c_np", gn.c_np);
    j.put("gn_provenance",
          gn.provenance == GNProvenance::Estimated ? "estimated" : "user-supplied");
    j.put("profile_file", profile_path);
    j.put_object("config", config_json(cfg));
    return j;
}

void ensure_outdir(const RunConfig& cfg) { fs::create_directories(cfg.output_dir); }

ProfileHeader header_for(const ProblemParams& params, double lambda, const char* branch) {
    ProfileHeader h;
    h.N = params.N;
    h.p = params.p;
    h.a = params.a;
    h.mu = params.mu;
    h.lambda = lambda;
    h.branch = branch;
    return h;
}

}  // namespace

ResolvedProblem resolve_problem(const RunConfig& cfg) {
    ResolvedProblem rp;
    if (cfg.gn_estimate) {
        ensure_outdir(cfg);
        std::string cache = cfg.output_dir + "/gn_cache.json";
        std::string key = gn_cache_key(cfg);
        if (gn_cache_lookup(cache, key, rp.gn)) {
            rp.gn_cache_hit = true;
        } else {
            rp.gn = gn_constant_estimate(cfg.N, cfg.p, cfg.grid.nodes / 2, cfg.grid.rmax);
            gn_cache_store(cache, key, rp.gn);
        }
    } else {
        if (!(cfg.gn_value > 0.0)) throw ConfigError("config: gn.value must be positive", "gn.value");
        rp.gn.c_np = cfg.gn_value;
        rp.gn.provenance = GNProvenance::UserSupplied;
    }

    double a = cfg.a;
    if (cfg.a_fraction > 0.0) {
        if (!(cfg.mu > 0.0))
            throw ConfigError("config: problem.a_fraction requires mu > 0", "problem.a_fraction");
        // Solve mu^{p g - 2} a^{p-2} = fraction * min threshold for a.
        Exponents e = derive_exponents(cfg.N, cfg.p);
        ProblemParams probe = make_params(cfg.N, cfg.p, 1.0, cfg.mu);
        Thresholds th = thresholds(probe, rp.gn);
        double min3 = std::min({th.c_tilde, th.c_upper, th.c_lower});
        double lhs_pow_mu = std::pow(cfg.mu, cfg.p * e.gamma_p - 2.0);
        a = std::pow(cfg.a_fraction * min3 / lhs_pow_mu, 1.0 / (cfg.p - 2.0));
    }
    rp.params = make_params(cfg.N, cfg.p, a, cfg.mu);
    return rp;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
    ResolvedProblem rp = resolve_problem(cfg);
    const ProblemParams& pm = rp.params;
    Thresholds th = thresholds(pm, rp.gn);

    JsonWriter j;
    j.put("N", pm.N).put("p", pm.p).put("a", pm.a).put("mu", pm.mu);
    j.put("gamma_p", pm.gamma_p).put("p_bar", pm.p_bar).put("p_star4", pm.p_star4);
    j.put("c_np", rp.gn.c_np);
    j.put("c_tilde", th.c_tilde).put("c_upper", th.c_upper).put("c_lower", th.c_lower);
    j.put("admissible", th.admissible_min_flag);
    j.put("admissibility_ratio", th.admissibility_ratio);

    out << "exponents: gamma_p=" << format_g17(pm.gamma_p) << " p_bar=" << format_g17(pm.p_bar)
        << " p_star4=" << format_g17(pm.p_star4) << "\n";
    out << "thresholds: c_tilde=" << format_g17(th.c_tilde)
        << " c_upper=" << format_g17(th.c_upper) << " c_lower=" << format_g17(th.c_lower)
        << "\n";
    out << "admissibility: " << (th.admissible_min_flag ? "admissible" : "inadmissible")
        << " (ratio " << format_g17(th.admissibility_ratio) << ")\n";

    if (th.admissible_min_flag && pm.mu > 0.0) {
        Landscape L = landscape_h(pm, rp.gn);
        LandscapeTilde Lt = landscape_h_tilde(pm, rp.gn);
        RescaleConstants rc = rescale_constants(pm);
        MultiplierBounds mb = multiplier_bounds(pm, rp.gn);
        j.put("t_bar", L.t_bar).put("r0", L.r0).put("r1", L.r1);
        j.put("t_max", L.t_max).put("h_max", L.h_max);
        j.put("tau_tilde", Lt.tau_tilde).put("r0_tilde", Lt.r0_tilde).put("r1_tilde", Lt.r1_tilde);
        j.put("a_tilde", rc.a_tilde).put("b_tilde", rc.b_tilde)
            .put("c_tilde_mass", rc.c_tilde_mass);
        j.put("lambda_upper", mb.upper).put("lambda_lower", mb.lower);
        out << "landscape: mu*a=" << format_g17(pm.mu * pm.a) << " r0=" << format_g17(L.r0)
            << " t_bar=" << format_g17(L.t_bar) << " r1=" << format_g17(L.r1)
            << " h_max=" << format_g17(L.h_max) << "\n";
        out << "multiplier window: (" << format_g17(mb.lower) << ", " << format_g17(mb.upper)
            << ")\n";
    } else {
        out << "landscape: no positive window (inadmissible or mu = 0)\n";
    }
    j.put_object("config", config_json(cfg));
    ensure_outdir(cfg);
    write_text_file(cfg.output_dir + "/constants.json", j.str() + "\n");
    return 0;
}

int cmd_solve(const RunConfig& cfg, const std::string& branch, std::ostream& out) {
    RunConfig local = cfg;
    if (branch == "limit" && cfg.mu != 0.0) {
        out << "warning: limit branch ignores problem.mu = " << format_g17(cfg.mu) << "\n";
        local.mu = 0.0;
    }
    ResolvedProblem rp = resolve_problem(local);
    SolverConfig scfg = local.solver;
    scfg.seed = local.seed;

    GridPtr grid = share(build_grid(local.N, local.grid));
    SolveReport rep;
    if (branch == "ground") {
        rep = solve_ground(rp.params, rp.gn, scfg, grid);
    } else if (branch == "mp") {
        rep = solve_mountain_pass(rp.params, rp.gn, scfg, grid);
    } else if (branch == "limit") {
        rep = solve_limit(rp.params, rp.gn, scfg, grid);
    } else {
        throw ConfigError("solve: unknown branch '" + branch + "'");
    }

    ensure_outdir(local);
    std::string profile_path = local.output_dir + "/profile_" + branch + ".txt";
    write_profile(profile_path, rep.profile,
                  header_for(rp.params, rep.lambda, to_string(rep.branch)), dump_config(local));
    std::string report_path = local.output_dir + "/report_" + branch + ".json";
    write_text_file(report_path,
                    report_json(rep, local, rp.params, rp.gn, profile_path).str() + "\n");

    out << "branch=" << to_string(rep.branch) << " energy=" << format_g17(rep.energy)
        << " lambda=" << format_g17(rep.lambda)
        << " pohozaev=" << format_g17(rep.pohozaev_residual)
        << " grad=" << format_g17(rep.grad_norm) << " iters=" << rep.iterations << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::ostream& out) {
    if (values.empty()) throw ConfigError("sweep: empty values list");
    if (axis != "mu" && axis != "a") throw ConfigError("sweep: axis must be mu or a");

    ResolvedProblem rp = resolve_problem(cfg);
    SolverConfig scfg = cfg.solver;
    scfg.seed = cfg.seed;
    GridPtr grid = share(build_grid(cfg.N, cfg.grid));

    SweepResult res = (axis == "mu")
                          ? sweep_mu(rp.params, rp.gn, scfg, values, grid, cfg.workers)
                          : sweep_a(rp.params, rp.gn, scfg, values, grid, cfg.workers);

    ensure_outdir(cfg);
    std::vector<std::string> prov = dump_config(cfg);
    prov.insert(prov.begin(), "bnls sweep axis=" + axis);
    std::string path = cfg.output_dir + "/sweep_" + axis + ".csv";
    write_csv(path, res.columns, res.rows, prov);

    // Plot-data companion: per-column blocks of (parameter, value) pairs.
    std::string plot;
    for (size_t c = 1; c + 1 < res.columns.size(); ++c) {
        plot += "# column " + res.columns[c] + "\n";
        for (const auto& row : res.rows)
            plot += format_g17(row[0]) + " " + format_g17(row[c]) + "\n";
        plot += "\n";
    }
    write_text_file(cfg.output_dir + "/sweep_" + axis + "_plot.txt", plot);

    out << "sweep axis=" << axis << " points=" << values.size()
        << " failed=" << res.failed_points << " -> " << path << "\n";
    for (size_t i = 0; i < res.row_errors.size(); ++i)
        if (!res.row_errors[i].empty())
            out << "  point " << format_g17(values[i]) << ": " << res.row_errors[i] << "\n";
    return 0;
}

int cmd_witness(const RunConfig& cfg, std::ostream& out) {
    ResolvedProblem rp = resolve_problem(cfg);
    if (!(rp.params.p < 4.0)) throw HypothesisError("witness: requires p < 4");

    auto w = find_witness(rp.params, rp.gn);
    if (!w) throw SolverError("witness: bound not achieved for any m <= 1024");

    ensure_outdir(cfg);
    std::string profile_path = cfg.output_dir + "/witness_profile.txt";
    write_profile(profile_path, w->profile, header_for(rp.params, 0.0, "witness"),
                  dump_config(cfg));
    JsonWriter j;
    j.put("m", w->m);
    j.put("phi0_value", w->phi0_value);
    j.put("mass_sq", w->mass_sq);
    j.put("dd_norm", w->dd_norm);
    j.put("residual_sq", w->residual_sq);
    j.put("bound_margin", w->bound_margin);
    j.put("implied_upper_bound", w->implied_upper_bound);
    j.put("trivial_upper_bound", -rp.params.a * rp.params.a * rp.params.mu * rp.params.mu / 8.0);
    j.put("tau_tilde", w->tau_tilde);
    j.put("profile_file", profile_path);
    j.put_object("config", config_json(cfg));
    write_text_file(cfg.output_dir + "/witness.json", j.str() + "\n");

    out << "witness m=" << format_g17(w->m) << " phi0=" << format_g17(w->phi0_value)
        << " margin=" << format_g17(w->bound_margin)
        << " implied m_r upper bound=" << format_g17(w->implied_upper_bound) << "\n";
    return 0;
}

int cmd_gn(const RunConfig& cfg, std::ostream& out) {
    RunConfig local = cfg;
    local.gn_estimate = true;
    ResolvedProblem rp = resolve_problem(local);
    out << "gn c_np=" << format_g17(rp.gn.c_np)
        << " refinement_delta=" << format_g17(rp.gn.refinement_delta)
        << " cache=" << (rp.gn_cache_hit ? "hit" : "miss") << "\n";
    JsonWriter j;
    j.put("c_np", rp.gn.c_np);
    j.put("refinement_delta", rp.gn.refinement_delta);
    j.put("provenance", "estimated");
    j.put("cache_hit", rp.gn_cache_hit);
    j.put_object("config", config_json(local));
    ensure_outdir(local);
    write_text_file(local.output_dir + "/gn.json", j.str() + "\n");
    return 0;
}

int run_command(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisError& e) {
        err << "hypothesis error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace bnls
