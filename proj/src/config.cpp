#include "bnls/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bnls {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_num(const std::string& key, const std::string& v, int line) {
    try {
        size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (...) {
        throw ConfigError("config: bad numeric value for " + key + ": '" + v + "'", key, line);
    }
}

long parse_int(const std::string& key, const std::string& v, int line) {
    try {
        size_t pos = 0;
        long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (...) {
        throw ConfigError("config: bad integer value for " + key + ": '" + v + "'", key, line);
    }
}

struct KeySpec {
    const char* key;
    std::function<void(RunConfig&, const std::string&, int)> apply;
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        {"problem.N", [](RunConfig& c, const std::string& v, int ln) {
             c.N = static_cast<int>(parse_int("problem.N", v, ln));
         }},
        {"problem.p", [](RunConfig& c, const std::string& v, int ln) {
             c.p = parse_num("problem.p", v, ln);
         }},
        {"problem.a", [](RunConfig& c, const std::string& v, int ln) {
             c.a = parse_num("problem.a", v, ln);
         }},
        {"problem.a_fraction", [](RunConfig& c, const std::string& v, int ln) {
             c.a_fraction = parse_num("problem.a_fraction", v, ln);
         }},
        {"problem.mu", [](RunConfig& c, const std::string& v, int ln) {
             c.mu = parse_num("problem.mu", v, ln);
         }},
        {"grid.rmax", [](RunConfig& c, const std::string& v, int ln) {
             c.grid.rmax = parse_num("grid.rmax", v, ln);
         }},
        {"grid.nodes", [](RunConfig& c, const std::string& v, int ln) {
             c.grid.nodes = static_cast<int>(parse_int("grid.nodes", v, ln));
         }},
        {"grid.grading_eps", [](RunConfig& c, const std::string& v, int ln) {
             c.grid.grading_eps = parse_num("grid.grading_eps", v, ln);
         }},
        {"grid.grading_beta", [](RunConfig& c, const std::string& v, int ln) {
             c.grid.grading_beta = parse_num("grid.grading_beta", v, ln);
         }},
        {"solver.step0", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.step0 = parse_num("solver.step0", v, ln);
         }},
        {"solver.max_iter", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.max_iter = static_cast<int>(parse_int("solver.max_iter", v, ln));
         }},
        {"solver.tol_grad", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.tol_grad = parse_num("solver.tol_grad", v, ln);
         }},
        {"solver.tol_pohozaev", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.tol_pohozaev = parse_num("solver.tol_pohozaev", v, ln);
         }},
        {"solver.backtrack", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.backtrack = parse_num("solver.backtrack", v, ln);
         }},
        {"solver.armijo", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.armijo = parse_num("solver.armijo", v, ln);
         }},
        {"solver.cadence", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.cadence = static_cast<int>(parse_int("solver.cadence", v, ln));
         }},
        {"solver.multistart", [](RunConfig& c, const std::string& v, int ln) {
             c.solver.multistart = static_cast<int>(parse_int("solver.multistart", v, ln));
         }},
        {"gn.value", [](RunConfig& c, const std::string& v, int ln) {
             if (v == "estimate") {
                 c.gn_estimate = true;
                 c.gn_value = 0.0;
             } else {
                 c.gn_estimate = false;
                 c.gn_value = parse_num("gn.value", v, ln);
             }
         }},
        {"output.dir", [](RunConfig& c, const std::string& v, int) { c.output_dir = v; }},
        {"output.formats", [](RunConfig& c, const std::string& v, int) {
             c.output_formats.clear();
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ',')) {
                 item = trim(item);
                 if (!item.empty()) c.output_formats.push_back(item);
             }
         }},
        {"seed", [](RunConfig& c, const std::string& v, int ln) {
             c.seed = static_cast<std::uint64_t>(parse_int("seed", v, ln));
         }},
        {"workers", [](RunConfig& c, const std::string& v, int ln) {
             c.workers = static_cast<int>(parse_int("workers", v, ln));
         }},
    };
    return table;
}

std::string env_name(const std::string& key) {
    std::string s = "BNLS_";
    for (char ch : key) s += (ch == '.') ? '_' : static_cast<char>(std::toupper(ch));
    return s;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value, int line,
               std::map<std::string, bool>& seen) {
    for (const auto& spec : key_table()) {
        if (key == spec.key) {
            spec.apply(cfg, value, line);
            seen[key] = true;
            return;
        }
    }
    throw ConfigError("config: unknown key '" + key + "'", key, line);
}

void validate(const RunConfig& cfg, const std::map<std::string, bool>& seen) {
    for (const char* req : {"problem.N", "problem.p", "problem.mu"})
        if (!seen.count(req)) throw ConfigError("config: missing key " + std::string(req), req);
    if (!seen.count("problem.a") && !seen.count("problem.a_fraction"))
        throw ConfigError("config: missing key problem.a (or problem.a_fraction)", "problem.a");
    if (seen.count("problem.a") && seen.count("problem.a_fraction"))
        throw ConfigError("config: problem.a and problem.a_fraction are exclusive", "problem.a");
    if (cfg.grid.nodes < 64) throw ConfigError("config: grid.nodes too small", "grid.nodes");
    if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1", "workers");
    if (!(cfg.solver.tol_grad <= 1e-6) || !(cfg.solver.tol_pohozaev <= 1e-6))
        throw ConfigError("config: solver tolerances must be <= 1e-6", "solver.tol_grad");
}

RunConfig parse_stream(std::istream& in, bool apply_env) {
    RunConfig cfg;
    std::map<std::string, bool> seen;

    if (apply_env) {
        for (const auto& spec : key_table()) {
            const char* v = std::getenv(env_name(spec.key).c_str());
            if (v) apply_key(cfg, spec.key, trim(v), 0, seen);
        }
    }

    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(ln), "",
                              ln);
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        apply_key(cfg, key, value, ln, seen);
    }
    validate(cfg, seen);
    return cfg;
}

}  // namespace

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    return parse_stream(in, /*apply_env=*/true);
}

RunConfig parse_config_text(const std::string& text, bool apply_env) {
    std::istringstream in(text);
    return parse_stream(in, apply_env);
}

std::vector<std::string> dump_config(const RunConfig& cfg) {
    std::vector<std::string> out;
    auto add = [&](const std::string& k, const std::string& v) { out.push_back(k + " = " + v); };
    add("problem.N", std::to_string(cfg.N));
    add("problem.p", g17(cfg.p));
    if (cfg.a_fraction > 0.0)
        add("problem.a_fraction", g17(cfg.a_fraction));
    else
        add("problem.a", g17(cfg.a));
    add("problem.mu", g17(cfg.mu));
    add("grid.rmax", g17(cfg.grid.rmax));
    add("grid.nodes", std::to_string(cfg.grid.nodes));
    add("grid.grading_eps", g17(cfg.grid.grading_eps));
    add("grid.grading_beta", g17(cfg.grid.grading_beta));
    add("solver.step0", g17(cfg.solver.step0));
    add("solver.max_iter", std::to_string(cfg.solver.max_iter));
    add("solver.tol_grad", g17(cfg.solver.tol_grad));
    add("solver.tol_pohozaev", g17(cfg.solver.tol_pohozaev));
    add("solver.backtrack", g17(cfg.solver.backtrack));
    add("solver.armijo", g17(cfg.solver.armijo));
    add("solver.cadence", std::to_string(cfg.solver.cadence));
    add("solver.multistart", std::to_string(cfg.solver.multistart));
    add("gn.value", cfg.gn_estimate ? "estimate" : g17(cfg.gn_value));
    add("output.dir", cfg.output_dir);
    {
        std::string fm;
        for (size_t i = 0; i < cfg.output_formats.size(); ++i)
            fm += (i ? "," : "") + cfg.output_formats[i];
        add("output.formats", fm);
    }
    add("seed", std::to_string(cfg.seed));
    add("workers", std::to_string(cfg.workers));
    return out;
}

RadialGrid build_grid(int N, const GridSpec& spec) {
    return make_graded_grid(N, spec.rmax, spec.nodes, spec.grading_eps, spec.grading_beta);
}

}  // namespace bnls
