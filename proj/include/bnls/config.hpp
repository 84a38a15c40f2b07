#ifndef BNLS_CONFIG_HPP
#define BNLS_CONFIG_HPP

// Line-oriented "key = value" run configuration with dotted section paths.
// Unknown keys are errors. Environment variables BNLS_<SECTION>_<KEY>
// (uppercase, dots to underscores) are applied first and have the lowest
// precedence; the file overrides them, command-line flags override both.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnls/solve.hpp"

namespace bnls {

struct ConfigError : std::runtime_error {
    std::string key;
    int line = 0;
    ConfigError(const std::string& msg, std::string k = "", int ln = 0)
        : std::runtime_error(msg), key(std::move(k)), line(ln) {}
};

struct GridSpec {
    double rmax = 40.0;
    int nodes = 4096;
    double grading_eps = 0.1;
    double grading_beta = 8.0;
};

struct RunConfig {
    // problem block (N, p, mu and one of a / a_fraction are required)
    int N = 0;
    double p = 0.0;
    double a = 0.0;           // explicit mass, or
    double a_fraction = 0.0;  // mass from mu^{p g - 2} a^{p-2} = fraction * min threshold
    double mu = 0.0;

    GridSpec grid;
    SolverConfig solver;

    bool gn_estimate = true;  // gn.value = estimate | <number>
    double gn_value = 0.0;

    std::string output_dir = "out";
    std::vector<std::string> output_formats = {"json", "csv", "profile"};

    std::uint64_t seed = 42;
    int workers = 1;
};

/// Parse with env overlay; validates presence of the problem block.
RunConfig parse_config_file(const std::string& path);

/// Parse from text (no env overlay); used by tests and the round trip.
RunConfig parse_config_text(const std::string& text, bool apply_env = false);

/// Canonical "key = value" dump of every resolved key; re-parsing it yields
/// the same configuration.
std::vector<std::string> dump_config(const RunConfig& cfg);

RadialGrid build_grid(int N, const GridSpec& spec);

}  // namespace bnls

#endif
