#ifndef BNLS_CLI_HPP
#define BNLS_CLI_HPP

// Subcommand implementations behind the bnls binary. Each returns the process
// exit code: 0 success/informational, 2 configuration or hypothesis error,
// 3 numerical non-convergence.

#include <iosfwd>
#include <string>
#include <vector>

#include "bnls/config.hpp"

namespace bnls {

int cmd_constants(const RunConfig& cfg, std::ostream& out);
int cmd_solve(const RunConfig& cfg, const std::string& branch, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const std::string& axis, const std::vector<double>& values,
              std::ostream& out);
int cmd_witness(const RunConfig& cfg, std::ostream& out);
int cmd_gn(const RunConfig& cfg, std::ostream& out);

/// Resolve the GN constant per the config (user value or cached estimate) and
/// the mass a (explicit or from a_fraction of the admissibility threshold).
struct ResolvedProblem {
    ProblemParams params;
    GNConstant gn;
    bool gn_cache_hit = false;
};

ResolvedProblem resolve_problem(const RunConfig& cfg);

/// Exception-to-exit-code mapping shared by main() and tests.
int run_command(const std::function<int()>& body, std::ostream& err);

}  // namespace bnls

#endif
