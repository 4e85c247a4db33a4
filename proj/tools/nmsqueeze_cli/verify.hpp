#pragma once

#include <string>
#include <vector>

#include "nmsqueeze_cli/cli.hpp"

namespace nmsqueeze::cli {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const;
};

/// Default Fock cutoff for the oracle checks at mode count n.
int default_cutoff(int n);

/// Every analytic self-consistency check for (n, lambda); Fock oracle checks
/// are appended when config.oracle is set. A tolerance override in
/// config.tol replaces every per-check tolerance.
std::vector<Check> run_checks(const CliConfig& config);

}  // namespace nmsqueeze::cli
