#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nmsqueeze::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv };

struct CliConfig {
  std::string command;
  int n = 2;
  double lambda = 0.0;
  bool lambda_given = false;
  int cutoff = 0;  // 0 picks a default per mode count
  bool oracle = false;
  int l_max = 12;
  std::string axes = "q1,q2";
  std::string range_a = "-2,2";
  std::string range_b = "-2,2";
  std::string steps = "41";
  std::vector<std::string> fixed;  // "name=value"
  Format format = Format::json;
  std::string output;
  std::optional<double> tol;
};

/// Parses `args` (without the program name) and runs the chosen command.
/// Returns the process exit status: 0 success, 1 failed check, 2 usage or
/// validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmsqueeze::cli
