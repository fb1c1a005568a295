#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace triplelab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitConfigError = 2;

struct RunConfig {
  std::string command;
  std::string factor_spec_path;
  std::string map_spec_path;  // optional; a random automorphism is used when empty
  std::string property = "all";
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";  // json | text | csv (ttp-table only)
  unsigned threads = 1;
};

/// Runs one subcommand and writes its report to `out`. Returns 0 when every
/// verdict passes, 1 on a property failure and 2 on a configuration error
/// (diagnostics go to `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including TRIPLE_LAB_TOL) and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace triplelab::cli
