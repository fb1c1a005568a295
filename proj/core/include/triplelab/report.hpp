#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace triplelab {

inline constexpr std::size_t kMaxWitnesses = 10;

/// Outcome of a sampled property check. The verdict is pass iff the largest
/// violation stays within the threshold, no trial was aborted, and every
/// nested check passes.
struct Report {
  std::string property;
  std::size_t trials = 0;
  double max_violation = 0.0;
  double threshold = 0.0;
  std::size_t aborted = 0;
  std::vector<nlohmann::json> witnesses;
  std::map<std::string, double> values;
  std::vector<Report> checks;
  nlohmann::json details;

  Report() = default;
  Report(std::string name, double thresh) : property(std::move(name)), threshold(thresh) {}

  /// Folds one trial's violation into the report; NaN counts as +inf.
  /// `witness` is kept (up to the cap) when the violation exceeds the threshold.
  void record(double violation, const nlohmann::json& witness = nullptr);
  /// Counts an aborted trial and keeps its witness.
  void abort_trial(const nlohmann::json& witness);
  void add_witness(const nlohmann::json& witness);

  bool pass() const;
  std::string verdict() const { return pass() ? "pass" : "fail"; }
};

nlohmann::json to_json(const Report& r);
/// Terse human-readable rendering, one line per check.
std::string to_text(const Report& r, int indent = 0);

}  // namespace triplelab
