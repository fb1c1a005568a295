#include "triplelab/report.hpp"

#include <cmath>
#include <limits>
#include <iomanip>
#include <sstream>

namespace triplelab {

void Report::record(double violation, const nlohmann::json& witness) {
  if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
  violation = std::abs(violation);
  if (violation > max_violation) max_violation = violation;
  if (violation > threshold && !witness.is_null()) add_witness(witness);
}

void Report::abort_trial(const nlohmann::json& witness) {
  ++aborted;
  add_witness(witness);
}

void Report::add_witness(const nlohmann::json& witness) {
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness);
}

bool Report::pass() const {
  if (!(max_violation <= threshold) || aborted > 0) return false;
  for (const auto& c : checks) {
    if (!c.pass()) return false;
  }
  return true;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["property"] = r.property;
  j["trials"] = r.trials;
  // JSON has no infinity; a non-finite violation is written as a string.
  if (std::isfinite(r.max_violation)) j["max_violation"] = r.max_violation;
  else j["max_violation"] = "inf";
  j["threshold"] = r.threshold;
  j["verdict"] = r.verdict();
  j["witnesses"] = r.witnesses;
  if (r.aborted > 0) j["aborted"] = r.aborted;
  if (!r.values.empty()) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [k, v] : r.values) {
      if (std::isfinite(v)) values[k] = v;
      else values[k] = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    j["values"] = values;
  }
  if (!r.checks.empty()) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    j["checks"] = checks;
  }
  if (!r.details.is_null()) j["details"] = r.details;
  return j;
}

std::string to_text(const Report& r, int indent) {
  std::ostringstream os;
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  os << pad << (r.pass() ? "PASS " : "FAIL ") << r.property << "  trials=" << r.trials
     << "  max_violation=" << r.max_violation << "  threshold=" << r.threshold;
  if (r.aborted > 0) os << "  aborted=" << r.aborted;
  os << "\n";
  for (const auto& [k, v] : r.values) {
    os << pad << "  " << k << " = " << std::setprecision(17) << v << "\n";
  }
  for (const auto& c : r.checks) os << to_text(c, indent + 2);
  if (!r.pass()) {
    for (const auto& w : r.witnesses) os << pad << "  witness: " << w.dump() << "\n";
  }
  return os.str();
}

}  // namespace triplelab
