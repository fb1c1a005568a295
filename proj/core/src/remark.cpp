#include "triplelab/remark.hpp"

#include <cmath>

#include "triplelab/error.hpp"
#include "triplelab/ttp.hpp"

namespace triplelab {

namespace {

Element m2(const AtomicTriple& t, double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return t.embed(0, m);
}

Report value_check(const std::string& name, Complex computed, double expected, double threshold) {
  Report r(name, threshold);
  r.trials = 1;
  r.values["computed"] = computed.real();
  if (computed.imag() != 0.0) r.values["computed_imag"] = computed.imag();
  r.values["expected"] = expected;
  r.record(std::abs(computed - expected), {{"computed", computed.real()}, {"expected", expected}});
  return r;
}

}  // namespace

double remark_gap_squared() { return (1.0 + 2.0 * std::sqrt(2.0)) / (3.0 * std::sqrt(2.0)); }

RemarkData remark_data() {
  RemarkData d;
  const AtomicTriple& t = d.triple;
  const double r2 = std::sqrt(2.0);
  d.s = std::sqrt(3.0 - r2) / (3.0 * r2);
  // β, γ > 0 with βγ = s/2 and β² + γ² = Σ: (β ± γ)² = Σ ± s.
  const double sigma = 0.75 - d.s * d.s;
  const double plus = std::sqrt(sigma + d.s);
  const double minus = std::sqrt(sigma - d.s);
  d.beta = 0.5 * (plus + minus);
  d.gamma = 0.5 * (plus - minus);

  const double r718 = std::sqrt(7.0 / 18.0);
  const double r119 = std::sqrt(119.0);
  d.e = m2(t, 1.0, 0.0, 0.0, 0.0);
  d.v = m2(t, 1.0 / 3.0, 1.0 / 3.0, r718, r718);
  d.vt = m2(t, 1.0 / 3.0, 0.25, r119 / 15.0, r119 / 20.0);
  d.u = m2(t, 0.5, d.beta, d.gamma, d.s);
  return d;
}

Report verify_remark_counterexamples(const Tolerance& tol) {
  const RemarkData d = remark_data();
  const AtomicTriple& t = d.triple;
  Report out("remark_counterexamples", 0.0);
  out.trials = 1;

  Report minimal("all_minimal_tripotents", 0.0);
  minimal.trials = 4;
  std::vector<Tripotent> trips;
  const char* names[] = {"e", "v", "vt", "u"};
  const Element* elems[] = {&d.e, &d.v, &d.vt, &d.u};
  for (int k = 0; k < 4; ++k) {
    try {
      Tripotent tr(t, *elems[k], tol);
      minimal.record(tr.minimal() ? 0.0 : 1.0, {{"element", names[k]}, {"reason", "not minimal"}});
      trips.push_back(std::move(tr));
    } catch (const Error& ex) {
      minimal.abort_trial({{"element", names[k]}, {"reason", ex.what()}});
    }
  }
  out.checks.push_back(minimal);
  if (trips.size() != 4) return out;
  const Tripotent& e = trips[0];
  const Tripotent& v = trips[1];
  const Tripotent& vt = trips[2];
  const Tripotent& u = trips[3];

  const double target = remark_gap_squared();
  const Complex ttp_v = ttp(t, v, e);
  const Complex ttp_vt = ttp(t, vt, e);
  const Complex ttp_u = ttp(t, u, e);
  const double gap_v = std::pow(gap_distance(t, d.e, d.v), 2);
  const double gap_vt = std::pow(gap_distance(t, d.e, d.vt), 2);
  const double gap_u = std::pow(gap_distance(t, d.e, d.u), 2);

  out.checks.push_back(value_check("ttp_v_e", ttp_v, 1.0 / 3.0, 1e-12));
  out.checks.push_back(value_check("ttp_vt_e", ttp_vt, 1.0 / 3.0, 1e-12));
  out.checks.push_back(value_check("ttp_u_e", ttp_u, 0.5, 1e-12));
  out.checks.push_back(value_check("gap_squared_e_v", gap_v, target, 1e-9));
  out.checks.push_back(value_check("gap_squared_e_u", gap_u, target, 1e-9));
  out.checks.push_back(value_check("gap_squared_e_vt", gap_vt, 21.0 / 20.0, 1e-9));
  out.checks.push_back(value_check("gap_formula_e_v", std::pow(gap_formula(t, e, v, tol), 2), target, 1e-9));
  out.checks.push_back(value_check("gap_formula_e_u", std::pow(gap_formula(t, e, u, tol), 2), target, 1e-9));
  out.checks.push_back(value_check("gap_formula_e_vt", std::pow(gap_formula(t, e, vt, tol), 2), 21.0 / 20.0, 1e-9));
  out.checks.push_back(value_check("beta_gamma", d.beta * d.gamma, d.s / 2.0, 1e-12));
  out.checks.push_back(value_check("beta2_plus_gamma2", d.beta * d.beta + d.gamma * d.gamma,
                                   0.75 - (3.0 - std::sqrt(2.0)) / 18.0, 1e-12));

  Report distinct("equal_ttp_different_gap", 0.0);
  distinct.trials = 1;
  distinct.record(std::abs(gap_v - gap_vt) > 1e-6 ? 0.0 : 1.0, {{"gap_v", gap_v}, {"gap_vt", gap_vt}});
  out.checks.push_back(distinct);

  out.values["ttp_v_e"] = ttp_v.real();
  out.values["ttp_vt_e"] = ttp_vt.real();
  out.values["ttp_u_e"] = ttp_u.real();
  out.values["gap_squared_e_v"] = gap_v;
  out.values["gap_squared_e_vt"] = gap_vt;
  out.values["gap_squared_e_u"] = gap_u;
  out.values["gap_squared_target"] = target;
  out.values["beta"] = d.beta;
  out.values["gamma"] = d.gamma;
  out.values["beta_gamma"] = d.beta * d.gamma;
  out.values["s"] = d.s;
  return out;
}

}  // namespace triplelab
