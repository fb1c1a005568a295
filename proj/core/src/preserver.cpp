#include "triplelab/preserver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "triplelab/error.hpp"
#include "triplelab/parallel.hpp"
#include "triplelab/random.hpp"
#include "triplelab/serialization.hpp"
#include "triplelab/ttp.hpp"

namespace triplelab {

namespace {

const Complex kI(0.0, 1.0);

struct Outcome {
  bool used = true;
  bool aborted = false;
  double violation = 0.0;
  double secondary = 0.0;
  int check = 0;  // which sub-check the trial feeds
  nlohmann::json witness;
};

// Φ(x) as a minimal tripotent of t_out, or nullopt with a reason.
std::optional<Tripotent> image_of(const ElementMap& phi, const AtomicTriple& t_out, const Element& x,
                                  std::string& reason) {
  try {
    Tripotent out(t_out, phi(x), Tolerance{1e-8, 1e-8});
    if (!out.minimal()) {
      reason = "image is not minimal";
      return std::nullopt;
    }
    return out;
  } catch (const Error& ex) {
    reason = ex.what();
    return std::nullopt;
  }
}

nlohmann::json pair_witness(const AtomicTriple& t, std::size_t trial, const std::string& mode,
                            const Element& e, const Element& v) {
  return {{"trial", trial}, {"mode", mode}, {"e", element_to_json(t, e)}, {"v", element_to_json(t, v)}};
}

Outcome aborted(nlohmann::json w, const std::string& reason) {
  Outcome o;
  o.aborted = true;
  w["error"] = "NotTripotentImage";
  w["reason"] = reason;
  o.witness = std::move(w);
  return o;
}

std::size_t other_summand(const AtomicTriple& t, std::size_t s, Rng& rng) {
  if (t.summand_count() == 1) return s;
  std::size_t r = rng.index(t.summand_count() - 1);
  return r >= s ? r + 1 : r;
}

// An orthogonal partner for e: inside its own summand when possible,
// otherwise in another summand.
std::optional<Tripotent> orthogonal_partner(const AtomicTriple& t, const Tripotent& e, std::size_t s,
                                            Rng& rng) {
  const bool cross = t.summand_count() > 1 && rng.uniform() < 0.5;
  if (!cross) {
    try {
      return sample_orthogonal_minimal(t, e, s, mix_seed(rng.index(1u << 30)));
    } catch (const Error&) {
    }
  }
  if (t.summand_count() > 1) {
    return sample_minimal_tripotent(t, other_summand(t, s, rng), mix_seed(rng.index(1u << 30)));
  }
  return std::nullopt;
}

template <class Trial>
std::vector<Outcome> run_trials(std::size_t trials, std::uint64_t seed, unsigned threads, Trial trial) {
  return run_indexed<Outcome>(trials, threads, [&](std::size_t i) {
    Rng rng(trial_seed(seed, i));
    return trial(i, rng);
  });
}

void fold(Report& r, const Outcome& o) {
  ++r.trials;
  if (o.aborted) r.abort_trial(o.witness);
  else r.record(o.violation, o.witness);
}

std::uint64_t draw_seed(Rng& rng) { return mix_seed(static_cast<std::uint64_t>(rng.index(1ull << 62))); }

}  // namespace

Report check_ttp_preservation(const ElementMap& phi, const AtomicTriple& t_in, const AtomicTriple& t_out,
                              std::size_t trials, std::uint64_t seed, const Tolerance& tol,
                              unsigned threads) {
  tol.validate();
  const std::size_t count = t_in.summand_count();
  auto outcomes = run_trials(trials, seed, threads, [&](std::size_t i, Rng& rng) {
    const std::size_t s = i % count;
    const int mode = static_cast<int>((i / count) % 3);
    Tripotent base = sample_minimal_tripotent(t_in, s, draw_seed(rng));
    std::optional<Tripotent> e, v;
    std::string mode_name;
    if (mode == 0) {
      mode_name = "same_summand";
      e = base;
      v = sample_minimal_tripotent(t_in, s, draw_seed(rng));
    } else if (mode == 1) {
      mode_name = "phase_multiple";
      e = Tripotent(t_in, rng.unit_phase() * base.element());
      v = base;
    } else {
      mode_name = "any_summand";
      e = base;
      v = sample_minimal_tripotent(t_in, rng.index(count), draw_seed(rng));
    }
    nlohmann::json w = pair_witness(t_in, i, mode_name, e->element(), v->element());
    std::string reason;
    auto pe = image_of(phi, t_out, e->element(), reason);
    if (!pe) return aborted(w, reason);
    auto pv = image_of(phi, t_out, v->element(), reason);
    if (!pv) return aborted(w, reason);
    const Complex before = ttp(t_in, *e, *v);
    const Complex after = ttp(t_out, *pe, *pv);
    Outcome o;
    o.violation = std::abs(after - before);
    w["ttp"] = complex_to_json(before);
    w["ttp_image"] = complex_to_json(after);
    o.witness = std::move(w);
    return o;
  });
  Report r("ttp_preservation", tol.abs_tol);
  for (const auto& o : outcomes) fold(r, o);
  return r;
}

Report check_orthogonality_preservation(const ElementMap& phi, const AtomicTriple& t_in,
                                        const AtomicTriple& t_out, std::size_t trials,
                                        std::uint64_t seed, const Tolerance& tol, unsigned threads) {
  tol.validate();
  const std::size_t count = t_in.summand_count();
  auto outcomes = run_trials(trials, seed, threads, [&](std::size_t i, Rng& rng) {
    const std::size_t s = i % count;
    Tripotent e = sample_minimal_tripotent(t_in, s, draw_seed(rng));
    std::optional<Tripotent> v;
    bool want_orthogonal = (i / count) % 2 == 0;
    if (want_orthogonal) v = orthogonal_partner(t_in, e, s, rng);
    if (!v) {
      want_orthogonal = false;
      v = sample_minimal_tripotent(t_in, s, draw_seed(rng));
    }
    nlohmann::json w = pair_witness(t_in, i, want_orthogonal ? "orthogonal" : "non_orthogonal",
                                    e.element(), v->element());
    std::string reason;
    auto pe = image_of(phi, t_out, e.element(), reason);
    if (!pe) return aborted(w, reason);
    auto pv = image_of(phi, t_out, v->element(), reason);
    if (!pv) return aborted(w, reason);
    const double before = t_in.norm(t_in.triple_product(e.element(), e.element(), v->element()));
    const double after =
        t_out.norm(t_out.triple_product(pe->element(), pe->element(), pv->element()));
    Outcome o;
    w["eev_norm"] = before;
    w["eev_norm_image"] = after;
    if (want_orthogonal) {
      o.check = 0;
      o.violation = after;
    } else {
      o.check = 1;
      // A non-orthogonal pair whose image is orthogonal is a flip.
      o.violation = (before > tol.abs_tol && after <= tol.abs_tol) ? 1.0 : 0.0;
    }
    o.witness = std::move(w);
    return o;
  });
  Report forward("orthogonal_pairs_stay_orthogonal", tol.abs_tol);
  Report backward("non_orthogonal_pairs_stay_non_orthogonal", tol.abs_tol);
  for (const auto& o : outcomes) fold(o.check == 0 ? forward : backward, o);
  Report r("orthogonality_preservation", tol.abs_tol);
  r.trials = trials;
  r.checks = {forward, backward};
  return r;
}

Report check_isometry_on_minimals(const ElementMap& phi, const AtomicTriple& t_in,
                                  const AtomicTriple& t_out, std::size_t trials, std::uint64_t seed,
                                  const Tolerance& tol, unsigned threads) {
  tol.validate();
  const std::size_t count = t_in.summand_count();
  auto outcomes = run_trials(trials, seed, threads, [&](std::size_t i, Rng& rng) {
    const std::size_t s = i % count;
    const int mode = static_cast<int>((i / count) % 3);
    Tripotent e = sample_minimal_tripotent(t_in, s, draw_seed(rng));
    std::optional<Tripotent> v;
    if (mode == 1) v = orthogonal_partner(t_in, e, s, rng);
    if (mode == 2) v = sample_minimal_tripotent(t_in, rng.index(count), draw_seed(rng));
    if (!v) v = sample_minimal_tripotent(t_in, s, draw_seed(rng));
    nlohmann::json w = pair_witness(t_in, i, mode == 1 ? "orthogonal" : (mode == 2 ? "any_summand" : "same_summand"),
                                    e.element(), v->element());
    std::string reason;
    auto pe = image_of(phi, t_out, e.element(), reason);
    if (!pe) return aborted(w, reason);
    auto pv = image_of(phi, t_out, v->element(), reason);
    if (!pv) return aborted(w, reason);
    const double before = gap_distance(t_in, e.element(), v->element());
    const double after = gap_distance(t_out, pe->element(), pv->element());
    Outcome o;
    o.violation = std::abs(after - before);
    o.secondary = t_out.norm(phi(-e.element()) + pe->element());
    w["distance"] = before;
    w["distance_image"] = after;
    w["antipodal_defect"] = o.secondary;
    o.witness = std::move(w);
    return o;
  });
  Report distances("distance_preservation", tol.abs_tol);
  Report antipodal("antipodal_preservation", tol.abs_tol);
  for (const auto& o : outcomes) {
    fold(distances, o);
    if (!o.aborted) {
      ++antipodal.trials;
      antipodal.record(o.secondary, o.witness);
    }
  }
  Report r("isometry_on_minimals", tol.abs_tol);
  r.trials = trials;
  r.checks = {distances, antipodal};
  return r;
}

Report check_collinearity_preservation(const ElementMap& phi, const AtomicTriple& t_in,
                                       const AtomicTriple& t_out, std::size_t trials,
                                       std::uint64_t seed, const Tolerance& tol, unsigned threads) {
  tol.validate();
  const std::size_t count = t_in.summand_count();
  auto outcomes = run_trials(trials, seed, threads, [&](std::size_t i, Rng& rng) {
    Tripotent e = sample_minimal_tripotent(t_in, i % count, draw_seed(rng));
    auto v = sample_collinear_minimal(t_in, e, draw_seed(rng));
    Outcome o;
    if (!v) {
      o.used = false;
      return o;
    }
    nlohmann::json w = pair_witness(t_in, i, "collinear", e.element(), v->element());
    std::string reason;
    auto pe = image_of(phi, t_out, e.element(), reason);
    if (!pe) return aborted(w, reason);
    auto pv = image_of(phi, t_out, v->element(), reason);
    if (!pv) return aborted(w, reason);
    const bool kept = classify_relation(t_out, *pe, *pv, Tolerance{std::max(tol.abs_tol, 1e-9), std::max(tol.rel_tol, 1e-9)}).collinear;
    o.violation = kept ? 0.0 : 1.0;
    o.witness = std::move(w);
    return o;
  });
  Report r("collinearity_preservation", tol.abs_tol);
  for (const auto& o : outcomes) {
    if (o.used) fold(r, o);
  }
  r.details = {{"sampled_trials", trials}, {"collinear_pairs", r.trials}};
  return r;
}

std::vector<SocleSample> socle_samples(const ElementMap& phi, const AtomicTriple& t_in,
                                       const AtomicTriple& t_out, std::uint64_t seed,
                                       std::size_t count) {
  std::vector<SocleSample> out;
  Rng rng(seed);
  for (std::size_t s = 0; s < t_in.summand_count(); ++s) {
    const std::size_t n =
        count != 0 ? count : static_cast<std::size_t>(t_in.summand_dimension(s)) + 2;
    for (std::size_t k = 0; k < n; ++k) {
      const Tripotent e = sample_minimal_tripotent(t_in, s, draw_seed(rng));
      for (Complex scale : {Complex(1.0, 0.0), kI}) {
        Element x = scale * e.element();
        std::string reason;
        auto y = image_of(phi, t_out, x, reason);
        if (!y) throw Error(ErrorKind::NotTripotentImage, reason);
        out.push_back({std::move(x), y->element()});
      }
    }
  }
  return out;
}

SocleExtension extend_to_socle(const AtomicTriple& t_in, const AtomicTriple& t_out,
                               const std::vector<SocleSample>& samples, const Tolerance& tol,
                               std::uint64_t seed) {
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  ComplexMatrix xs(n, t_in.dimension());
  ComplexMatrix ys(n, t_out.dimension());
  for (Eigen::Index k = 0; k < n; ++k) {
    xs.row(k) = t_in.coordinates(samples[static_cast<std::size_t>(k)].x).transpose();
    ys.row(k) = t_out.coordinates(samples[static_cast<std::size_t>(k)].y).transpose();
  }
  const LeastSquaresSolution fit = least_squares_solve(xs, ys, Tolerance{1e-9, 1e-9});
  SocleExtension ext;
  ext.map = fit.x.transpose();
  ext.smallest_singular_value = fit.smallest_singular_value;
  ext.residual = (xs * fit.x - ys).rowwise().norm().maxCoeff();
  const double limit = std::max(1e-8, tol.abs_tol);
  if (ext.residual > limit) {
    std::ostringstream os;
    os << "no complex-linear map fits the samples (residual " << ext.residual << ")";
    throw Error(ErrorKind::InconsistentSamples, os.str());
  }

  Rng rng(seed);
  auto apply = [&](const Element& x) { return t_out.from_coordinates(ext.map * t_in.coordinates(x)); };
  for (int k = 0; k < 16; ++k) {
    const Element a = t_in.random_element(rng);
    const Element b = t_in.random_element(rng);
    const Element c = t_in.random_element(rng);
    const Element lhs = apply(t_in.triple_product(a, b, c));
    const Element rhs = t_out.triple_product(apply(a), apply(b), apply(c));
    ext.triple_defect = std::max(ext.triple_defect, t_out.norm(lhs - rhs));
  }
  return ext;
}

RealSocleExtension extend_to_socle_real(const AtomicTriple& t_in, const AtomicTriple& t_out,
                                        const std::vector<SocleSample>& samples, const Tolerance& tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  RealMatrix xs(n, 2 * t_in.dimension());
  RealMatrix ys(n, 2 * t_out.dimension());
  for (Eigen::Index k = 0; k < n; ++k) {
    xs.row(k) = realify(t_in.coordinates(samples[static_cast<std::size_t>(k)].x)).transpose();
    ys.row(k) = realify(t_out.coordinates(samples[static_cast<std::size_t>(k)].y)).transpose();
  }
  const RealLeastSquaresSolution fit = least_squares_solve(xs, ys, Tolerance{1e-9, 1e-9});
  RealSocleExtension ext;
  ext.map = fit.x.transpose();
  ext.smallest_singular_value = fit.smallest_singular_value;
  ext.residual = (xs * fit.x - ys).rowwise().norm().maxCoeff();
  const double limit = std::max(1e-8, tol.abs_tol);
  if (ext.residual > limit) {
    std::ostringstream os;
    os << "no real-linear map fits the samples (residual " << ext.residual << ")";
    throw Error(ErrorKind::InconsistentSamples, os.str());
  }
  return ext;
}

std::string to_string(LinearityTag tag) {
  switch (tag) {
    case LinearityTag::ComplexLinear: return "complex-linear";
    case LinearityTag::ConjugateLinear: return "conjugate-linear";
    case LinearityTag::HilbertMixed: return "hilbert-mixed";
  }
  return "unknown";
}

IsometryClassification classify_real_linear_isometry(const ElementMap& phi, const AtomicTriple& t_in,
                                                     const AtomicTriple& t_out, std::size_t trials,
                                                     std::uint64_t seed, const Tolerance& tol) {
  tol.validate();
  const double limit = std::max(1e-8, tol.abs_tol);
  IsometryClassification out;
  Rng rng(seed);
  for (std::size_t s = 0; s < t_in.summand_count(); ++s) {
    const FactorDescriptor& f = t_in.summand(s);
    SummandClassification c;
    c.summand = s;
    c.factor = f.label();
    for (std::size_t k = 0; k < trials; ++k) {
      const Tripotent e = sample_minimal_tripotent(t_in, s, draw_seed(rng));
      const Tripotent v = sample_minimal_tripotent(t_in, s, draw_seed(rng));
      const Element pe = phi(e.element());
      const Element pv = phi(v.element());
      const double defect =
          std::abs(t_out.norm(pe - pv) - t_in.norm(e.element() - v.element()));
      out.isometry_defect = std::max(out.isometry_defect, defect);
      if (defect > limit) {
        std::ostringstream os;
        os << "distances change by " << defect << " in " << f.label();
        throw Error(ErrorKind::NotAnIsometry, os.str());
      }
      const Element pie = phi(kI * e.element());
      ++c.samples;
      if (t_out.norm(pie - kI * pe) <= limit) ++c.complex_votes;
      else if (t_out.norm(pie + kI * pe) <= limit) ++c.conjugate_votes;
    }
    const bool all_complex = c.complex_votes == c.samples;
    const bool all_conjugate = c.conjugate_votes == c.samples;
    if (all_complex) {
      c.tag = LinearityTag::ComplexLinear;
    } else if (all_conjugate) {
      c.tag = LinearityTag::ConjugateLinear;
    } else if (f.rank() == 1) {
      c.tag = LinearityTag::HilbertMixed;
    } else {
      std::ostringstream os;
      os << f.label() << " (summand " << s << ") has rank " << f.rank() << " but votes "
         << c.complex_votes << " complex / " << c.conjugate_votes << " conjugate of " << c.samples;
      throw Error(ErrorKind::InconsistentTag, os.str());
    }
    out.summands.push_back(c);
  }
  return out;
}

nlohmann::json to_json(const IsometryClassification& c) {
  nlohmann::json summands = nlohmann::json::array();
  for (const auto& s : c.summands) {
    summands.push_back({{"summand", s.summand},
                        {"factor", s.factor},
                        {"tag", to_string(s.tag)},
                        {"samples", s.samples},
                        {"complex_votes", s.complex_votes},
                        {"conjugate_votes", s.conjugate_votes}});
  }
  return {{"summands", summands}, {"isometry_defect", c.isometry_defect}};
}

}  // namespace triplelab
