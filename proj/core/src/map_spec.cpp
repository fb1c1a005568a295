#include "triplelab/map_spec.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "triplelab/error.hpp"
#include "triplelab/random.hpp"
#include "triplelab/serialization.hpp"

namespace triplelab {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidPrimitive, msg); }

double unitarity_threshold(const Tolerance& tol, Eigen::Index n) {
  return std::max(1e-8, std::max(tol.abs_tol, tol.rel_tol)) * static_cast<double>(std::max<Eigen::Index>(n, 1));
}

void check_unitary(const ComplexMatrix& u, const Tolerance& tol, const char* what) {
  if (u.rows() != u.cols() || u.rows() == 0) invalid(std::string(what) + " must be square");
  const double defect = (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
  if (defect > unitarity_threshold(tol, u.rows())) {
    std::ostringstream os;
    os << what << " is not unitary (‖u†u − 1‖ = " << defect << ")";
    invalid(os.str());
  }
}

void check_real_orthogonal(const ComplexMatrix& o, const Tolerance& tol) {
  check_unitary(o, tol, "spin matrix");
  if (o.imag().norm() > unitarity_threshold(tol, o.rows())) invalid("spin matrix must be real");
}

std::vector<std::size_t> targets(const Primitive& p, std::size_t count) {
  if (p.summand) {
    if (*p.summand >= count) {
      throw Error(ErrorKind::ShapeMismatch, to_string(p.kind) + " targets summand " +
                                                std::to_string(*p.summand) + " of " + std::to_string(count));
    }
    return {*p.summand};
  }
  std::vector<std::size_t> all(count);
  for (std::size_t i = 0; i < count; ++i) all[i] = i;
  return all;
}

// Runs the spec over descriptors, and over blocks when `blocks` is non-null.
void run_spec(const MapSpec& spec, std::vector<FactorDescriptor>& cur,
              std::vector<ComplexMatrix>* blocks, const Tolerance& tol) {
  for (const Primitive& p : spec.steps) {
    if (p.kind == PrimitiveKind::SummandPermutation) {
      const auto& perm = p.permutation;
      if (perm.size() != cur.size()) invalid("permutation length must equal the summand count");
      std::vector<bool> seen(cur.size(), false);
      for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] >= cur.size() || seen[perm[i]]) invalid("summand_permutation is not a permutation");
        seen[perm[i]] = true;
        if (!(cur[perm[i]] == cur[i])) invalid("permutation must map summands to identical descriptors");
      }
      if (blocks) {
        std::vector<ComplexMatrix> next(blocks->size());
        for (std::size_t i = 0; i < perm.size(); ++i) next[i] = (*blocks)[perm[i]];
        *blocks = std::move(next);
      }
      continue;
    }

    for (std::size_t s : targets(p, cur.size())) {
      FactorDescriptor& f = cur[s];
      ComplexMatrix* b = blocks ? &(*blocks)[s] : nullptr;
      switch (p.kind) {
        case PrimitiveKind::UnitaryLeft:
          if (!f.is_matrix_factor()) invalid("unitary_left does not apply to " + f.label());
          check_unitary(p.matrix, tol, "unitary_left matrix");
          if (p.matrix.rows() != f.block_rows()) {
            throw Error(ErrorKind::ShapeMismatch, "unitary_left size does not match " + f.label());
          }
          if (b) *b = p.matrix * *b;
          break;
        case PrimitiveKind::UnitaryRight:
          if (!f.is_matrix_factor()) invalid("unitary_right does not apply to " + f.label());
          check_unitary(p.matrix, tol, "unitary_right matrix");
          if (p.matrix.rows() != f.block_cols()) {
            throw Error(ErrorKind::ShapeMismatch, "unitary_right size does not match " + f.label());
          }
          if (b) *b = *b * p.matrix;
          break;
        case PrimitiveKind::Transpose:
          if (!f.is_matrix_factor()) invalid("transpose is undefined on " + f.label());
          if (f.kind == FactorKind::Rectangular) std::swap(f.p, f.q);
          if (b) *b = b->transpose().eval();
          break;
        case PrimitiveKind::EntrywiseConjugate:
          if (b) *b = b->conjugate().eval();
          break;
        case PrimitiveKind::Phase:
          if (std::abs(std::abs(p.phase) - 1.0) > unitarity_threshold(tol, 1)) invalid("phase must have modulus 1");
          if (b) *b *= p.phase;
          break;
        case PrimitiveKind::RealOrthogonalSpin:
          if (f.kind != FactorKind::Spin) invalid("real_orthogonal_spin applies to spin summands only");
          check_real_orthogonal(p.matrix, tol);
          if (p.matrix.rows() != f.p) throw Error(ErrorKind::ShapeMismatch, "spin matrix size mismatch");
          if (b) *b = p.matrix.real().cast<Complex>() * *b;
          break;
        case PrimitiveKind::HilbertMixedConjugation: {
          if (f.rank() != 1) invalid("hilbert_mixed_conjugation needs a rank-one summand, got " + f.label());
          const AtomicTriple single({f});
          for (std::size_t c : p.coordinates) {
            if (static_cast<int>(c) >= f.dimension()) invalid("coordinate index out of range");
          }
          if (b) {
            Element x;
            x.blocks.push_back(*b);
            ComplexVector coords = single.coordinates(x);
            for (std::size_t c : p.coordinates) {
              coords(static_cast<Eigen::Index>(c)) = std::conj(coords(static_cast<Eigen::Index>(c)));
            }
            *b = single.from_coordinates(coords).blocks[0];
          }
          break;
        }
        case PrimitiveKind::SummandPermutation:
          break;
      }
    }
  }
}

}  // namespace

std::string to_string(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::UnitaryLeft: return "unitary_left";
    case PrimitiveKind::UnitaryRight: return "unitary_right";
    case PrimitiveKind::Transpose: return "transpose";
    case PrimitiveKind::EntrywiseConjugate: return "entrywise_conjugate";
    case PrimitiveKind::Phase: return "phase";
    case PrimitiveKind::RealOrthogonalSpin: return "real_orthogonal_spin";
    case PrimitiveKind::SummandPermutation: return "summand_permutation";
    case PrimitiveKind::HilbertMixedConjugation: return "hilbert_mixed_conjugation";
  }
  return "unknown";
}

Primitive Primitive::unitary_left(ComplexMatrix u, std::optional<std::size_t> summand) {
  Primitive p;
  p.kind = PrimitiveKind::UnitaryLeft;
  p.matrix = std::move(u);
  p.summand = summand;
  return p;
}

Primitive Primitive::unitary_right(ComplexMatrix w, std::optional<std::size_t> summand) {
  Primitive p;
  p.kind = PrimitiveKind::UnitaryRight;
  p.matrix = std::move(w);
  p.summand = summand;
  return p;
}

Primitive Primitive::transpose(std::optional<std::size_t> summand) {
  Primitive p;
  p.kind = PrimitiveKind::Transpose;
  p.summand = summand;
  return p;
}

Primitive Primitive::entrywise_conjugate(std::optional<std::size_t> summand) {
  Primitive p;
  p.kind = PrimitiveKind::EntrywiseConjugate;
  p.summand = summand;
  return p;
}

Primitive Primitive::phase_factor(Complex lambda, std::optional<std::size_t> summand) {
  Primitive p;
  p.kind = PrimitiveKind::Phase;
  p.phase = lambda;
  p.summand = summand;
  return p;
}

Primitive Primitive::real_orthogonal_spin(const RealMatrix& o, std::optional<std::size_t> summand) {
  Primitive p;
  p.kind = PrimitiveKind::RealOrthogonalSpin;
  p.matrix = o.cast<Complex>();
  p.summand = summand;
  return p;
}

Primitive Primitive::summand_permutation(std::vector<std::size_t> permutation) {
  Primitive p;
  p.kind = PrimitiveKind::SummandPermutation;
  p.permutation = std::move(permutation);
  return p;
}

Primitive Primitive::hilbert_mixed_conjugation(std::vector<std::size_t> coordinates,
                                               std::optional<std::size_t> summand) {
  Primitive p;
  p.kind = PrimitiveKind::HilbertMixedConjugation;
  p.coordinates = std::move(coordinates);
  p.summand = summand;
  return p;
}

AtomicTriple output_triple(const MapSpec& spec, const AtomicTriple& t_in, const Tolerance& tol) {
  std::vector<FactorDescriptor> cur = t_in.summands();
  run_spec(spec, cur, nullptr, tol);
  return AtomicTriple(std::move(cur));
}

Element apply_map(const MapSpec& spec, const AtomicTriple& t_in, const AtomicTriple& t_out,
                  const Element& x, const Tolerance& tol) {
  t_in.validate(x, Tolerance{1e-6, 1e-6});
  std::vector<FactorDescriptor> cur = t_in.summands();
  Element y = x;
  run_spec(spec, cur, &y.blocks, tol);
  if (!(AtomicTriple(cur) == t_out)) {
    throw Error(ErrorKind::ShapeMismatch, "spec maps " + t_in.label() + " into " +
                                              AtomicTriple(cur).label() + ", not " + t_out.label());
  }
  if (!t_out.contains(y, Tolerance{1e-6, 1e-6})) invalid("spec leaves the target triple");
  return y;
}

ElementMap as_element_map(const MapSpec& spec, const AtomicTriple& t_in, const AtomicTriple& t_out,
                          const Tolerance& tol) {
  if (!(output_triple(spec, t_in, tol) == t_out)) {
    throw Error(ErrorKind::ShapeMismatch, "spec does not map " + t_in.label() + " onto " + t_out.label());
  }
  return [spec, t_in, t_out, tol](const Element& x) { return apply_map(spec, t_in, t_out, x, tol); };
}

MapSpec random_automorphism_spec(const AtomicTriple& t, std::uint64_t seed) {
  Rng rng(seed);
  MapSpec spec;
  for (std::size_t i = 0; i < t.summand_count(); ++i) {
    const FactorDescriptor& f = t.summand(i);
    switch (f.kind) {
      case FactorKind::Rectangular:
        spec.steps.push_back(Primitive::unitary_left(rng.unitary(f.p), i));
        spec.steps.push_back(Primitive::unitary_right(rng.unitary(f.q), i));
        if (f.p == f.q && rng.uniform() < 0.5) spec.steps.push_back(Primitive::transpose(i));
        break;
      case FactorKind::Antisymmetric:
      case FactorKind::Symmetric: {
        const ComplexMatrix u = rng.unitary(f.p);
        spec.steps.push_back(Primitive::unitary_left(u, i));
        spec.steps.push_back(Primitive::unitary_right(u.transpose(), i));
        break;
      }
      case FactorKind::Spin:
        spec.steps.push_back(Primitive::real_orthogonal_spin(rng.orthogonal(f.p), i));
        spec.steps.push_back(Primitive::phase_factor(rng.unit_phase(), i));
        break;
    }
  }
  if (t.summand_count() > 1) {
    // Shuffle within groups of identical descriptors (Fisher-Yates per group).
    std::vector<std::size_t> perm(t.summand_count());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < perm.size(); ++i) groups[t.summand(i).label()].push_back(i);
    for (auto& [label, idx] : groups) {
      std::vector<std::size_t> shuffled = idx;
      for (std::size_t k = shuffled.size(); k > 1; --k) std::swap(shuffled[k - 1], shuffled[rng.index(k)]);
      for (std::size_t k = 0; k < idx.size(); ++k) perm[idx[k]] = shuffled[k];
    }
    spec.steps.push_back(Primitive::summand_permutation(perm));
  }
  return spec;
}

MapSpec adjoint_spec(const AtomicTriple& t) {
  MapSpec spec;
  for (std::size_t i = 0; i < t.summand_count(); ++i) {
    if (t.summand(i).is_matrix_factor()) spec.steps.push_back(Primitive::transpose(i));
    spec.steps.push_back(Primitive::entrywise_conjugate(i));
  }
  return spec;
}

MapSpec hilbert_mixed_spec(std::size_t summand, std::vector<std::size_t> coordinates) {
  MapSpec spec;
  spec.steps.push_back(Primitive::hilbert_mixed_conjugation(std::move(coordinates), summand));
  return spec;
}

nlohmann::json to_json(const MapSpec& spec) {
  nlohmann::json steps = nlohmann::json::array();
  for (const Primitive& p : spec.steps) {
    nlohmann::json s;
    s["kind"] = to_string(p.kind);
    if (p.summand) s["summand"] = *p.summand;
    switch (p.kind) {
      case PrimitiveKind::UnitaryLeft:
      case PrimitiveKind::UnitaryRight:
        s["matrix"] = matrix_to_json(p.matrix);
        break;
      case PrimitiveKind::RealOrthogonalSpin: {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < p.matrix.rows(); ++i) {
          nlohmann::json row = nlohmann::json::array();
          for (Eigen::Index k = 0; k < p.matrix.cols(); ++k) row.push_back(p.matrix(i, k).real());
          rows.push_back(row);
        }
        s["matrix"] = rows;
        break;
      }
      case PrimitiveKind::Phase:
        s["value"] = complex_to_json(p.phase);
        break;
      case PrimitiveKind::SummandPermutation:
        s["permutation"] = p.permutation;
        break;
      case PrimitiveKind::HilbertMixedConjugation:
        s["coordinates"] = p.coordinates;
        break;
      case PrimitiveKind::Transpose:
      case PrimitiveKind::EntrywiseConjugate:
        break;
    }
    steps.push_back(s);
  }
  return {{"steps", steps}};
}

MapSpec parse_map_spec(const nlohmann::json& j) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::ParseError, msg); };
  if (!j.is_object() || !j.contains("steps") || !j.at("steps").is_array()) {
    fail("map spec must be an object with a \"steps\" array");
  }
  auto index_list = [&](const nlohmann::json& s, const char* key) {
    if (!s.contains(key) || !s.at(key).is_array()) fail(std::string("missing array \"") + key + "\"");
    std::vector<std::size_t> out;
    for (const auto& v : s.at(key)) {
      if (!v.is_number_unsigned()) fail(std::string("\"") + key + "\" entries must be non-negative integers");
      out.push_back(v.get<std::size_t>());
    }
    return out;
  };
  MapSpec spec;
  for (const auto& s : j.at("steps")) {
    if (!s.is_object() || !s.contains("kind") || !s.at("kind").is_string()) fail("each step needs a \"kind\"");
    const std::string kind = s.at("kind").get<std::string>();
    std::optional<std::size_t> summand;
    if (s.contains("summand")) {
      if (!s.at("summand").is_number_unsigned()) fail("\"summand\" must be a non-negative integer");
      summand = s.at("summand").get<std::size_t>();
    }
    auto matrix = [&]() {
      if (!s.contains("matrix")) fail(kind + " needs a \"matrix\"");
      return parse_matrix(s.at("matrix"));
    };
    if (kind == "unitary_left") {
      spec.steps.push_back(Primitive::unitary_left(matrix(), summand));
    } else if (kind == "unitary_right") {
      spec.steps.push_back(Primitive::unitary_right(matrix(), summand));
    } else if (kind == "transpose") {
      spec.steps.push_back(Primitive::transpose(summand));
    } else if (kind == "entrywise_conjugate") {
      spec.steps.push_back(Primitive::entrywise_conjugate(summand));
    } else if (kind == "phase") {
      if (!s.contains("value")) fail("phase needs a \"value\"");
      spec.steps.push_back(Primitive::phase_factor(parse_complex(s.at("value")), summand));
    } else if (kind == "real_orthogonal_spin") {
      Primitive p;
      p.kind = PrimitiveKind::RealOrthogonalSpin;
      p.matrix = matrix();
      p.summand = summand;
      spec.steps.push_back(std::move(p));
    } else if (kind == "summand_permutation") {
      spec.steps.push_back(Primitive::summand_permutation(index_list(s, "permutation")));
    } else if (kind == "hilbert_mixed_conjugation") {
      spec.steps.push_back(Primitive::hilbert_mixed_conjugation(index_list(s, "coordinates"), summand));
    } else {
      fail("unknown primitive kind \"" + kind + "\"");
    }
  }
  return spec;
}

}  // namespace triplelab
