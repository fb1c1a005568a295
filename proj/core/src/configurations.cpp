#include "triplelab/configurations.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "triplelab/error.hpp"
#include "triplelab/random.hpp"
#include "triplelab/serialization.hpp"
#include "triplelab/ttp.hpp"

namespace triplelab {

namespace {

constexpr double kNegligibleMass = 1e-10;
constexpr double kParallelThreshold = 1e-6;
constexpr std::uint64_t kFrameSeed = 0x6672616d65ULL;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool minimal_tripotent(const AtomicTriple& t, const Element& x, const Tolerance& tol) {
  try {
    return Tripotent(t, x, tol).minimal();
  } catch (const Error&) {
    return false;
  }
}

bool collinear(const AtomicTriple& t, const Element& a, const Element& b, const Tolerance& tol) {
  return in_peirce_space(t, a, 1, b, tol) && in_peirce_space(t, b, 1, a, tol);
}

bool governs(const AtomicTriple& t, const Element& u, const Element& v, const Tolerance& tol) {
  return in_peirce_space(t, u, 2, v, tol) && in_peirce_space(t, v, 1, u, tol);
}

double coord_norm_sq(const AtomicTriple& t, const Element& x) { return t.coordinates(x).squaredNorm(); }

ComplexVector orthogonal_unit(const ComplexVector& x) {
  Eigen::Index k = 0;
  x.cwiseAbs().minCoeff(&k);
  ComplexVector g = ComplexVector::Zero(x.size());
  g(k) = 1.0;
  g -= x * std::conj(x(k));
  return g / g.norm();
}

bool factor_has_quadrangles(const FactorDescriptor& f) {
  switch (f.kind) {
    case FactorKind::Rectangular: return f.rank() >= 2;
    case FactorKind::Antisymmetric: return f.p >= 4;
    case FactorKind::Symmetric: return false;
    case FactorKind::Spin: return f.p >= 4;
  }
  return false;
}

// Minimal tripotent inside the range of `project`, found by cubing a
// projected random element.
template <class Project>
std::optional<Element> minimal_in(const AtomicTriple& t, std::size_t summand, Project project,
                                  std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const Element y = project(t.random_element_in(summand, rng));
    if (t.norm(y) < kNegligibleMass) return std::nullopt;
    Element p = dominant_tripotent(t, y);
    if (minimal_tripotent(t, p, Tolerance{1e-9, 1e-9})) return p;
  }
  return std::nullopt;
}

// v₃ ∈ E₀(e) ∩ E₁(v₂) and v₄ = 2{e, v₂, v₃}.
std::optional<std::pair<Element, Element>> complete_from_v2(const AtomicTriple& t, const Tripotent& e,
                                                            std::size_t home, const Element& v2) {
  const Tripotent tv2(t, v2, Tolerance{1e-8, 1e-8});
  auto v3 = minimal_in(
      t, home, [&](const Element& x) { return e.project(0, tv2.project(1, x)); }, kFrameSeed + 1);
  if (!v3) return std::nullopt;
  Element v4 = Complex(2.0, 0.0) * t.triple_product(e.element(), v2, *v3);
  if (!is_quadrangle(t, e.element(), v2, *v3, v4, Tolerance{1e-8, 1e-8})) return std::nullopt;
  return std::make_pair(std::move(*v3), std::move(v4));
}

RelativePosition rank_one_position(const AtomicTriple& t, const Tripotent& e, const Element& v) {
  RelativePosition rp;
  CollinearFrame cf;
  cf.alpha = pure_atom_value(t, e, v);
  const Element w1 = e.project(1, v);
  const double n1 = t.norm(w1);
  if (n1 > kNegligibleMass) {
    cf.beta = n1;
    cf.v1 = w1 * Complex(1.0 / n1, 0.0);
  } else {
    cf.beta = 0.0;
    const ComplexMatrix& b1 = e.peirce().bases[1];
    if (b1.cols() > 0) {
      Element x = t.from_coordinates(b1.col(0));
      cf.v1 = x * Complex(1.0 / t.norm(x), 0.0);
    } else {
      cf.v1 = t.zero();
      rp.frame_complete = false;
    }
  }
  rp.kind = std::move(cf);
  return rp;
}

RelativePosition rectangular_position(const AtomicTriple& t, const Tripotent& e, const Element& v,
                                      std::size_t home) {
  const ComplexMatrix& m = e.element().blocks[home];
  const ComplexMatrix& w = v.blocks[home];
  Eigen::JacobiSVD<ComplexMatrix> se(m, Eigen::ComputeThinU);
  Eigen::JacobiSVD<ComplexMatrix> sv(w, Eigen::ComputeThinU);
  const ComplexVector xi = se.matrixU().col(0);
  const ComplexVector eta = m.adjoint() * xi;
  const ComplexVector a = sv.matrixU().col(0);
  const ComplexVector b = w.adjoint() * a;

  const Complex xa = xi.dot(a);    // ξ*a
  const Complex bn = b.dot(eta);   // b*η
  const ComplexVector a_perp = a - xa * xi;
  const ComplexVector b_perp = b - eta.dot(b) * eta;
  const double na = a_perp.norm();
  const double nb = b_perp.norm();
  const ComplexVector xi2 = na > 1e-12 ? ComplexVector(a_perp / na) : orthogonal_unit(xi);
  const ComplexVector eta2 = nb > 1e-12 ? ComplexVector(b_perp / nb) : orthogonal_unit(eta);
  const Complex phase = std::abs(xa) > 1e-300 ? xa / std::abs(xa) : Complex(1.0, 0.0);

  QuadranglePosition q;
  q.alpha = xa * bn;
  q.beta = std::abs(xa) * nb;
  q.gamma = phase * na * bn;
  q.delta = na * nb;
  q.v2 = t.embed(home, phase * xi * eta2.adjoint());
  q.v3 = t.embed(home, xi2 * eta2.adjoint());
  q.v4 = t.embed(home, std::conj(phase) * xi2 * eta.adjoint());
  RelativePosition rp;
  rp.kind = std::move(q);
  return rp;
}

RelativePosition generic_position(const AtomicTriple& t, const Tripotent& e, const Element& v,
                                  std::size_t home) {
  const FactorDescriptor& f = t.summand(home);
  const Element& ee = e.element();
  const Complex alpha = pure_atom_value(t, e, v);
  const Element w1 = e.project(1, v);
  const Element w0 = e.project(0, v);
  const double n1 = t.norm(w1);
  const double delta = t.norm(w0);
  RelativePosition rp;

  if (n1 <= kNegligibleMass && std::abs(alpha) <= kNegligibleMass) {
    rp.kind = OrthogonalPosition{v};
    return rp;
  }

  if (n1 <= kNegligibleMass && delta <= kNegligibleMass) {
    // v is a multiple of e; the frame is decorative.
    QuadranglePosition q{alpha, 0.0, 0.0, 0.0, t.zero(), t.zero(), t.zero()};
    auto v2 = minimal_in(t, home, [&](const Element& x) { return e.project(1, x); }, kFrameSeed);
    std::optional<std::pair<Element, Element>> rest;
    if (v2) rest = complete_from_v2(t, e, home, *v2);
    if (rest) {
      q.v2 = *v2;
      q.v3 = rest->first;
      q.v4 = rest->second;
    } else {
      rp.frame_complete = false;
    }
    rp.kind = std::move(q);
    return rp;
  }

  if (delta <= kNegligibleMass) {
    // v = αe + βv₂ with v₂ minimal and collinear to e.
    QuadranglePosition q{alpha, n1, 0.0, 0.0, w1 * Complex(1.0 / n1, 0.0), t.zero(), t.zero()};
    auto rest = complete_from_v2(t, e, home, q.v2);
    if (rest) {
      q.v3 = rest->first;
      q.v4 = rest->second;
    } else {
      rp.frame_complete = false;
    }
    rp.kind = std::move(q);
    return rp;
  }

  const Element v3 = w0 * Complex(1.0 / delta, 0.0);
  // x ↦ 2{e, x, v₃} is conjugate linear and swaps the v₂ and v₄ directions.
  const Element xw1 = Complex(2.0, 0.0) * t.triple_product(ee, w1, v3);
  const ComplexVector c1 = t.coordinates(w1);
  const ComplexVector cx = t.coordinates(xw1);
  const Complex kappa = c1.dot(cx) / c1.squaredNorm();
  const double skew = (cx - kappa * c1).norm() / c1.norm();

  if (skew < kParallelThreshold) {
    const Element u0 = w1 * Complex(1.0 / n1, 0.0);
    const Element q = t.quadratic(u0, v3);
    const double c = coord_norm_sq(t, ee);
    const Complex lambda = t.inner(q, ee) / c;
    if (t.norm(q - lambda * ee) > 1e-6 || std::abs(std::abs(lambda) - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "P1 component is neither split nor governing (Q(u)v3 defect "
         << t.norm(q - lambda * ee) << ")";
      throw Error(ErrorKind::DecompositionFailed, os.str());
    }
    Complex mu = std::sqrt(lambda);
    Complex beta = n1 * mu;
    if (beta.real() < 0.0) {
      mu = -mu;
      beta = -beta;
    }
    rp.kind = TranglePosition{alpha, beta, delta, std::conj(mu) * u0, v3};
    rp.degenerate_split = factor_has_quadrangles(f);
    return rp;
  }

  const double c = coord_norm_sq(t, ee);
  const Complex bg = std::conj(c1.dot(cx)) / (2.0 * c);  // ⟨Xw₁, w₁⟩ = 2c·conj(βγ)
  const double s = c1.squaredNorm() / c;                 // |β|² + |γ|²
  const double disc = std::max(0.0, s * s - 4.0 * std::norm(bg));
  const double beta2 = 0.5 * (s + std::sqrt(disc));
  const double beta = std::sqrt(beta2);
  const Complex gamma = bg / beta;
  const double den = beta2 - std::norm(gamma);
  QuadranglePosition qp;
  qp.alpha = alpha;
  qp.beta = beta;
  qp.gamma = gamma;
  qp.delta = delta;
  qp.v2 = (Complex(beta, 0.0) * w1 - gamma * xw1) * Complex(1.0 / den, 0.0);
  qp.v4 = (Complex(beta, 0.0) * xw1 - std::conj(gamma) * w1) * Complex(1.0 / den, 0.0);
  qp.v3 = v3;
  rp.kind = std::move(qp);
  return rp;
}

}  // namespace

bool is_quadrangle(const AtomicTriple& t, const Element& u1, const Element& u2, const Element& u3,
                   const Element& u4, const Tolerance& tol) {
  try {
    for (const Element* u : {&u1, &u2, &u3, &u4}) {
      if (!minimal_tripotent(t, *u, tol)) return false;
    }
    if (!are_orthogonal(t, u1, u3, tol) || !are_orthogonal(t, u2, u4, tol)) return false;
    if (!collinear(t, u1, u2, tol) || !collinear(t, u2, u3, tol) || !collinear(t, u3, u4, tol) ||
        !collinear(t, u4, u1, tol)) {
      return false;
    }
    const Element defect = u4 - Complex(2.0, 0.0) * t.triple_product(u1, u2, u3);
    return tol.negligible(t.norm(defect), 1.0);
  } catch (const Error&) {
    return false;
  }
}

bool is_trangle(const AtomicTriple& t, const Element& v, const Element& u, const Element& vt,
                const Tolerance& tol) {
  t.validate(v, tol);
  t.validate(u, tol);
  t.validate(vt, tol);
  if (!minimal_tripotent(t, v, tol) || !minimal_tripotent(t, vt, tol)) return false;
  if (!is_tripotent(t, u, tol)) return false;
  if (!are_orthogonal(t, v, vt, tol)) return false;
  if (!governs(t, u, v, tol) || !governs(t, u, vt, tol)) return false;
  return tol.negligible(t.norm(v - t.quadratic(u, vt)), 1.0);
}

Tripotent collinear_superposition(const AtomicTriple& t, const Tripotent& e, const Tripotent& v1,
                                  Complex lambda1, Complex lambda2, const Tolerance& tol) {
  const double mass = std::norm(lambda1) + std::norm(lambda2);
  if (std::abs(mass - 1.0) > std::max(tol.abs_tol, tol.rel_tol)) {
    std::ostringstream os;
    os << "|λ1|² + |λ2|² = " << mass;
    throw Error(ErrorKind::NotUnitCoefficients, os.str());
  }
  if (!e.minimal() || !v1.minimal() || !collinear(t, e.element(), v1.element(), tol)) {
    throw Error(ErrorKind::NotCollinear, "e and v1 must be collinear minimal tripotents");
  }
  Tripotent out(t, lambda1 * e.element() + lambda2 * v1.element(), tol);
  if (!out.minimal()) throw Error(ErrorKind::NotMinimal, "superposition is not minimal");
  return out;
}

std::string RelativePosition::tag() const {
  return std::visit(Overloaded{[](const OrthogonalPosition&) { return "orthogonal"; },
                               [](const CollinearFrame&) { return "collinear"; },
                               [](const QuadranglePosition&) { return "quadrangle"; },
                               [](const TranglePosition&) { return "trangle"; }},
                    kind);
}

Element RelativePosition::reconstruct(const Element& e) const {
  return std::visit(
      Overloaded{[](const OrthogonalPosition& o) { return o.v; },
                 [&](const CollinearFrame& c) { return c.alpha * e + c.beta * c.v1; },
                 [&](const QuadranglePosition& q) {
                   return q.alpha * e + q.beta * q.v2 + q.gamma * q.v4 + q.delta * q.v3;
                 },
                 [&](const TranglePosition& r) { return r.alpha * e + r.beta * r.u + r.delta * r.vt; }},
      kind);
}

ConstraintDefects constraint_defects(const RelativePosition& rp) {
  return std::visit(
      Overloaded{[](const OrthogonalPosition&) { return ConstraintDefects{}; },
                 [](const CollinearFrame& c) {
                   return ConstraintDefects{0.0, std::abs(std::norm(c.alpha) + std::norm(c.beta) - 1.0)};
                 },
                 [](const QuadranglePosition& q) {
                   return ConstraintDefects{
                       std::abs(q.alpha * q.delta - q.beta * q.gamma),
                       std::abs(std::norm(q.alpha) + std::norm(q.beta) + std::norm(q.gamma) +
                                std::norm(q.delta) - 1.0)};
                 },
                 [](const TranglePosition& r) {
                   return ConstraintDefects{
                       std::abs(r.alpha * r.delta - r.beta * r.beta),
                       std::abs(std::norm(r.alpha) + 2.0 * std::norm(r.beta) + std::norm(r.delta) - 1.0)};
                 }},
      rp.kind);
}

RelativePosition relative_position(const AtomicTriple& t, const Tripotent& e, const Tripotent& v,
                                   const Tolerance& tol) {
  if (!e.minimal() || !v.minimal()) {
    throw Error(ErrorKind::NotMinimal, "relative position needs minimal tripotents");
  }
  if (e.home_summand() != v.home_summand() || are_orthogonal(t, e.element(), v.element(), tol)) {
    RelativePosition rp;
    rp.kind = OrthogonalPosition{v.element()};
    return rp;
  }
  const auto home = static_cast<std::size_t>(e.home_summand());
  const FactorDescriptor& f = t.summand(home);

  RelativePosition rp;
  if (f.rank() == 1) {
    rp = rank_one_position(t, e, v.element());
  } else if (f.kind == FactorKind::Rectangular) {
    rp = rectangular_position(t, e, v.element(), home);
  } else {
    rp = generic_position(t, e, v.element(), home);
  }

  rp.residual = t.norm(v.element() - rp.reconstruct(e.element()));
  const double limit = 100.0 * std::max(tol.abs_tol, tol.rel_tol);
  const ConstraintDefects d = constraint_defects(rp);
  if (rp.residual > limit || d.product > limit || d.norm > limit) {
    std::ostringstream os;
    os << rp.tag() << " decomposition rejected: residual " << rp.residual << ", product defect "
       << d.product << ", norm defect " << d.norm;
    throw Error(ErrorKind::DecompositionFailed, os.str());
  }
  return rp;
}

nlohmann::json to_json(const AtomicTriple& t, const RelativePosition& rp) {
  nlohmann::json j;
  j["kind"] = rp.tag();
  j["residual"] = rp.residual;
  j["frame_complete"] = rp.frame_complete;
  j["degenerate_split"] = rp.degenerate_split;
  nlohmann::json coeffs = nlohmann::json::object();
  nlohmann::json frame = nlohmann::json::object();
  std::visit(Overloaded{[&](const OrthogonalPosition& o) {
                          coeffs["alpha"] = complex_to_json(0.0);
                          frame["v"] = element_to_json(t, o.v);
                        },
                        [&](const CollinearFrame& c) {
                          coeffs["alpha"] = complex_to_json(c.alpha);
                          coeffs["beta"] = complex_to_json(c.beta);
                          frame["v1"] = element_to_json(t, c.v1);
                        },
                        [&](const QuadranglePosition& q) {
                          coeffs["alpha"] = complex_to_json(q.alpha);
                          coeffs["beta"] = complex_to_json(q.beta);
                          coeffs["gamma"] = complex_to_json(q.gamma);
                          coeffs["delta"] = complex_to_json(q.delta);
                          frame["v2"] = element_to_json(t, q.v2);
                          frame["v3"] = element_to_json(t, q.v3);
                          frame["v4"] = element_to_json(t, q.v4);
                        },
                        [&](const TranglePosition& r) {
                          coeffs["alpha"] = complex_to_json(r.alpha);
                          coeffs["beta"] = complex_to_json(r.beta);
                          coeffs["delta"] = complex_to_json(r.delta);
                          frame["u"] = element_to_json(t, r.u);
                          frame["vt"] = element_to_json(t, r.vt);
                        }},
             rp.kind);
  j["coefficients"] = coeffs;
  j["frame"] = frame;
  return j;
}

}  // namespace triplelab
