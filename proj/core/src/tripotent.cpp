#include "triplelab/tripotent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "triplelab/error.hpp"
#include "triplelab/random.hpp"

namespace triplelab {

namespace {

constexpr double kPeirceWindow = 1e-6;
constexpr std::uint64_t kRankSeed = 0x7269676874ULL;

double tripotent_threshold(const Tolerance& tol, double norm) {
  return std::max(tol.abs_tol, tol.rel_tol) * std::max(1.0, norm * norm * norm);
}

ComplexMatrix hstack(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

ComplexMatrix quadratic_squared(const AtomicTriple& t, const Element& e) {
  const Eigen::Index d = t.dimension();
  ComplexMatrix q2(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    q2.col(k) = t.coordinates(t.quadratic(e, t.quadratic(e, t.basis_element(k))));
  }
  return q2;
}

int compute_rank(const AtomicTriple& t, const Element& e, const PeirceSystem& first) {
  Rng rng(kRankSeed);
  Element r = e;
  const Eigen::Index max_steps = t.dimension() + 1;
  for (Eigen::Index step = 0; step <= max_steps; ++step) {
    if (t.norm(r) <= 1e-8) return static_cast<int>(step);
    const PeirceSystem ps = step == 0 ? first : peirce_decompose(t, r, Tolerance{1e-7, 1e-7});
    const ComplexMatrix& b = ps.bases[2];
    if (b.cols() == 1) return static_cast<int>(step) + 1;
    if (b.cols() == 0) break;

    // A generic hermitian element h of the JB*-algebra E₂(r); the top
    // eigenvector of a ↦ {h, r, a} on E₂(r) spans a minimal projection.
    const Element g = t.from_coordinates(b * rng.complex_gaussian_vector(b.cols()));
    const Element h = g + t.quadratic(r, g);
    const ComplexMatrix lhr = b.adjoint() * t.multiplication_operator(h, r) * b;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (lhr + lhr.adjoint()));
    const ComplexVector top = solver.eigenvectors().col(b.cols() - 1);
    Element w = t.from_coordinates(b * top);
    w *= Complex(1.0 / t.norm(w), 0.0);

    const Complex s = t.inner(t.quadratic(r, w), w) / t.inner(w, w);
    const Complex mu = std::sqrt(s);
    Element p = w * mu;
    Element alt = w * (-mu);
    const double err_p = t.norm(t.triple_product(p, r, p) - p);
    const double err_alt = t.norm(t.triple_product(alt, r, alt) - alt);
    if (err_alt < err_p) p = alt;
    r -= p;
  }
  std::ostringstream os;
  os << "rank decomposition did not terminate; residual norm " << t.norm(r);
  throw Error(ErrorKind::DecompositionFailed, os.str());
}

}  // namespace

PeirceSystem peirce_decompose(const AtomicTriple& t, const Element& e, const Tolerance& tol) {
  const ComplexMatrix l = t.multiplication_operator(e, e);
  const Tolerance herm{std::max(tol.abs_tol, 1e-9), std::max(tol.rel_tol, 1e-9)};
  const HermitianEigensystem es = hermitian_eigensystem(l, herm);

  PeirceSystem ps;
  const Eigen::Index d = t.dimension();
  for (auto& b : ps.bases) b = ComplexMatrix(d, 0);
  for (std::size_t c = 0; c < es.eigenvalues.size(); ++c) {
    const double lambda = es.eigenvalues[c];
    const double k = std::round(2.0 * lambda);
    const double dev = std::abs(lambda - 0.5 * k);
    if (k < 0.0 || k > 2.0 || dev > kPeirceWindow) {
      std::ostringstream os;
      os << "L(e,e) has eigenvalue " << lambda << " outside {0, 1/2, 1}";
      throw Error(ErrorKind::SpectrumViolation, os.str());
    }
    ps.max_deviation = std::max(ps.max_deviation, dev);
    auto& basis = ps.bases[static_cast<std::size_t>(k)];
    basis = hstack(basis, es.bases[c]);
  }
  for (std::size_t k = 0; k < 3; ++k) ps.projectors[k] = ps.bases[k] * ps.bases[k].adjoint();
  return ps;
}

std::array<ComplexMatrix, 3> algebraic_peirce_projectors(const AtomicTriple& t, const Element& e) {
  const ComplexMatrix l = t.multiplication_operator(e, e);
  const ComplexMatrix q2 = quadratic_squared(t, e);
  const ComplexMatrix id = ComplexMatrix::Identity(t.dimension(), t.dimension());
  return {id - 2.0 * l + q2, 2.0 * (l - q2), q2};
}

bool is_tripotent(const AtomicTriple& t, const Element& x, const Tolerance& tol) {
  t.validate(x, Tolerance{1e-6, 1e-6});
  const double residual = t.norm(t.triple_product(x, x, x) - x);
  return residual <= tripotent_threshold(tol, t.norm(x));
}

bool in_peirce_space(const AtomicTriple& t, const Element& u, int k, const Element& x,
                     const Tolerance& tol) {
  const Element defect = t.triple_product(u, u, x) - Complex(0.5 * k, 0.0) * x;
  return tol.negligible(t.norm(defect), std::max(1.0, t.norm(x)));
}

Tripotent::Tripotent(const AtomicTriple& t, Element e, const Tolerance& tol)
    : t_(t), e_(std::move(e)) {
  t_.validate(e_, Tolerance{1e-6, 1e-6});
  const double residual = t_.norm(t_.triple_product(e_, e_, e_) - e_);
  if (residual > tripotent_threshold(tol, t_.norm(e_))) {
    std::ostringstream os;
    os << "‖{e,e,e} − e‖ = " << residual;
    throw Error(ErrorKind::NotTripotent, os.str());
  }
  home_ = t_.home_summand(e_, 1e-10);
  peirce_ = peirce_decompose(t_, e_, tol);
  if (peirce_.dim(2) == 0) {
    rank_ = 0;
  } else if (peirce_.dim(2) == 1) {
    rank_ = 1;
  } else {
    rank_ = compute_rank(t_, e_, peirce_);
  }
}

Element Tripotent::project(int k, const Element& x) const {
  return t_.from_coordinates(peirce_.projectors.at(static_cast<std::size_t>(k)) * t_.coordinates(x));
}

const PeirceSystem& peirce_decompose(const AtomicTriple& t, const Tripotent& e) {
  if (!(t == e.triple())) throw Error(ErrorKind::ShapeMismatch, "tripotent belongs to another triple");
  return e.peirce();
}

bool are_orthogonal(const AtomicTriple& t, const Element& e, const Element& v, const Tolerance& tol) {
  return tol.negligible(t.norm(t.triple_product(e, e, v)), std::max(1.0, t.norm(v)));
}

RelationFlags classify_relation(const AtomicTriple& t, const Tripotent& e, const Tripotent& v,
                                const Tolerance& tol) {
  const Element& x = e.element();
  const Element& y = v.element();
  RelationFlags f;
  f.orthogonal = are_orthogonal(t, x, y, tol);
  const Element diff = y - x;
  f.leq = is_tripotent(t, diff, tol) && are_orthogonal(t, diff, x, tol);
  f.collinear = in_peirce_space(t, y, 1, x, tol) && in_peirce_space(t, x, 1, y, tol);
  f.governs_ev = in_peirce_space(t, x, 2, y, tol) && in_peirce_space(t, y, 1, x, tol);
  f.governs_ve = in_peirce_space(t, y, 2, x, tol) && in_peirce_space(t, x, 1, y, tol);
  return f;
}

Tripotent sample_minimal_tripotent(const AtomicTriple& t, std::size_t summand, std::uint64_t seed) {
  const FactorDescriptor& f = t.summand(summand);
  Rng rng(seed);
  ComplexMatrix block;
  switch (f.kind) {
    case FactorKind::Rectangular: {
      const ComplexVector xi = rng.unit_vector(f.p);
      const ComplexVector eta = rng.unit_vector(f.q);
      block = xi * eta.adjoint();
      break;
    }
    case FactorKind::Antisymmetric: {
      if (f.p < 2) throw Error(ErrorKind::DimensionTooSmall, "type 2 needs n >= 2");
      const ComplexMatrix u = rng.unitary(f.p);
      ComplexMatrix j = ComplexMatrix::Zero(f.p, f.p);
      j(0, 1) = 1.0;
      j(1, 0) = -1.0;
      block = u * j * u.transpose();
      break;
    }
    case FactorKind::Symmetric: {
      const ComplexVector xi = rng.unit_vector(f.p);
      block = xi * xi.transpose();
      break;
    }
    case FactorKind::Spin: {
      const RealVector a = rng.real_unit_vector(f.p);
      RealVector b = rng.real_unit_vector(f.p);
      b -= a.dot(b) * a;
      b.normalize();
      block = ComplexMatrix(f.p, 1);
      for (int i = 0; i < f.p; ++i) block(i, 0) = Complex(a(i), b(i)) * 0.5;
      break;
    }
  }
  Tripotent out(t, t.embed(summand, block));
  if (!out.minimal()) {
    throw Error(ErrorKind::NotMinimal, "sampled tripotent is not minimal in " + f.label());
  }
  return out;
}

Element dominant_tripotent(const AtomicTriple& t, const Element& x, int max_iterations) {
  const double n0 = t.norm(x);
  if (n0 == 0.0) throw Error(ErrorKind::DecompositionFailed, "dominant tripotent of zero");
  Element y = x * Complex(1.0 / n0, 0.0);
  for (int it = 0; it < max_iterations; ++it) {
    // Re-projecting keeps rounding noise from growing out of type 2/3 blocks,
    // whose top singular values can be degenerate in the ambient matrix space.
    Element z = t.from_coordinates(t.coordinates(t.triple_product(y, y, y)));
    z *= Complex(1.0 / t.norm(z), 0.0);
    const double step = t.norm(z - y);
    y = std::move(z);
    if (step < 1e-15) break;
  }
  return y;
}

Tripotent sample_orthogonal_minimal(const AtomicTriple& t, const Tripotent& e, std::size_t summand,
                                    std::uint64_t seed) {
  Rng rng(seed);
  const Element x = t.random_element_in(summand, rng);
  const Element y = e.project(0, x);
  if (t.norm(y) < 1e-10) {
    throw Error(ErrorKind::DimensionTooSmall,
                "no room for a minimal tripotent orthogonal to e in " + t.summand(summand).label());
  }
  Tripotent out(t, dominant_tripotent(t, y));
  if (!out.minimal()) throw Error(ErrorKind::NotMinimal, "orthogonal sample is not minimal");
  return out;
}

std::optional<Tripotent> sample_collinear_minimal(const AtomicTriple& t, const Tripotent& e,
                                                  std::uint64_t seed) {
  if (e.home_summand() < 0) return std::nullopt;
  const auto home = static_cast<std::size_t>(e.home_summand());
  Rng rng(seed);
  for (int attempt = 0; attempt < 3; ++attempt) {
    const Element y = e.project(1, t.random_element_in(home, rng));
    if (t.norm(y) < 1e-10) return std::nullopt;
    try {
      Tripotent out(t, dominant_tripotent(t, y));
      if (out.minimal() && classify_relation(t, e, out).collinear) return out;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

int tripotent_rank(const AtomicTriple& t, const Tripotent& e) {
  if (!(t == e.triple())) throw Error(ErrorKind::ShapeMismatch, "tripotent belongs to another triple");
  return e.rank();
}

}  // namespace triplelab
