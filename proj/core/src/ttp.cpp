#include "triplelab/ttp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "triplelab/error.hpp"

namespace triplelab {

namespace {

void require_minimal(const Tripotent& e, const char* what) {
  if (!e.minimal()) {
    std::ostringstream os;
    os << what << " is not minimal (dim E2 = " << e.peirce().dim(2) << ")";
    throw Error(ErrorKind::NotMinimal, os.str());
  }
}

void require_projection(const AtomicTriple& t, const Tripotent& p, const Tolerance& tol) {
  require_minimal(p, "projection");
  const int home = p.home_summand();
  if (home < 0) throw Error(ErrorKind::NotAProjection, "element is not supported on one summand");
  const FactorDescriptor& f = t.summand(static_cast<std::size_t>(home));
  if (f.kind != FactorKind::Rectangular || f.p != f.q) {
    throw Error(ErrorKind::NotAProjection, f.label() + " is not a square type 1 factor");
  }
  const ComplexMatrix& m = p.element().blocks[static_cast<std::size_t>(home)];
  const double scale = std::max(1.0, m.norm());
  if (!tol.negligible((m - m.adjoint()).norm(), scale) || !tol.negligible((m * m - m).norm(), scale)) {
    throw Error(ErrorKind::NotAProjection, "p is not self-adjoint and idempotent");
  }
}

}  // namespace

Complex pure_atom_value(const AtomicTriple& t, const Tripotent& e, const Element& x) {
  require_minimal(e, "e");
  const ComplexVector ec = t.coordinates(e.element());
  const ComplexVector p2x = e.peirce().projectors[2] * t.coordinates(x);
  return ec.dot(p2x) / ec.squaredNorm();
}

Complex ttp(const AtomicTriple& t, const Tripotent& e, const Tripotent& v) {
  require_minimal(e, "e");
  require_minimal(v, "v");
  if (e.home_summand() != v.home_summand()) return Complex(0.0, 0.0);
  return pure_atom_value(t, v, e.element());
}

double gap_distance(const AtomicTriple& t, const Element& e, const Element& v) {
  return t.norm(e - v);
}

double gap_formula(const AtomicTriple& t, const Tripotent& e, const Tripotent& v, const Tolerance& tol) {
  const double a = 1.0 - ttp(t, v, e).real();
  const double p0 = t.norm(e.project(0, v.element()));
  const double radicand = a * a - p0 * p0;
  if (radicand < -std::max(tol.abs_tol, tol.rel_tol)) {
    std::ostringstream os;
    os << "gap formula radicand " << radicand << " is negative";
    throw Error(ErrorKind::NegativeRadicand, os.str());
  }
  return std::sqrt(std::max(0.0, a + std::sqrt(std::max(0.0, radicand))));
}

double wigner_transition_probability(const AtomicTriple& t, const Tripotent& p, const Tripotent& q,
                                     const Tolerance& tol) {
  require_projection(t, p, tol);
  require_projection(t, q, tol);
  if (p.home_summand() != q.home_summand()) return 0.0;
  const auto home = static_cast<std::size_t>(p.home_summand());
  const Complex tr = (p.element().blocks[home] * q.element().blocks[home]).trace();
  return std::clamp(tr.real(), 0.0, 1.0);
}

}  // namespace triplelab
