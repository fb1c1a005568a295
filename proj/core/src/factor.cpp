#include "triplelab/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "triplelab/error.hpp"
#include "triplelab/random.hpp"

namespace triplelab {

namespace {

constexpr int kMaxFactorDimension = 64;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

ComplexVector block_coordinates(const FactorDescriptor& f, const ComplexMatrix& x) {
  const int n = f.p;
  ComplexVector c(f.dimension());
  switch (f.kind) {
    case FactorKind::Rectangular: {
      Eigen::Index k = 0;
      for (int i = 0; i < f.p; ++i)
        for (int j = 0; j < f.q; ++j) c(k++) = x(i, j);
      break;
    }
    case FactorKind::Antisymmetric: {
      Eigen::Index k = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c(k++) = (x(i, j) - x(j, i)) * kInvSqrt2;
      break;
    }
    case FactorKind::Symmetric: {
      Eigen::Index k = 0;
      for (int i = 0; i < n; ++i) {
        c(k++) = x(i, i);
        for (int j = i + 1; j < n; ++j) c(k++) = (x(i, j) + x(j, i)) * kInvSqrt2;
      }
      break;
    }
    case FactorKind::Spin:
      c = x.col(0);
      break;
  }
  return c;
}

ComplexMatrix block_from_coordinates(const FactorDescriptor& f, const ComplexVector& c) {
  const int n = f.p;
  ComplexMatrix x = ComplexMatrix::Zero(f.block_rows(), f.block_cols());
  switch (f.kind) {
    case FactorKind::Rectangular: {
      Eigen::Index k = 0;
      for (int i = 0; i < f.p; ++i)
        for (int j = 0; j < f.q; ++j) x(i, j) = c(k++);
      break;
    }
    case FactorKind::Antisymmetric: {
      Eigen::Index k = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          x(i, j) = c(k) * kInvSqrt2;
          x(j, i) = -c(k) * kInvSqrt2;
          ++k;
        }
      break;
    }
    case FactorKind::Symmetric: {
      Eigen::Index k = 0;
      for (int i = 0; i < n; ++i) {
        x(i, i) = c(k++);
        for (int j = i + 1; j < n; ++j) {
          x(i, j) = c(k) * kInvSqrt2;
          x(j, i) = c(k) * kInvSqrt2;
          ++k;
        }
      }
      break;
    }
    case FactorKind::Spin:
      x.col(0) = c;
      break;
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// FactorDescriptor

FactorDescriptor FactorDescriptor::rectangular(int p, int q) {
  FactorDescriptor f{FactorKind::Rectangular, p, q};
  f.validate();
  return f;
}

FactorDescriptor FactorDescriptor::antisymmetric(int n) {
  FactorDescriptor f{FactorKind::Antisymmetric, n, n};
  f.validate();
  return f;
}

FactorDescriptor FactorDescriptor::symmetric(int n) {
  FactorDescriptor f{FactorKind::Symmetric, n, n};
  f.validate();
  return f;
}

FactorDescriptor FactorDescriptor::spin(int n) {
  FactorDescriptor f{FactorKind::Spin, n, 1};
  f.validate();
  return f;
}

void FactorDescriptor::validate() const {
  std::ostringstream os;
  switch (kind) {
    case FactorKind::Rectangular:
      if (p < 1 || q < 1) os << "type 1 needs p, q >= 1";
      break;
    case FactorKind::Antisymmetric:
      if (p < 2) os << "type 2 needs n >= 2";
      else if (q != p) os << "type 2 must be square";
      break;
    case FactorKind::Symmetric:
      if (p < 1) os << "type 3 needs n >= 1";
      else if (q != p) os << "type 3 must be square";
      break;
    case FactorKind::Spin:
      if (p < 2) os << "type 4 needs n >= 2";
      else if (q != 1) os << "type 4 blocks are column vectors";
      break;
    default:
      os << "unknown factor type " << static_cast<int>(kind);
  }
  if (os.str().empty() && (p > kMaxFactorDimension || q > kMaxFactorDimension ||
                           dimension() > kMaxFactorDimension)) {
    os << label() << " exceeds the " << kMaxFactorDimension << "-dimensional cap";
  }
  if (!os.str().empty()) {
    const bool too_small = (kind == FactorKind::Antisymmetric || kind == FactorKind::Spin) && p < 2;
    throw Error(too_small ? ErrorKind::DimensionTooSmall : ErrorKind::InvalidDescriptor, os.str());
  }
}

int FactorDescriptor::rank() const noexcept {
  switch (kind) {
    case FactorKind::Rectangular: return std::min(p, q);
    case FactorKind::Antisymmetric: return p / 2;
    case FactorKind::Symmetric: return p;
    case FactorKind::Spin: return 2;
  }
  return 0;
}

int FactorDescriptor::dimension() const noexcept {
  switch (kind) {
    case FactorKind::Rectangular: return p * q;
    case FactorKind::Antisymmetric: return p * (p - 1) / 2;
    case FactorKind::Symmetric: return p * (p + 1) / 2;
    case FactorKind::Spin: return p;
  }
  return 0;
}

std::string FactorDescriptor::label() const {
  std::ostringstream os;
  os << "Type" << type_number() << "{" << p;
  if (kind == FactorKind::Rectangular) os << "," << q;
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Element

Element& Element::operator+=(const Element& other) {
  if (blocks.size() != other.blocks.size()) {
    throw Error(ErrorKind::ShapeMismatch, "element summand counts differ");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rows() != other.blocks[i].rows() || blocks[i].cols() != other.blocks[i].cols()) {
      throw Error(ErrorKind::ShapeMismatch, "element block shapes differ");
    }
    blocks[i] += other.blocks[i];
  }
  return *this;
}

Element& Element::operator-=(const Element& other) {
  if (blocks.size() != other.blocks.size()) {
    throw Error(ErrorKind::ShapeMismatch, "element summand counts differ");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rows() != other.blocks[i].rows() || blocks[i].cols() != other.blocks[i].cols()) {
      throw Error(ErrorKind::ShapeMismatch, "element block shapes differ");
    }
    blocks[i] -= other.blocks[i];
  }
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& b : blocks) b *= s;
  return *this;
}

// ---------------------------------------------------------------------------
// Per-factor kernels

ComplexMatrix factor_triple_product(const FactorDescriptor& f, const ComplexMatrix& x,
                                    const ComplexMatrix& y, const ComplexMatrix& z) {
  if (f.kind == FactorKind::Spin) {
    // ⟨a, b⟩ = Σ a_i conj(b_i); ⟨x, z̄⟩ = Σ x_i z_i.
    const Complex xy = y.col(0).dot(x.col(0));
    const Complex zy = y.col(0).dot(z.col(0));
    const Complex xzbar = (x.col(0).array() * z.col(0).array()).sum();
    return xy * z + zy * x - xzbar * y.conjugate();
  }
  const ComplexMatrix ys = y.adjoint();
  return 0.5 * (x * ys * z + z * ys * x);
}

double factor_norm(const FactorDescriptor& f, const ComplexMatrix& x) {
  if (f.kind == FactorKind::Spin) {
    // ⟨x,x⟩² − |⟨x,x̄⟩|² = 4‖a∧b‖² for x = a + ib; the wedge form avoids
    // cancellation near complete tripotents.
    const double xx = x.col(0).squaredNorm();
    double wedge = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
      for (Eigen::Index j = i + 1; j < x.rows(); ++j) {
        const double w = x(i, 0).real() * x(j, 0).imag() - x(j, 0).real() * x(i, 0).imag();
        wedge += w * w;
      }
    return std::sqrt(xx + 2.0 * std::sqrt(wedge));
  }
  return operator_norm(x);
}

// ---------------------------------------------------------------------------
// AtomicTriple

AtomicTriple::AtomicTriple(std::vector<FactorDescriptor> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) {
    throw Error(ErrorKind::InvalidDescriptor, "an atomic triple needs at least one summand");
  }
  offsets_.reserve(summands_.size() + 1);
  offsets_.push_back(0);
  for (const auto& f : summands_) {
    f.validate();
    offsets_.push_back(offsets_.back() + f.dimension());
  }
}

std::string AtomicTriple::label() const {
  std::string out;
  for (const auto& f : summands_) {
    if (!out.empty()) out += "+";
    out += f.label();
  }
  return out;
}

Element AtomicTriple::zero() const {
  Element x;
  x.blocks.reserve(summands_.size());
  for (const auto& f : summands_) x.blocks.push_back(ComplexMatrix::Zero(f.block_rows(), f.block_cols()));
  return x;
}

void AtomicTriple::validate(const Element& x, const Tolerance& tol) const {
  if (x.blocks.size() != summands_.size()) {
    std::ostringstream os;
    os << "expected " << summands_.size() << " blocks, got " << x.blocks.size();
    throw Error(ErrorKind::ShapeMismatch, os.str());
  }
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const auto& f = summands_[i];
    const auto& b = x.blocks[i];
    if (b.rows() != f.block_rows() || b.cols() != f.block_cols()) {
      std::ostringstream os;
      os << "summand " << i << " (" << f.label() << ") expects a " << f.block_rows() << "x"
         << f.block_cols() << " block, got " << b.rows() << "x" << b.cols();
      throw Error(ErrorKind::ShapeMismatch, os.str());
    }
    if (!b.allFinite()) {
      throw Error(ErrorKind::NotMember, "summand " + std::to_string(i) + " has non-finite entries");
    }
    double defect = 0.0;
    if (f.kind == FactorKind::Antisymmetric) defect = (b + b.transpose()).norm();
    if (f.kind == FactorKind::Symmetric) defect = (b - b.transpose()).norm();
    if (!tol.negligible(defect, b.norm())) {
      std::ostringstream os;
      os << "summand " << i << " violates the " << f.label() << " symmetry by " << defect;
      throw Error(ErrorKind::NotMember, os.str());
    }
  }
}

bool AtomicTriple::contains(const Element& x, const Tolerance& tol) const {
  try {
    validate(x, tol);
    return true;
  } catch (const Error&) {
    return false;
  }
}

ComplexVector AtomicTriple::coordinates(const Element& x) const {
  if (x.blocks.size() != summands_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "coordinates: summand count mismatch");
  }
  ComplexVector c(dimension());
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const auto& f = summands_[i];
    if (x.blocks[i].rows() != f.block_rows() || x.blocks[i].cols() != f.block_cols()) {
      throw Error(ErrorKind::ShapeMismatch, "coordinates: block shape mismatch in summand " +
                                                std::to_string(i));
    }
    c.segment(offsets_[i], f.dimension()) = block_coordinates(f, x.blocks[i]);
  }
  return c;
}

Element AtomicTriple::from_coordinates(const ComplexVector& c) const {
  if (c.size() != dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "from_coordinates: wrong coordinate count");
  }
  Element x;
  x.blocks.reserve(summands_.size());
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const auto& f = summands_[i];
    x.blocks.push_back(block_from_coordinates(f, c.segment(offsets_[i], f.dimension())));
  }
  return x;
}

Element AtomicTriple::basis_element(Eigen::Index k) const {
  ComplexVector c = ComplexVector::Zero(dimension());
  c(k) = 1.0;
  return from_coordinates(c);
}

Element AtomicTriple::triple_product(const Element& x, const Element& y, const Element& z) const {
  validate(x, Tolerance{1e-6, 1e-6});
  validate(y, Tolerance{1e-6, 1e-6});
  validate(z, Tolerance{1e-6, 1e-6});
  Element out;
  out.blocks.reserve(summands_.size());
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    out.blocks.push_back(factor_triple_product(summands_[i], x.blocks[i], y.blocks[i], z.blocks[i]));
  }
  return out;
}

double AtomicTriple::norm(const Element& x) const {
  if (x.blocks.size() != summands_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "norm: summand count mismatch");
  }
  double out = 0.0;
  for (std::size_t i = 0; i < summands_.size(); ++i) out = std::max(out, summand_norm(x, i));
  return out;
}

double AtomicTriple::summand_norm(const Element& x, std::size_t summand) const {
  const auto& f = summands_.at(summand);
  const auto& b = x.blocks.at(summand);
  if (b.rows() != f.block_rows() || b.cols() != f.block_cols()) {
    throw Error(ErrorKind::ShapeMismatch, "norm: block shape mismatch");
  }
  return factor_norm(f, b);
}

Complex AtomicTriple::inner(const Element& x, const Element& y) const {
  return coordinates(y).dot(coordinates(x));
}

ComplexMatrix AtomicTriple::multiplication_operator(const Element& a, const Element& b) const {
  validate(a, Tolerance{1e-6, 1e-6});
  validate(b, Tolerance{1e-6, 1e-6});
  // Block diagonal: summands do not interact.
  const Eigen::Index d = dimension();
  ComplexMatrix op = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    const auto& f = summands_[i];
    const Eigen::Index di = f.dimension();
    for (Eigen::Index k = 0; k < di; ++k) {
      ComplexVector unit = ComplexVector::Zero(di);
      unit(k) = 1.0;
      const ComplexMatrix xk = block_from_coordinates(f, unit);
      const ComplexMatrix image = factor_triple_product(f, a.blocks[i], b.blocks[i], xk);
      op.block(offsets_[i], offsets_[i] + k, di, 1) = block_coordinates(f, image);
    }
  }
  return op;
}

ComplexMatrix AtomicTriple::multiplication_operator(const Element& a, const Element& b,
                                                    const TripleProductFn& product) const {
  const Eigen::Index d = dimension();
  ComplexMatrix op(d, d);
  for (Eigen::Index k = 0; k < d; ++k) op.col(k) = coordinates(product(a, b, basis_element(k)));
  return op;
}

Element AtomicTriple::quadratic(const Element& a, const Element& x) const {
  return triple_product(a, x, a);
}

Element AtomicTriple::embed(std::size_t summand, const ComplexMatrix& block) const {
  Element x = zero();
  if (block.rows() != x.blocks.at(summand).rows() || block.cols() != x.blocks.at(summand).cols()) {
    throw Error(ErrorKind::ShapeMismatch, "embed: block shape mismatch");
  }
  x.blocks[summand] = block;
  return x;
}

int AtomicTriple::home_summand(const Element& x, double threshold) const {
  int home = -1;
  for (std::size_t i = 0; i < summands_.size(); ++i) {
    if (x.blocks.at(i).norm() > threshold) {
      if (home >= 0) return -1;
      home = static_cast<int>(i);
    }
  }
  return home;
}

Element AtomicTriple::random_element(Rng& rng, bool normalize) const {
  Element x = from_coordinates(rng.complex_gaussian_vector(dimension()));
  if (normalize) {
    const double n = norm(x);
    if (n > 0.0) x *= Complex(1.0 / n, 0.0);
  }
  return x;
}

Element AtomicTriple::random_element_in(std::size_t summand, Rng& rng, bool normalize) const {
  const auto& f = summands_.at(summand);
  Element x = zero();
  x.blocks[summand] = block_from_coordinates(f, rng.complex_gaussian_vector(f.dimension()));
  if (normalize) {
    const double n = norm(x);
    if (n > 0.0) x *= Complex(1.0 / n, 0.0);
  }
  return x;
}

}  // namespace triplelab
