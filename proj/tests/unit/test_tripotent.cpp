#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triplelab/error.hpp"
#include "triplelab/random.hpp"
#include "triplelab/tripotent.hpp"

using namespace triplelab;

namespace {

AtomicTriple single(FactorDescriptor f) { return AtomicTriple({f}); }

Element unit_el(const AtomicTriple& t, int i, int j) {
  const auto& f = t.summand(0);
  return t.embed(0, oracle::unit(f.p, f.q, i, j));
}

Element spin_el(const AtomicTriple& t, std::vector<Complex> v) {
  ComplexMatrix b(static_cast<Eigen::Index>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) b(static_cast<Eigen::Index>(i), 0) = v[i];
  return t.embed(0, b);
}

std::vector<AtomicTriple> all_types() {
  return {single(FactorDescriptor::rectangular(2, 3)), single(FactorDescriptor::rectangular(3, 3)),
          single(FactorDescriptor::antisymmetric(4)),  single(FactorDescriptor::antisymmetric(5)),
          single(FactorDescriptor::symmetric(3)),      single(FactorDescriptor::spin(3)),
          single(FactorDescriptor::spin(4))};
}

}  // namespace

TEST(IsTripotent, Examples) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Element e11 = unit_el(t, 0, 0);
  EXPECT_TRUE(is_tripotent(t, e11));
  EXPECT_TRUE(is_tripotent(t, t.zero()));
  EXPECT_FALSE(is_tripotent(t, Complex(2.0, 0.0) * e11));
  EXPECT_TRUE(is_tripotent(t, Complex(0.0, 1.0) * e11));
  EXPECT_THROW(Tripotent(t, Complex(0.5, 0.0) * e11), Error);
  try {
    Tripotent(t, Complex(0.5, 0.0) * e11);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTripotent);
  }
}

TEST(Peirce, MatrixUnitDimensions) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Tripotent e(t, unit_el(t, 0, 0));
  EXPECT_EQ(e.peirce().dim(2), 1);
  EXPECT_EQ(e.peirce().dim(1), 2);
  EXPECT_EQ(e.peirce().dim(0), 1);
  EXPECT_TRUE(e.minimal());
  EXPECT_FALSE(e.complete());
  EXPECT_EQ(e.rank(), 1);

  const Tripotent id(t, unit_el(t, 0, 0) + unit_el(t, 1, 1));
  EXPECT_EQ(id.peirce().dim(2), 4);
  EXPECT_TRUE(id.complete());
  EXPECT_EQ(id.rank(), 2);

  const auto r = single(FactorDescriptor::rectangular(2, 3));
  const Tripotent e23(r, unit_el(r, 0, 0));
  EXPECT_EQ(e23.peirce().dim(2), 1);
  EXPECT_EQ(e23.peirce().dim(1), 3);
  EXPECT_EQ(e23.peirce().dim(0), 2);
}

TEST(Peirce, SpinExamples) {
  const auto t = single(FactorDescriptor::spin(2));
  const Tripotent m(t, spin_el(t, {0.5, Complex(0, 0.5)}));
  EXPECT_EQ(m.peirce().dim(2), 1);
  EXPECT_TRUE(m.minimal());
  const Tripotent full(t, spin_el(t, {1.0, 0.0}));
  EXPECT_TRUE(full.complete());
  EXPECT_EQ(full.rank(), 2);
  const Tripotent phased(t, spin_el(t, {Complex(0.6, 0.8), 0.0}));
  EXPECT_EQ(phased.rank(), 2);
}

TEST(Peirce, AlgebraicProjectorsAgreeWithSpectral) {
  for (const auto& t : all_types()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Tripotent e = sample_minimal_tripotent(t, 0, seed);
      const auto alg = algebraic_peirce_projectors(t, e.element());
      for (int k = 0; k < 3; ++k) {
        EXPECT_LT((alg[static_cast<std::size_t>(k)] - e.peirce().projectors[static_cast<std::size_t>(k)]).norm(), 1e-9)
            << t.label() << " k=" << k;
      }
      // L(e,e) from brute force on type 1 has the same spectrum.
      if (t.summand(0).kind == FactorKind::Rectangular) {
        const auto ev = oracle::jacobi_eigenvalues(oracle::brute_force_L(e.element().blocks[0]));
        int twos = 0;
        for (double v : ev) twos += std::abs(v - 1.0) < 1e-9 ? 1 : 0;
        EXPECT_EQ(twos, 1);
      }
    }
  }
}

TEST(Peirce, ArithmeticRules) {
  for (const auto& t : all_types()) {
    const Tripotent e = sample_minimal_tripotent(t, 0, 3);
    Rng rng(5);
    std::array<Element, 3> parts;
    for (int k = 0; k < 3; ++k) parts[static_cast<std::size_t>(k)] = e.project(k, t.random_element(rng));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const Element p = t.triple_product(parts[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(j)],
                                             parts[static_cast<std::size_t>(k)]);
          const int target = i - j + k;
          if (target < 0 || target > 2) {
            EXPECT_LT(t.norm(p), 1e-10) << t.label() << " " << i << j << k;
          } else {
            EXPECT_TRUE(in_peirce_space(t, e.element(), target, p, Tolerance{1e-9, 1e-9})) << t.label();
          }
        }
    EXPECT_LT(t.norm(t.triple_product(parts[2], parts[0], t.random_element(rng))), 1e-10);
  }
}

TEST(Relations, MatrixUnits) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Tripotent e11(t, unit_el(t, 0, 0));
  const Tripotent e22(t, unit_el(t, 1, 1));
  const Tripotent e12(t, unit_el(t, 0, 1));
  const Tripotent id(t, unit_el(t, 0, 0) + unit_el(t, 1, 1));
  const Tripotent flip(t, unit_el(t, 0, 1) + unit_el(t, 1, 0));

  const auto orth = classify_relation(t, e11, e22);
  EXPECT_TRUE(orth.orthogonal);
  EXPECT_FALSE(orth.collinear);
  EXPECT_TRUE(classify_relation(t, e11, e12).collinear);
  EXPECT_FALSE(classify_relation(t, e11, e12).orthogonal);
  EXPECT_TRUE(classify_relation(t, e11, id).leq);
  EXPECT_FALSE(classify_relation(t, e11, e12).leq);
  EXPECT_TRUE(classify_relation(t, flip, e11).governs_ev);
  EXPECT_TRUE(classify_relation(t, e11, flip).governs_ve);
  EXPECT_TRUE(are_orthogonal(t, e11.element(), e22.element()));
}

TEST(Relations, OrthogonalMinimalsAddInNorm) {
  for (const auto& t : all_types()) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Tripotent e = sample_minimal_tripotent(t, 0, seed);
      const Tripotent v = sample_orthogonal_minimal(t, e, 0, seed + 100);
      EXPECT_TRUE(are_orthogonal(t, e.element(), v.element()));
      EXPECT_TRUE(are_orthogonal(t, v.element(), e.element()));
      EXPECT_NEAR(t.norm(e.element() + v.element()), 1.0, 1e-9);
      EXPECT_NEAR(t.norm(e.element() - v.element()), 1.0, 1e-9);
      const Tripotent sum(t, e.element() + v.element());
      EXPECT_EQ(sum.rank(), 2);
    }
  }
}

TEST(Samplers, MinimalForEveryType) {
  for (const auto& t : all_types()) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Tripotent e = sample_minimal_tripotent(t, 0, seed);
      EXPECT_TRUE(e.minimal()) << t.label();
      EXPECT_EQ(e.rank(), 1);
      EXPECT_NEAR(t.norm(e.element()), 1.0, 1e-12);
      const auto& f = t.summand(0);
      if (f.kind == FactorKind::Antisymmetric) {
        EXPECT_EQ(oracle::matrix_rank(e.element().blocks[0]), 2);
      } else if (f.kind != FactorKind::Spin) {
        EXPECT_EQ(oracle::matrix_rank(e.element().blocks[0]), 1);
      }
    }
    const Tripotent e1 = sample_minimal_tripotent(t, 0, 1);
    const Tripotent e2 = sample_minimal_tripotent(t, 0, 1);
    EXPECT_EQ(e1.element().blocks[0], e2.element().blocks[0]);
  }
}

TEST(Samplers, CollinearExistsOutsideSymmetricShapes) {
  for (const auto& t : all_types()) {
    const Tripotent e = sample_minimal_tripotent(t, 0, 8);
    const auto v = sample_collinear_minimal(t, e, 9);
    // Type4{3} is the symmetric 2×2 factor in disguise.
    const auto& f = t.summand(0);
    if (f.kind == FactorKind::Symmetric || (f.kind == FactorKind::Spin && f.n() == 3)) {
      EXPECT_FALSE(v.has_value());
    } else {
      ASSERT_TRUE(v.has_value()) << t.label();
      EXPECT_TRUE(classify_relation(t, e, *v).collinear);
      EXPECT_TRUE(v->minimal());
    }
  }
}

TEST(Samplers, NoRoomForOrthogonal) {
  const auto t = single(FactorDescriptor::rectangular(1, 3));
  const Tripotent e = sample_minimal_tripotent(t, 0, 1);
  try {
    sample_orthogonal_minimal(t, e, 0, 2);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::DimensionTooSmall);
  }
  const AtomicTriple two({FactorDescriptor::rectangular(1, 3), FactorDescriptor::spin(3)});
  const Tripotent e0 = sample_minimal_tripotent(two, 0, 1);
  const Tripotent v = sample_orthogonal_minimal(two, e0, 1, 2);
  EXPECT_EQ(v.home_summand(), 1);
  EXPECT_TRUE(are_orthogonal(two, e0.element(), v.element()));
}

TEST(Rank, AgreesWithMatrixRank) {
  const auto t4 = single(FactorDescriptor::antisymmetric(4));
  Element a = t4.zero();
  a.blocks[0] = oracle::unit(4, 4, 0, 1) - oracle::unit(4, 4, 1, 0) + oracle::unit(4, 4, 2, 3) -
                oracle::unit(4, 4, 3, 2);
  const Tripotent full(t4, a);
  EXPECT_EQ(full.rank(), 2);
  EXPECT_EQ(oracle::matrix_rank(a.blocks[0]) / 2, 2);
  EXPECT_TRUE(full.complete());

  const auto t3 = single(FactorDescriptor::rectangular(3, 4));
  Rng rng(3);
  for (int r = 1; r <= 3; ++r) {
    const ComplexMatrix u = rng.unitary(3);
    const ComplexMatrix w = rng.unitary(4);
    ComplexMatrix d = ComplexMatrix::Zero(3, 4);
    for (int i = 0; i < r; ++i) d(i, i) = 1.0;
    const Tripotent e(t3, t3.embed(0, u * d * w));
    EXPECT_EQ(e.rank(), r);
    EXPECT_EQ(tripotent_rank(t3, e), oracle::matrix_rank(u * d * w));
  }

  const auto s3 = single(FactorDescriptor::symmetric(3));
  const ComplexMatrix u = rng.unitary(3);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 1.0;
  const Tripotent sym(s3, s3.embed(0, u * d * u.transpose()));
  EXPECT_EQ(sym.rank(), 2);
}

TEST(Dominant, TopSingularPair) {
  const auto t = single(FactorDescriptor::rectangular(3, 3));
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Element x = t.random_element(rng, false);
    const Element d = dominant_tripotent(t, x);
    EXPECT_TRUE(is_tripotent(t, d, Tolerance{1e-8, 1e-8}));
    Eigen::JacobiSVD<ComplexMatrix> svd(x.blocks[0], Eigen::ComputeFullU | Eigen::ComputeFullV);
    const ComplexMatrix expected = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
    EXPECT_LT((d.blocks[0] - expected).norm(), 1e-6);
  }
  const auto s = single(FactorDescriptor::spin(4));
  const Element d = dominant_tripotent(s, s.random_element(rng));
  EXPECT_TRUE(Tripotent(s, d, Tolerance{1e-8, 1e-8}).minimal());
}
