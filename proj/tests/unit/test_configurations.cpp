#include <cmath>
#include <variant>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triplelab/configurations.hpp"
#include "triplelab/error.hpp"
#include "triplelab/random.hpp"
#include "triplelab/ttp.hpp"

using namespace triplelab;

namespace {

AtomicTriple single(FactorDescriptor f) { return AtomicTriple({f}); }

Element unit_el(const AtomicTriple& t, int i, int j, Complex s = 1.0) {
  const auto& f = t.summand(0);
  return t.embed(0, s * oracle::unit(f.p, f.q, i, j));
}

std::vector<AtomicTriple> all_types() {
  return {single(FactorDescriptor::rectangular(2, 2)), single(FactorDescriptor::rectangular(2, 3)),
          single(FactorDescriptor::rectangular(3, 3)), single(FactorDescriptor::antisymmetric(4)),
          single(FactorDescriptor::antisymmetric(5)),  single(FactorDescriptor::symmetric(2)),
          single(FactorDescriptor::symmetric(3)),      single(FactorDescriptor::spin(3)),
          single(FactorDescriptor::spin(4)),           single(FactorDescriptor::spin(6)),
          single(FactorDescriptor::rectangular(1, 4))};
}

}  // namespace

TEST(Quadrangle, MatrixUnitExamples) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Element e11 = unit_el(t, 0, 0), e12 = unit_el(t, 0, 1), e22 = unit_el(t, 1, 1), e21 = unit_el(t, 1, 0);
  EXPECT_TRUE(is_quadrangle(t, e11, e12, e22, e21));
  EXPECT_FALSE(is_quadrangle(t, e11, e12, e22, -e21));
  EXPECT_FALSE(is_quadrangle(t, e11, e22, e12, e21));
  EXPECT_TRUE(is_quadrangle(t, e12, e22, e21, e11));
}

TEST(Quadrangle, CyclicPermutationOfRandomQuadrangles) {
  const auto t = single(FactorDescriptor::rectangular(3, 4));
  Rng rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexMatrix u = rng.unitary(3), w = rng.unitary(4);
    auto m = [&](int i, int j) { return t.embed(0, u * oracle::unit(3, 4, i, j) * w); };
    std::array<Element, 4> q = {m(0, 0), m(0, 1), m(1, 1), m(1, 0)};
    for (int shift = 0; shift < 4; ++shift) {
      EXPECT_TRUE(is_quadrangle(t, q[static_cast<std::size_t>(shift % 4)], q[static_cast<std::size_t>((shift + 1) % 4)],
                                q[static_cast<std::size_t>((shift + 2) % 4)], q[static_cast<std::size_t>((shift + 3) % 4)]));
    }
  }
}

TEST(Trangle, SymmetricExample) {
  const auto t = single(FactorDescriptor::symmetric(2));
  const Element v = unit_el(t, 0, 0), vt = unit_el(t, 1, 1);
  const Element u = unit_el(t, 0, 1) + unit_el(t, 1, 0);
  EXPECT_TRUE(is_trangle(t, v, u, vt));
  EXPECT_TRUE(is_trangle(t, vt, u, v));
  EXPECT_FALSE(is_trangle(t, v, u, v));

  Element skew = t.zero();
  skew.blocks[0] = oracle::unit(2, 2, 0, 1) - oracle::unit(2, 2, 1, 0);
  try {
    is_trangle(t, v, skew, vt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotMember);
  }
}

TEST(Superposition, Examples) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Tripotent e11(t, unit_el(t, 0, 0)), e12(t, unit_el(t, 0, 1)), e22(t, unit_el(t, 1, 1));
  const double h = 1.0 / std::sqrt(2.0);
  const Tripotent s = collinear_superposition(t, e11, e12, h, h);
  EXPECT_TRUE(s.minimal());
  EXPECT_NEAR(s.element().blocks[0](0, 0).real(), h, 1e-15);
  EXPECT_NEAR(s.element().blocks[0](0, 1).real(), h, 1e-15);
  EXPECT_NEAR(t.norm(s.element()), 1.0, 1e-14);
  const Tripotent same = collinear_superposition(t, e11, e12, 1.0, 0.0);
  EXPECT_EQ(same.element().blocks[0], e11.element().blocks[0]);
  try {
    collinear_superposition(t, e11, e22, h, h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCollinear);
  }
  try {
    collinear_superposition(t, e11, e12, 1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotUnitCoefficients);
  }
}

TEST(RelativePositionTest, OrthogonalPair) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Tripotent e(t, unit_el(t, 0, 0)), v(t, unit_el(t, 1, 1));
  const auto rp = relative_position(t, e, v);
  EXPECT_EQ(rp.tag(), "orthogonal");
  EXPECT_LT(rp.residual, 1e-12);
}

TEST(RelativePositionTest, RemarkPairIsQuadrangle) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Tripotent e(t, unit_el(t, 0, 0));
  const double r = std::sqrt(7.0 / 18.0);
  Element ve = t.zero();
  ve.blocks[0] << 1.0 / 3.0, 1.0 / 3.0, r, r;
  const Tripotent v(t, ve);
  const auto rp = relative_position(t, e, v);
  ASSERT_EQ(rp.tag(), "quadrangle");
  const auto& q = std::get<QuadranglePosition>(rp.kind);
  EXPECT_NEAR(std::abs(q.alpha - 1.0 / 3.0), 0.0, 1e-12);
  EXPECT_LT(rp.residual, 1e-9);
  EXPECT_NEAR(std::abs(q.delta), r, 1e-12);
  EXPECT_NEAR(std::abs(q.beta), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::abs(q.gamma), r, 1e-12);
  EXPECT_TRUE(is_quadrangle(t, e.element(), q.v2, q.v3, q.v4));
}

TEST(RelativePositionTest, SymmetricRotationIsTrangle) {
  const auto t = single(FactorDescriptor::symmetric(2));
  const Tripotent e(t, unit_el(t, 0, 0));
  const double c = std::cos(0.4), s = std::sin(0.4);
  ComplexMatrix rot(2, 2);
  rot << c, -s, s, c;
  const Tripotent v(t, t.embed(0, rot * oracle::unit(2, 2, 1, 1) * rot.transpose()));
  const auto rp = relative_position(t, e, v);
  ASSERT_EQ(rp.tag(), "trangle");
  const auto& tr = std::get<TranglePosition>(rp.kind);
  EXPECT_LT(std::abs(tr.alpha * tr.delta - tr.beta * tr.beta), 1e-10);
  EXPECT_LT(rp.residual, 1e-9);
  EXPECT_TRUE(is_trangle(t, e.element(), tr.u, tr.vt));
}

TEST(RelativePositionTest, PropertiesAcrossTypes) {
  for (const auto& t : all_types()) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const Tripotent e = sample_minimal_tripotent(t, 0, 2 * seed);
      const Tripotent v = sample_minimal_tripotent(t, 0, 2 * seed + 1);
      RelativePosition rp;
      ASSERT_NO_THROW(rp = relative_position(t, e, v)) << t.label() << " seed " << seed;
      EXPECT_LE(rp.residual, 1e-7) << t.label();
      const Element rebuilt = rp.reconstruct(e.element());
      EXPECT_LE(t.norm(rebuilt - v.element()), 1e-7) << t.label();
      const auto defects = constraint_defects(rp);
      EXPECT_LE(defects.product, 1e-8) << t.label() << " " << rp.tag();
      EXPECT_LE(defects.norm, 1e-8) << t.label() << " " << rp.tag();
      const Complex alpha = std::visit(
          [](const auto& k) -> Complex {
            if constexpr (requires { k.alpha; }) {
              return k.alpha;
            } else {
              return 0.0;
            }
          },
          rp.kind);
      EXPECT_NEAR(std::abs(alpha), std::abs(ttp(t, v, e)), 1e-9) << t.label();
      if (const auto* q = std::get_if<QuadranglePosition>(&rp.kind); q && rp.frame_complete) {
        EXPECT_TRUE(is_quadrangle(t, e.element(), q->v2, q->v3, q->v4)) << t.label();
        EXPECT_TRUE(is_quadrangle(t, q->v2, q->v3, q->v4, e.element())) << t.label();
      }
      if (const auto* r = std::get_if<TranglePosition>(&rp.kind); r && rp.frame_complete) {
        EXPECT_TRUE(is_trangle(t, e.element(), r->u, r->vt)) << t.label();
      }
    }
  }
}

TEST(RelativePositionTest, RankOneFactorsGiveCollinearFrames) {
  const auto t = single(FactorDescriptor::rectangular(1, 4));
  const Tripotent e = sample_minimal_tripotent(t, 0, 1);
  const Tripotent v = sample_minimal_tripotent(t, 0, 2);
  const auto rp = relative_position(t, e, v);
  EXPECT_EQ(rp.tag(), "collinear");
}

TEST(RelativePositionTest, CollinearAndOrthogonalInputs) {
  for (const auto& t : all_types()) {
    const Tripotent e = sample_minimal_tripotent(t, 0, 5);
    if (t.summand(0).rank() > 1) {
      const Tripotent o = sample_orthogonal_minimal(t, e, 0, 6);
      EXPECT_EQ(relative_position(t, e, o).tag(), "orthogonal") << t.label();
    }
    if (auto c = sample_collinear_minimal(t, e, 7)) {
      const auto rp = relative_position(t, e, *c);
      EXPECT_LE(rp.residual, 1e-7) << t.label();
    }
  }
}

TEST(RelativePositionTest, JsonShape) {
  const auto t = single(FactorDescriptor::rectangular(2, 2));
  const Tripotent e = sample_minimal_tripotent(t, 0, 1);
  const Tripotent v = sample_minimal_tripotent(t, 0, 2);
  const auto j = to_json(t, relative_position(t, e, v));
  EXPECT_EQ(j.at("kind"), "quadrangle");
  EXPECT_TRUE(j.contains("residual"));
  EXPECT_TRUE(j.contains("frame"));
}
