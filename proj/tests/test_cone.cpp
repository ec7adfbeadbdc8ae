#include <gtest/gtest.h>

#include <thread>

#include "sphfan/cone.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

namespace sphfan {
namespace {

Cone cone2(std::initializer_list<std::initializer_list<long>> gens) {
  std::vector<Vec> vs;
  for (const auto& g : gens) vs.push_back(make_vec(g));
  return Cone::from_generators(2, vs);
}

const Cone kQuadrant = cone2({{1, 0}, {0, 1}});
const Cone kXAxis = cone2({{1, 0}, {-1, 0}});

bool same_face_sets(const std::vector<Cone>& a, const std::vector<Cone>& b) {
  auto covered = [](const std::vector<Cone>& xs, const std::vector<Cone>& ys) {
    for (const auto& x : xs) {
      bool hit = false;
      for (const auto& y : ys) hit = hit || cones_equal(x, y);
      if (!hit) return false;
    }
    return true;
  };
  return a.size() == b.size() && covered(a, b) && covered(b, a);
}

TEST(ConeFromGenerators, Examples) {
  EXPECT_EQ(kQuadrant.generators().size(), 2u);
  EXPECT_EQ(kQuadrant.dimension(), 2u);

  const Cone zero = Cone::from_generators(2, {});
  EXPECT_TRUE(zero.is_zero_cone());
  EXPECT_EQ(zero.dimension(), 0u);

  EXPECT_EQ(kXAxis.lineality_basis().size(), 1u);
  for (const auto& g : {make_vec({1, 0}), make_vec({-1, 0})})
    for (const auto& w : kXAxis.facets()) EXPECT_GE(dot(w, g), Rat(0));
  EXPECT_TRUE(contains(kXAxis, make_vec({-3, 0})));
  EXPECT_FALSE(contains(kXAxis, make_vec({0, 1})));
}

TEST(ConeFromGenerators, DropsZerosAndRepeatedRays) {
  const Cone c = cone2({{0, 0}, {2, 0}, {1, 0}, {0, 3}, {0, 1}});
  ASSERT_EQ(c.generators().size(), 2u);
  EXPECT_EQ(c.generators()[0], make_vec({2, 0}));
  EXPECT_THROW(Cone::from_generators(2, {make_vec({1, 2, 3})}), DimensionMismatch);
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(kQuadrant, make_vec({2, 3})));
  EXPECT_FALSE(contains(kQuadrant, make_vec({-1, 0})));
  EXPECT_TRUE(contains(cone2({{1, 0}, {1, 1}}), make_vec({2, 1})));
  EXPECT_THROW(contains(kQuadrant, make_vec({1})), DimensionMismatch);
}

TEST(ConesEqual, Examples) {
  EXPECT_TRUE(cones_equal(kQuadrant, cone2({{0, 1}, {1, 0}, {1, 1}})));
  EXPECT_FALSE(cones_equal(Cone::zero(2), cone2({{1, 0}})));
  EXPECT_TRUE(cones_equal(cone2({{2, 0}}), cone2({{1, 0}})));
}

TEST(Intersect, Examples) {
  EXPECT_TRUE(cones_equal(intersect(kQuadrant, cone2({{1, 1}, {0, 1}})), cone2({{1, 1}, {0, 1}})));
  EXPECT_TRUE(cones_equal(intersect(kQuadrant, kQuadrant), kQuadrant));
  EXPECT_TRUE(intersect(cone2({{1, 0}}), cone2({{0, 1}})).is_zero_cone());
  EXPECT_TRUE(cones_equal(intersect(kXAxis, kQuadrant), cone2({{1, 0}})));
}

TEST(Intersect, ContainedInBothInputs) {
  testing::Random rnd(29);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = rnd.index(1, 3);
    const Cone a = rnd.cone(n, 4);
    const Cone b = rnd.cone(n, 4);
    const Cone ab = intersect(a, b);
    EXPECT_TRUE(is_subcone(ab, a));
    EXPECT_TRUE(is_subcone(ab, b));
    // Points in both inputs are in the intersection.
    for (int k = 0; k < 5; ++k) {
      const Vec x = rnd.point_in(a);
      if (contains(b, x)) { EXPECT_TRUE(contains(ab, x)); }
    }
  }
}

TEST(Faces, Examples) {
  const auto qf = faces(kQuadrant);
  EXPECT_EQ(qf.size(), 4u);
  EXPECT_TRUE(same_face_sets(qf, {Cone::zero(2), cone2({{1, 0}}), cone2({{0, 1}}), kQuadrant}));
  EXPECT_TRUE(qf.front().is_zero_cone());

  const auto zf = faces(Cone::zero(2));
  ASSERT_EQ(zf.size(), 1u);
  EXPECT_TRUE(zf[0].is_zero_cone());

  const auto lf = faces(kXAxis);
  ASSERT_EQ(lf.size(), 1u);
  EXPECT_TRUE(cones_equal(lf[0], kXAxis));
}

TEST(Faces, HalfPlaneHasLineAsMinimalFace) {
  const Cone half = cone2({{1, 0}, {-1, 0}, {0, 1}});
  const auto f = faces(half);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_TRUE(cones_equal(f[0], kXAxis));
  EXPECT_TRUE(cones_equal(f[1], half));
}

TEST(Faces, AgreeWithBruteForceOracle) {
  testing::Random rnd(31);
  for (int i = 0; i < 40; ++i) {
    const Cone c = rnd.coin() ? rnd.pointed_cone(rnd.index(1, 3), 5) : rnd.cone(rnd.index(1, 3), 5);
    EXPECT_TRUE(same_face_sets(faces(c), testing::brute_force_faces(c))) << "instance " << i;
  }
}

TEST(Faces, FaceOfFaceIsFace) {
  testing::Random rnd(37);
  for (int i = 0; i < 25; ++i) {
    const Cone c = rnd.cone(rnd.index(1, 4), 5);
    const auto all = faces(c);
    for (const auto& f : all)
      for (const auto& g : faces(f)) {
        bool found = false;
        for (const auto& h : all) found = found || cones_equal(g, h);
        EXPECT_TRUE(found);
      }
  }
}

TEST(Faces, StrictConvexityIffZeroFace) {
  testing::Random rnd(41);
  for (int i = 0; i < 60; ++i) {
    const Cone c = rnd.cone(rnd.index(1, 3), 5);
    bool zero_face = false;
    for (const auto& f : faces(c)) zero_face = zero_face || f.is_zero_cone();
    EXPECT_EQ(is_strictly_convex(c), zero_face);
  }
}

TEST(DoubleDescription, Consistency) {
  testing::Random rnd(43);
  for (int i = 0; i < 80; ++i) {
    const std::size_t n = rnd.index(1, 4);
    const Cone c = rnd.cone(n, 6);
    const auto& gens = c.generators();
    for (const auto& w : c.facets()) {
      std::vector<Vec> tight;
      for (const auto& g : gens) {
        EXPECT_GE(dot(w, g), Rat(0));
        if (dot(w, g).is_zero()) tight.push_back(g);
      }
      // A facet is tight on generators spanning a hyperplane of span(c).
      EXPECT_EQ(rank(tight, n) + 1, c.dimension());
    }
    for (const auto& u : c.dual().orthogonal)
      for (const auto& g : gens) EXPECT_TRUE(dot(u, g).is_zero());
    EXPECT_EQ(rank(gens, n), c.dimension());
    // Rebuilding from the inequalities gives the same cone.
    EXPECT_TRUE(cones_equal(Cone::from_inequalities(n, c.facets(), c.dual().orthogonal), c));
  }
}

TEST(RelintContains, Examples) {
  EXPECT_TRUE(relint_contains(kQuadrant, make_vec({1, 1})));
  EXPECT_FALSE(relint_contains(kQuadrant, make_vec({1, 0})));
  EXPECT_TRUE(relint_contains(Cone::zero(2), make_vec({0, 0})));
  EXPECT_FALSE(relint_contains(Cone::zero(2), make_vec({1, 0})));
  EXPECT_TRUE(relint_contains(kXAxis, make_vec({0, 0})));
  EXPECT_FALSE(relint_contains(kXAxis, make_vec({0, 1})));
}

TEST(RelintContains, AgreesWithFacetTest) {
  testing::Random rnd(47);
  for (int i = 0; i < 100; ++i) {
    const Cone c = rnd.cone(rnd.index(1, 3), 4);
    const Vec x = rnd.coin() ? rnd.point_in(c) : rnd.int_vec(c.ambient_rank(), -3, 3);
    EXPECT_EQ(relint_contains(c, x), testing::relint_by_facets(c, x));
  }
}

TEST(RelintPartition, EachPointInExactlyOneFace) {
  testing::Random rnd(53);
  for (int i = 0; i < 10; ++i) {
    const Cone c = rnd.cone(rnd.index(1, 3), 5);
    const auto fs = faces(c);
    for (int k = 0; k < 10; ++k) {
      const Vec x = rnd.point_in(c);
      int hits = 0;
      for (const auto& f : fs) hits += relint_contains(f, x) ? 1 : 0;
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(RelintMeetsCone, Examples) {
  const auto w1 = relint_meets_cone(cone2({{1, 0}}), kQuadrant);
  ASSERT_TRUE(w1);
  EXPECT_TRUE(same_ray(*w1, make_vec({1, 0})));

  EXPECT_FALSE(relint_meets_cone(cone2({{0, -1}}), kQuadrant));

  const auto w3 = relint_meets_cone(kQuadrant, cone2({{1, 1}}));
  ASSERT_TRUE(w3);
  EXPECT_EQ(*w3, make_vec({1, 1}));

  const auto w4 = relint_meets_cone(Cone::zero(2), cone2({{1, 1}}));
  ASSERT_TRUE(w4);
  EXPECT_TRUE(is_zero(*w4));
}

TEST(RelintsMeetIn, Examples) {
  const Cone plane = Cone::full_space(2);
  EXPECT_FALSE(relints_meet_in(cone2({{1, 0}}), cone2({{0, 1}}), plane));

  const auto w2 = relints_meet_in(cone2({{1, 0}}), cone2({{1, 0}}), plane);
  ASSERT_TRUE(w2);
  EXPECT_TRUE(same_ray(*w2, make_vec({1, 0})));

  const Cone tilted = cone2({{1, 1}, {1, -1}});
  const auto w3 = relints_meet_in(kQuadrant, tilted, plane);
  ASSERT_TRUE(w3);
  EXPECT_TRUE(relint_contains(kQuadrant, *w3));
  EXPECT_TRUE(relint_contains(tilted, *w3));
  // (2,1) is the hand-computed witness; it lies in both relative interiors.
  EXPECT_TRUE(relint_contains(kQuadrant, make_vec({2, 1})));
  EXPECT_TRUE(relint_contains(tilted, make_vec({2, 1})));
}

TEST(RelintMeetsCone, AgreesWithFourierMotzkin) {
  testing::Random rnd(59);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = rnd.index(1, 3);
    const Cone c = rnd.cone(n, 4);
    const Cone v = rnd.cone(n, 4);
    const auto w = relint_meets_cone(c, v);
    EXPECT_EQ(w.has_value(), testing::fm_relints_meet({&c}, v));
    if (w) {
      EXPECT_TRUE(relint_contains(c, *w));
      EXPECT_TRUE(contains(v, *w));
    }
  }
}

TEST(StrictConvexity, Examples) {
  EXPECT_TRUE(is_strictly_convex(kQuadrant));
  EXPECT_FALSE(is_strictly_convex(kXAxis));
  EXPECT_TRUE(is_strictly_convex(Cone::zero(2)));
}

TEST(Cone, DualComputedOnceAcrossThreads) {
  const Cone c = cone2({{1, 0}, {1, 1}, {0, 1}, {-1, 2}});
  std::vector<std::thread> ts;
  std::vector<std::size_t> counts(8);
  for (std::size_t t = 0; t < counts.size(); ++t)
    ts.emplace_back([&, t] { counts[t] = c.facets().size(); });
  for (auto& t : ts) t.join();
  for (auto k : counts) EXPECT_EQ(k, 2u);
}

}  // namespace
}  // namespace sphfan
