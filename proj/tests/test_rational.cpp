#include <gtest/gtest.h>

#include "sphfan/rational.hpp"
#include "support/random.hpp"

namespace sphfan {
namespace {

TEST(Rat, NormalizesOnConstruction) {
  EXPECT_EQ(Rat(mpz_class(4), mpz_class(2)).str(), "2");
  EXPECT_EQ(Rat(mpz_class(-6), mpz_class(-4)).str(), "3/2");
  EXPECT_EQ(Rat(mpz_class(3), mpz_class(-7)).str(), "-3/7");
  EXPECT_EQ(Rat::parse("-6/-4"), Rat(mpz_class(3), mpz_class(2)));
  EXPECT_EQ(Rat::parse("0/5").str(), "0");
  EXPECT_TRUE(Rat::parse("5").is_integer());
}

TEST(Rat, RejectsMalformedText) {
  EXPECT_THROW(Rat::parse("1/0"), DomainError);
  EXPECT_THROW(Rat::parse("1.5"), DomainError);
  EXPECT_THROW(Rat::parse(""), DomainError);
  EXPECT_THROW(Rat::parse("1/"), DomainError);
  EXPECT_THROW(Rat::parse("a/2"), DomainError);
}

TEST(Rat, TextRoundTrip) {
  testing::Random rnd(7);
  for (int i = 0; i < 200; ++i) {
    const Rat r = rnd.rational(-1000, 1000, 97);
    EXPECT_EQ(Rat::parse(r.str()), r);
    EXPECT_GT(r.denominator(), 0);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Mat::identity(3)), 3u);
  EXPECT_EQ(rank(Mat(2, 4)), 0u);
  EXPECT_EQ(rank(Mat::from_rows({{1, 2}, {2, 4}})), 1u);
}

TEST(Rank, TransposeInvariant) {
  testing::Random rnd(11);
  for (int i = 0; i < 100; ++i) {
    const Mat m = rnd.rat_mat(rnd.index(1, 5), rnd.index(1, 5));
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(SolveHomogeneous, Examples) {
  const auto k1 = solve_homogeneous(Mat::from_rows({{1, 1}}));
  ASSERT_EQ(k1.size(), 1u);
  EXPECT_TRUE(same_ray(k1[0], make_vec({1, -1})) || same_ray(k1[0], make_vec({-1, 1})));

  EXPECT_TRUE(solve_homogeneous(Mat::identity(4)).empty());

  const Mat m = Mat::from_rows({{1, 2}, {2, 4}});
  const auto k2 = solve_homogeneous(m);
  ASSERT_EQ(k2.size(), 1u);
  EXPECT_TRUE(is_zero(m.apply(k2[0])));
  EXPECT_TRUE(same_ray(k2[0], make_vec({2, -1})) || same_ray(k2[0], make_vec({-2, 1})));
}

TEST(SolveHomogeneous, KernelLaws) {
  testing::Random rnd(13);
  for (int i = 0; i < 100; ++i) {
    const Mat m = rnd.rat_mat(rnd.index(1, 5), rnd.index(1, 6));
    const auto basis = solve_homogeneous(m);
    EXPECT_EQ(rank(m) + basis.size(), m.cols());
    for (const auto& x : basis) EXPECT_TRUE(is_zero(m.apply(x)));
    if (!basis.empty()) { EXPECT_EQ(rank(basis, m.cols()), basis.size()); }
  }
}

TEST(Determinant, MatchesCofactorExpansion) {
  testing::Random rnd(17);
  for (int i = 0; i < 50; ++i) {
    const Mat m = rnd.rat_mat(3, 3);
    const Rat cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                    m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                    m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    EXPECT_EQ(determinant(m), cof);
  }
}

TEST(Unimodular, Examples) {
  EXPECT_TRUE(is_integral_unimodular(Mat::identity(3)));
  EXPECT_TRUE(is_integral_unimodular(Mat::from_rows({{0, 1}, {1, 0}})));
  EXPECT_FALSE(is_integral_unimodular(Mat::from_rows({{1, 0}, {0, 2}})));
  Mat half = Mat::identity(2);
  half(0, 1) = Rat(mpz_class(1), mpz_class(2));
  EXPECT_FALSE(is_integral_unimodular(half));  // det 1 but not integral
  EXPECT_THROW(is_integral_unimodular(Mat(2, 3)), DomainError);
}

TEST(Unimodular, InverseIsUnimodular) {
  testing::Random rnd(19);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    // Products of elementary integer matrices are unimodular.
    Mat m = Mat::identity(3);
    for (int k = 0; k < 4; ++k) {
      Mat e = Mat::identity(3);
      const auto r = rnd.index(0, 2);
      auto c = rnd.index(0, 2);
      if (r == c) c = (c + 1) % 3;
      e(r, c) = Rat(rnd.integer(-2, 2));
      m = m * e;
    }
    if (rnd.coin()) m = m * Mat::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    ASSERT_TRUE(is_integral_unimodular(m));
    EXPECT_TRUE(is_integral_unimodular(inverse(m)));
    EXPECT_EQ(m * inverse(m), Mat::identity(3));
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

}  // namespace
}  // namespace sphfan
