#include <cmath>

#include <gtest/gtest.h>

#include "rsvdangle/angles.hpp"
#include "test_util.hpp"

namespace rsvdangle {
namespace {

TEST(CanonicalSines, IdenticalSubspaces) {
  const DenseMatrix q(testing::random_orthonormal(12, 4, 1));
  for (double s : canonical_sines(q, q).sines) EXPECT_LE(s, 1e-10);
  for (double c : canonical_cosines(q, q)) EXPECT_NEAR(c, 1.0, 1e-10);
}

TEST(CanonicalSines, OrthogonalSubspaces) {
  const DenseMatrix big = DenseMatrix::identity(4).left_cols(2);
  const DenseMatrix small = DenseMatrix::from_rows({{0}, {0}, {1}, {0}});
  const AngleVector a = canonical_sines(big, small);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_NEAR(a.sines[0], 1.0, 1e-15);
  EXPECT_NEAR(canonical_cosines(big, small)[0], 0.0, 1e-15);
}

TEST(CanonicalSines, PlanarRotation) {
  const double t = 0.3;
  const DenseMatrix big = DenseMatrix::from_rows({{1}, {0}});
  const DenseMatrix small = DenseMatrix::from_rows({{std::cos(t)}, {std::sin(t)}});
  EXPECT_NEAR(canonical_sines(big, small).sines[0], std::sin(0.3), 1e-15);
  EXPECT_NEAR(canonical_sines(big, small).sines[0], 0.29552020666133955, 1e-15);
}

TEST(CanonicalSines, SineCosinePythagoras) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix big = testing::random_matrix(40, 8, seed);
    const DenseMatrix small = testing::random_matrix(40, 3, seed + 50);
    const auto s = canonical_sines(big, small).sines;
    const auto c = canonical_cosines(big, small);
    ASSERT_EQ(s.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(s[i] * s[i] + c[i] * c[i], 1.0, 1e-8);
      if (i > 0) EXPECT_GE(s[i], s[i - 1]);
    }
  }
}

TEST(CanonicalSines, DependOnSpansOnly) {
  const DenseMatrix big = testing::random_matrix(25, 6, 3);
  const DenseMatrix small = testing::random_matrix(25, 4, 4);
  const Eigen::MatrixXd rb = testing::gaussian(6, 6, 5) + 3.0 * Eigen::MatrixXd::Identity(6, 6);
  const Eigen::MatrixXd rs = testing::gaussian(4, 4, 6) + 3.0 * Eigen::MatrixXd::Identity(4, 4);
  const auto base = canonical_sines(big, small).sines;
  const auto moved =
      canonical_sines(DenseMatrix(big.values() * rb), DenseMatrix(small.values() * rs)).sines;
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(base[i], moved[i], 1e-9);
}

TEST(CanonicalSines, NestedSpansGiveZero) {
  const Eigen::MatrixXd big = testing::gaussian(30, 7, 7);
  const Eigen::MatrixXd small = big * testing::gaussian(7, 3, 8);
  for (double s : canonical_sines(DenseMatrix(big), DenseMatrix(small)).sines) {
    EXPECT_LE(s, 1e-10);
  }
}

TEST(CanonicalSines, EnlargingBigNeverIncreasesSines) {
  const Eigen::MatrixXd small = testing::gaussian(30, 4, 9);
  const Eigen::MatrixXd pool = testing::gaussian(30, 12, 10);
  auto previous = canonical_sines(DenseMatrix(pool.leftCols(4)), DenseMatrix(small)).sines;
  for (Index c = 5; c <= 12; ++c) {
    const auto next = canonical_sines(DenseMatrix(pool.leftCols(c)), DenseMatrix(small)).sines;
    for (std::size_t i = 0; i < next.size(); ++i) EXPECT_LE(next[i], previous[i] + 1e-10);
    previous = next;
  }
}

TEST(CanonicalSines, InputErrors) {
  const DenseMatrix big = testing::random_matrix(10, 2, 1);
  const DenseMatrix small = testing::random_matrix(10, 3, 2);
  EXPECT_THROW((void)canonical_sines(big, small), Error);
  EXPECT_THROW((void)canonical_sines(big, testing::random_matrix(9, 1, 3)), Error);
  Eigen::MatrixXd deficient = testing::gaussian(10, 3, 4);
  deficient.col(2) = deficient.col(0);
  try {
    (void)canonical_sines(DenseMatrix(deficient), DenseMatrix(deficient.leftCols(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "rank deficient input");
  }
}

}  // namespace
}  // namespace rsvdangle
