#include <cmath>

#include <gtest/gtest.h>

#include "rsvdangle/angles.hpp"
#include "rsvdangle/matgen.hpp"
#include "rsvdangle/rsvd.hpp"
#include "test_util.hpp"

namespace rsvdangle {
namespace {

using testing::spectral;

TEST(Rsvd, FullWidthSketchReproducesMatrix) {
  const DenseMatrix a = DenseMatrix::diagonal({3, 2, 1, 0.5});
  const RsvdOutput out = rsvd(a, SketchConfig{2, 4, 0, 1});
  EXPECT_LE((out.factors.reconstruct().values() - a.values()).norm(), 1e-10);
  EXPECT_EQ(out.q_used, 0);
  EXPECT_EQ(out.seed, 1u);
}

TEST(Rsvd, LeadingValuesExactUnderStrongDecay) {
  std::vector<double> s(200);
  for (int i = 0; i < 200; ++i) s[static_cast<std::size_t>(i)] = std::pow(0.9, i + 1);
  const PlantedMatrix pm = gen_gaussian_decay(200, 200, Spectrum(s), 3);
  const RsvdOutput out = rsvd(pm.a, SketchConfig{10, 40, 2, 4});
  const auto exact = singular_values(pm.a);
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_NEAR(out.factors.sigma[i], exact[i], 1e-6 * exact[i]);
  }
}

TEST(Rsvd, DeterministicForFixedSeed) {
  const DenseMatrix a = testing::random_matrix(30, 20, 5);
  const RsvdOutput x = rsvd(a, SketchConfig{3, 6, 1, 11});
  const RsvdOutput y = rsvd(a, SketchConfig{3, 6, 1, 11});
  EXPECT_TRUE(x.factors.u.values() == y.factors.u.values());
  EXPECT_TRUE(x.factors.v.values() == y.factors.v.values());
  EXPECT_EQ(x.factors.sigma, y.factors.sigma);
}

TEST(Rsvd, FactorInvariantsAndInterlacing) {
  const PlantedMatrix pm = gen_gaussian_decay(120, 90, spectrum_slower(90, 10), 6);
  for (int q = 0; q <= 2; ++q) {
    const RsvdOutput out = rsvd(pm.a, SketchConfig{10, 30, q, 7});
    const Eigen::MatrixXd& u = out.factors.u.values();
    const Eigen::MatrixXd& v = out.factors.v.values();
    EXPECT_LE(spectral(u.transpose() * u - Eigen::MatrixXd::Identity(30, 30)), 1e-10);
    EXPECT_LE(spectral(v.transpose() * v - Eigen::MatrixXd::Identity(30, 30)), 1e-10);
    for (std::size_t i = 0; i < 30; ++i) {
      EXPECT_LE(out.factors.sigma[i], pm.spectrum.at(i) + 1e-8);
      if (i > 0) EXPECT_LE(out.factors.sigma[i], out.factors.sigma[i - 1]);
    }
    // range(U_hat) lies in col(A): projecting onto the planted U changes nothing.
    const Eigen::MatrixXd& up = pm.factors.u.values();
    EXPECT_LE((up * (up.transpose() * u) - u).norm(), 1e-9);
  }
}

TEST(Rsvd, ConfigValidation) {
  const DenseMatrix a = testing::random_matrix(10, 8, 1);
  EXPECT_THROW((void)rsvd(a, SketchConfig{0, 2, 0, 0}), Error);
  EXPECT_THROW((void)rsvd(a, SketchConfig{3, 2, 0, 0}), Error);
  EXPECT_THROW((void)rsvd(a, SketchConfig{2, 9, 0, 0}), Error);
  EXPECT_THROW((void)rsvd(a, SketchConfig{2, 3, -1, 0}), Error);
}

TEST(Rsvd, RankDeficientSketchPropagates) {
  const DenseMatrix a = DenseMatrix::diagonal({1, 1, 0, 0});
  try {
    (void)rsvd(a, SketchConfig{1, 3, 0, 0});
    FAIL() << "expected rank deficient sketch";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "rank deficient sketch");
  }
}

TEST(Rsvd, MeanLargestAngleNonIncreasingInQ) {
  const PlantedMatrix pm = gen_gaussian_decay(200, 200, spectrum_slower(200, 20), 8);
  const DenseMatrix u_k = pm.factors.u.left_cols(20);
  double previous = 2.0;
  for (int q = 0; q <= 2; ++q) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const RsvdOutput out = rsvd(pm.a, SketchConfig{20, 40, q, seed});
      sum += canonical_sines(out.factors.u, u_k).largest();
    }
    const double mean = sum / 20;
    EXPECT_LE(mean, previous);
    previous = mean;
  }
}

TEST(OrthogonalComplement, IdentityColumns) {
  const DenseMatrix basis = DenseMatrix::identity(4).left_cols(2);
  const Eigen::MatrixXd c = orthogonal_complement(basis).values();
  ASSERT_EQ(c.rows(), 4);
  ASSERT_EQ(c.cols(), 2);
  EXPECT_LE(c.topRows(2).norm(), 1e-14);
  EXPECT_LE(spectral(c.transpose() * c - Eigen::MatrixXd::Identity(2, 2)), 1e-14);
}

TEST(OrthogonalComplement, CompletesToOrthogonalMatrix) {
  const Eigen::MatrixXd q = testing::random_orthonormal(30, 7, 9);
  const Eigen::MatrixXd c = orthogonal_complement(DenseMatrix(q)).values();
  ASSERT_EQ(c.cols(), 23);
  Eigen::MatrixXd full(30, 30);
  full << q, c;
  EXPECT_LE(spectral(full.transpose() * full - Eigen::MatrixXd::Identity(30, 30)), 1e-10);
  EXPECT_LE((q.transpose() * c).norm(), 1e-10);
  EXPECT_THROW((void)orthogonal_complement(DenseMatrix::identity(3)), Error);
}

}  // namespace
}  // namespace rsvdangle
