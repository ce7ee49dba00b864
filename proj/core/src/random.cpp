#include "rsvdangle/random.hpp"

#include <cmath>
#include <numbers>

namespace rsvdangle {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed) noexcept : key_(mix64(seed + kGoldenGamma)) {}

CounterRng CounterRng::split(std::uint64_t stream) const noexcept {
  // Child keys are a second-level hash so that split(s).bits(c) never
  // coincides with bits(c') of the parent for small s, c, c'.
  return CounterRng(FromKey{}, mix64(key_ ^ mix64(stream * kGoldenGamma + 0x632be59bd9b4e019ULL)));
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
  return mix64(key_ + (counter + 1) * kGoldenGamma);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index) const noexcept {
  const std::uint64_t pair = index >> 1;
  const double u1 = uniform(2 * pair);
  const double u2 = uniform(2 * pair + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1U) == 0 ? radius * std::cos(angle) : radius * std::sin(angle);
}

Eigen::MatrixXd gaussian_matrix(const CounterRng& rng, Index rows, Index cols, double variance) {
  const double scale = std::sqrt(variance);
  Eigen::MatrixXd out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const auto draw = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(rows) +
                        static_cast<std::uint64_t>(i);
      out(i, j) = scale * rng.normal(draw);
    }
  }
  return out;
}

DenseMatrix gaussian_sketch(Index n, Index l, std::uint64_t seed) {
  if (l < 1 || n < l) {
    throw Error("gaussian_sketch: requires n >= l >= 1");
  }
  const CounterRng rng = CounterRng(seed).split(stream::kSketch);
  return DenseMatrix(gaussian_matrix(rng, n, l, 1.0 / static_cast<double>(l)));
}

}  // namespace rsvdangle
