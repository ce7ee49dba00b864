#include "rsvdangle/matgen.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rsvdangle/random.hpp"

namespace rsvdangle {
namespace {

void check_r(Index r, Index r1) {
  if (r < 1 || r1 < 0 || r1 > r) {
    throw Error("spectrum generator requires r >= 1 and 0 <= r1 <= r");
  }
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Spectrum spectrum_slower(Index r, Index r1) {
  check_r(r, r1);
  std::vector<double> s(static_cast<std::size_t>(r));
  for (Index i = 1; i <= r; ++i) {
    s[static_cast<std::size_t>(i - 1)] =
        i <= r1 ? 1.0 : 1.0 / std::sqrt(static_cast<double>(i - r1 + 1));
  }
  return Spectrum(std::move(s));
}

Spectrum spectrum_faster(Index r, Index r1) {
  check_r(r, r1);
  std::vector<double> s(static_cast<std::size_t>(r));
  for (Index i = 1; i <= r; ++i) {
    s[static_cast<std::size_t>(i - 1)] =
        i <= r1 ? 1.0 : std::max(std::pow(0.99, static_cast<double>(i - r1)), 1e-3);
  }
  return Spectrum(std::move(s));
}

Spectrum gen_step_spectrum(Index k, double beta, double gap) {
  if (k < 1 || !(beta > 0.0) || !(gap >= 1.0) || !std::isfinite(gap)) {
    throw Error("step spectrum requires k >= 1, beta > 0, gap >= 1");
  }
  const double tail = beta * static_cast<double>(k);
  const double rounded = std::round(tail);
  if (std::abs(tail - rounded) > 1e-9 * std::max(1.0, tail) || rounded < 1.0) {
    throw Error("step spectrum requires beta * k to be a positive integer");
  }
  std::vector<double> s(static_cast<std::size_t>(k), gap);
  s.resize(static_cast<std::size_t>(k) + static_cast<std::size_t>(rounded), 1.0);
  return Spectrum(std::move(s));
}

PlantedMatrix gen_gaussian_decay(Index m, Index n, const Spectrum& spectrum, std::uint64_t seed) {
  const auto r = static_cast<Index>(spectrum.declared_rank());
  if (r < 1 || r > std::min(m, n)) {
    throw Error("gen_gaussian_decay requires 1 <= declared rank <= min(m, n)");
  }
  const CounterRng rng(seed);
  const Eigen::MatrixXd u = detail::ortho(gaussian_matrix(rng.split(stream::kLeftFactor), m, r));
  const Eigen::MatrixXd v = detail::ortho(gaussian_matrix(rng.split(stream::kRightFactor), n, r));
  std::vector<double> sigma(spectrum.values().begin(), spectrum.values().begin() + r);
  const Eigen::Map<const Eigen::VectorXd> s(sigma.data(), r);
  DenseMatrix a(u * s.asDiagonal() * v.transpose());
  std::string descriptor = "gaussian_decay m=" + std::to_string(m) + " n=" + std::to_string(n) +
                           " r=" + std::to_string(r) + " seed=" + std::to_string(seed);
  return PlantedMatrix{std::move(a), SvdFactors{DenseMatrix(u), std::move(sigma), DenseMatrix(v)},
                       spectrum, false, std::move(descriptor)};
}

double numerical_rank_tolerance(Index m, Index n) {
  return static_cast<double>(std::max(m, n)) * std::numeric_limits<double>::epsilon();
}

PlantedMatrix from_data(DenseMatrix a, std::string descriptor) {
  SvdFactors factors = svd_full(a);
  Spectrum spectrum = Spectrum::numerical(factors.sigma, numerical_rank_tolerance(a.rows(), a.cols()));
  return PlantedMatrix{std::move(a), std::move(factors), std::move(spectrum), true,
                       std::move(descriptor)};
}

PlantedMatrix gen_snn(const SnnParams& p, std::uint64_t seed) {
  const Index terms = p.terms == 0 ? std::min(p.m, p.n) : p.terms;
  if (p.m < 1 || p.n < 1 || p.r1 < 0 || p.r1 > terms || terms > std::min(p.m, p.n)) {
    throw Error("gen_snn requires 0 <= r1 <= terms <= min(m, n)");
  }
  if (!(p.a >= 1.0) || !(p.density > 0.0 && p.density <= 1.0)) {
    throw Error("gen_snn requires a >= 1 and density in (0, 1]");
  }
  const CounterRng rng = CounterRng(seed).split(stream::kSparseVectors);
  auto sparse_vector = [&](const CounterRng& g, Index len) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(len);
    for (Index j = 0; j < len; ++j) {
      const auto c = static_cast<std::uint64_t>(j);
      if (g.uniform(2 * c) <= p.density) x(j) = g.uniform(2 * c + 1);
    }
    return x;
  };
  Eigen::MatrixXd x(p.m, terms);
  Eigen::MatrixXd y(p.n, terms);
  for (Index i = 0; i < terms; ++i) {
    const CounterRng term = rng.split(static_cast<std::uint64_t>(i));
    const double weight = (i < p.r1 ? p.a : 1.0) / static_cast<double>(i + 1);
    x.col(i) = weight * sparse_vector(term.split(0), p.m);
    y.col(i) = sparse_vector(term.split(1), p.n);
  }
  PlantedMatrix out = from_data(DenseMatrix(x * y.transpose()),
                                "snn m=" + std::to_string(p.m) + " n=" + std::to_string(p.n) +
                                    " r1=" + std::to_string(p.r1) + " a=" + format_double(p.a) +
                                    " density=" + format_double(p.density) +
                                    " terms=" + std::to_string(terms) +
                                    " seed=" + std::to_string(seed) +
                                    " vectors=bernoulli(density)*uniform(0,1]");
  return out;
}

}  // namespace rsvdangle
