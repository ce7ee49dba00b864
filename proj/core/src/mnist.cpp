#include <array>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "rsvdangle/matgen.hpp"
#include "rsvdangle/random.hpp"

namespace rsvdangle {
namespace {

constexpr std::uint32_t kIdx3Magic = 0x00000803;

std::uint32_t read_be32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw Error("malformed IDX file: truncated header");
  }
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
         std::uint32_t{b[3]};
}

}  // namespace

DenseMatrix load_mnist(const std::filesystem::path& images, Index n_samples, std::uint64_t seed) {
  std::ifstream in(images, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + images.string());
  }
  if (read_be32(in) != kIdx3Magic) {
    throw Error("malformed IDX file: bad magic number in " + images.string());
  }
  const std::uint32_t count = read_be32(in);
  const std::uint32_t rows = read_be32(in);
  const std::uint32_t cols = read_be32(in);
  const std::uint64_t pixels = std::uint64_t{rows} * cols;
  if (count == 0 || pixels == 0) {
    throw Error("malformed IDX file: empty image set");
  }
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::uint64_t>(in.tellg());
  if (size < 16 + std::uint64_t{count} * pixels) {
    throw Error("malformed IDX file: truncated data in " + images.string());
  }
  if (n_samples < 1 || static_cast<std::uint64_t>(n_samples) > count) {
    throw Error("load_mnist: n_samples must lie in [1, " + std::to_string(count) + "]");
  }

  // Partial Fisher-Yates over image indices.
  const CounterRng rng = CounterRng(seed).split(stream::kSampling);
  std::vector<std::uint32_t> index(count);
  std::iota(index.begin(), index.end(), 0U);
  for (Index i = 0; i < n_samples; ++i) {
    const auto ui = static_cast<std::uint64_t>(i);
    const std::uint64_t span = count - ui;
    const std::uint64_t pick = ui + (rng.bits(ui) % span);
    std::swap(index[ui], index[pick]);
  }

  Eigen::MatrixXd out(n_samples, static_cast<Index>(pixels));
  std::vector<unsigned char> buffer(pixels);
  for (Index i = 0; i < n_samples; ++i) {
    in.seekg(static_cast<std::streamoff>(16 + std::uint64_t{index[static_cast<std::size_t>(i)]} * pixels));
    if (!in.read(reinterpret_cast<char*>(buffer.data()), static_cast<std::streamsize>(pixels))) {
      throw Error("malformed IDX file: read failed in " + images.string());
    }
    for (std::uint64_t p = 0; p < pixels; ++p) {
      out(i, static_cast<Index>(p)) = buffer[p] / 255.0;
    }
  }
  return DenseMatrix(std::move(out));
}

}  // namespace rsvdangle
