#include "rsvdangle/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace rsvdangle {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

DenseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("matrix market: empty input");
  }
  std::istringstream banner(lower(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix") {
    throw Error("matrix market: missing %%MatrixMarket banner");
  }
  if (format != "array" || field != "real" || symmetry != "general") {
    throw Error("matrix market: only 'array real general' is supported, got '" + format + " " +
                field + " " + symmetry + "'");
  }
  if (!next_data_line(in, line)) {
    throw Error("matrix market: missing size line");
  }
  long long rows = 0;
  long long cols = 0;
  {
    std::istringstream size(line);
    if (!(size >> rows >> cols) || rows < 1 || cols < 1) {
      throw Error("matrix market: bad size line '" + line + "'");
    }
  }
  Eigen::MatrixXd values(rows, cols);
  const long long total = rows * cols;
  long long read = 0;
  while (read < total && next_data_line(in, line)) {
    std::istringstream entries(line);
    double x = 0.0;
    while (read < total && entries >> x) {
      values(read % rows, read / rows) = x;
      ++read;
    }
  }
  if (read != total) {
    throw Error("matrix market: expected " + std::to_string(total) + " entries, read " +
                std::to_string(read));
  }
  return DenseMatrix(std::move(values));
}

DenseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path.string());
  }
  try {
    return read_matrix_market(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_matrix_market(std::ostream& out, const DenseMatrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[32];
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g\n", m(i, j));
      out << buf;
    }
  }
}

void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  write_matrix_market(out, m);
  if (!out) {
    throw Error("write failed: " + path.string());
  }
}

}  // namespace rsvdangle
