#pragma once

#include <filesystem>
#include <iosfwd>

#include "rsvdangle/dense.hpp"

namespace rsvdangle {

/// Dense "array real general" Matrix Market I/O. Entries are written
/// column-major with 17 significant digits; '%' lines after the banner are
/// comments.
DenseMatrix read_matrix_market(std::istream& in);
DenseMatrix read_matrix_market(const std::filesystem::path& path);

void write_matrix_market(std::ostream& out, const DenseMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& m);

}  // namespace rsvdangle
