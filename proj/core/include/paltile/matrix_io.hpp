#pragma once

#include <filesystem>
#include <iosfwd>

#include "paltile/matrix.hpp"

namespace paltile {

// Sparse row format: "# rows=<m> cols=<n>" header, then one line per row
// listing the 0-based column indices of the ones in ascending order.  A
// blank line is an empty row.
void write_sparse(std::ostream& out, const BinaryMatrix& m);
void write_sparse(const std::filesystem::path& path, const BinaryMatrix& m);
BinaryMatrix read_sparse(std::istream& in);
BinaryMatrix read_sparse(const std::filesystem::path& path);

// Dense format: same header, then one line per row with space-separated
// values printed as %.17g, which round-trips IEEE doubles exactly.
void write_dense(std::ostream& out, const RealMatrix& m);
void write_dense(const std::filesystem::path& path, const RealMatrix& m);
RealMatrix read_dense(std::istream& in);
RealMatrix read_dense(const std::filesystem::path& path);

}  // namespace paltile
