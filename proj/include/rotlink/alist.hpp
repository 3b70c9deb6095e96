#pragma once

#include <iosfwd>
#include <string>

#include "rotlink/ldpc.hpp"

namespace rotlink {

/// Reads a parity-check matrix in alist text form:
///   N M
///   max_col_degree max_row_degree
///   N column degrees / M row degrees
///   N lines of 1-based check indices per column (zero padding tolerated)
///   M lines of 1-based variable indices per row (zero padding tolerated)
/// Throws std::runtime_error naming the offending line on malformed input.
ParityCheckMatrix read_alist(std::istream& in);
ParityCheckMatrix read_alist_file(const std::string& path);

/// Writes the matrix in the same form, without zero padding.
void write_alist(const ParityCheckMatrix& h, std::ostream& out);
void write_alist_file(const ParityCheckMatrix& h, const std::string& path);

}  // namespace rotlink
