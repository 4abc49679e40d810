#pragma once

#include <iosfwd>
#include <string>

#include "copulakit/types.hpp"

namespace copulakit {

// Shortest round-trip decimal representation (locale-independent).
std::string format_double(double x);

double parse_double(const std::string& cell, int line_no);

// Two numeric columns, comma-separated, optional header, >= 2 data rows.
// Parse failures report the offending line number.
Sample ingest_csv(std::istream& in);
Sample ingest_csv_file(const std::string& path);

}  // namespace copulakit
