#pragma once

#include <ostream>
#include <string>

#include "vlcsim/sweep.hpp"

namespace vlcsim {

/// Shortest round-trip decimal representation of a double ("inf"/"nan" for
/// non-finite values).
std::string format_double(double v);

/// RFC-4180-style CSV: header row always present, fields quoted when they
/// contain separators. Identical results serialize byte-identically.
void write_csv(const SweepResult& result, std::ostream& os);

/// JSON document with spec echo, provenance metadata, columns and rows.
/// Non-finite values serialize as strings ("inf", "-inf", "nan").
void write_json(const SweepResult& result, std::ostream& os);

void write_table(const SweepResult& result, std::ostream& os, const std::string& format);

}  // namespace vlcsim
