#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

// Tabular output records shared by the CLI and the suites.  Serialization is
// byte-deterministic: fixed column order, fixed row order, %.17g reals.

namespace chf::io {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  // One of: scalar, grid_table, check_report, spectrum, orbit_list.
  std::string schema;
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Full round-trip precision (17 significant digits), C locale.
std::string format_real(double v);

// RFC-4180-style: fields holding commas, quotes, or newlines are quoted with
// doubled inner quotes; everything else is written bare.
std::string to_csv(const Table& t);

// {"schema": ..., "meta": {"seed": ..., "version": ...}, "rows": [...]}
std::string to_json(const Table& t);

// format is "csv" or "json"; out_path empty writes to stdout.
void write_output(const Table& t, const std::string& format,
                  const std::string& out_path);

}  // namespace chf::io
