#include "chf/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "chf/types.hpp"
#include "json.hpp"

namespace chf::io {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  const bool needs_quoting =
      s.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quoting) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

std::string cell_to_csv(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_real(std::get<double>(c));
  if (std::holds_alternative<long long>(c))
    return std::to_string(std::get<long long>(c));
  return csv_escape(std::get<std::string>(c));
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_to_csv(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = t.schema;
  j["meta"]["seed"] = t.seed;
  j["meta"]["version"] = kVersion;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<double>(c)) {
        r[t.columns[i]] = std::get<double>(c);
      } else if (std::holds_alternative<long long>(c)) {
        r[t.columns[i]] = std::get<long long>(c);
      } else {
        r[t.columns[i]] = std::get<std::string>(c);
      }
    }
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

void write_output(const Table& t, const std::string& format,
                  const std::string& out_path) {
  std::string payload;
  if (format == "csv") {
    payload = to_csv(t);
  } else if (format == "json") {
    payload = to_json(t);
  } else {
    raise(Err::BadInput, "unknown output format '" + format + "'");
  }
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) raise(Err::BadInput, "cannot open output file " + out_path);
  f << payload;
}

}  // namespace chf::io
