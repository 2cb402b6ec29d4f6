#include "vlcsim/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace vlcsim {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {
std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}
}  // namespace

void write_csv(const SweepResult& result, std::ostream& os) {
  for (const auto& [k, v] : result.metadata) os << "# " << k << " = " << v << "\n";
  for (size_t i = 0; i < result.columns.size(); ++i) {
    if (i) os << ",";
    os << csv_escape(result.columns[i]);
  }
  os << ",sentinel_reason\n";
  for (size_t r = 0; r < result.rows.size(); ++r) {
    for (size_t i = 0; i < result.rows[r].size(); ++i) {
      if (i) os << ",";
      os << format_double(result.rows[r][i]);
    }
    os << "," << csv_escape(result.sentinel_reasons[r]) << "\n";
  }
}

void write_json(const SweepResult& result, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["spec"] = {
      {"kind", to_string(result.spec.kind)},
      {"name", result.spec.name},
  };
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : result.metadata) meta[k] = v;
  doc["metadata"] = meta;
  doc["columns"] = result.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isfinite(v))
        jr.push_back(v);
      else
        jr.push_back(format_double(v));
    }
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  doc["sentinel_reasons"] = result.sentinel_reasons;
  os << doc.dump(2) << "\n";
}

void write_table(const SweepResult& result, std::ostream& os, const std::string& format) {
  if (format == "csv")
    write_csv(result, os);
  else if (format == "json")
    write_json(result, os);
  else
    throw std::invalid_argument("unknown output format: " + format);
}

}  // namespace vlcsim
