#include "igk/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

namespace igk {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_string(const std::string& s) { return "\"" + json_escape(s) + "\""; }

// JSON has no inf/nan literals.
std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : json_string(format_number(v)); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // no "-0"
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string render_csv(const Table& table) {
  std::ostringstream out;
  if (!table.title.empty()) out << "# " << table.title << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << csv_field(table.columns[c]);
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const std::vector<Table>& tables, const std::vector<std::pair<std::string, std::string>>& meta) {
  std::ostringstream out;
  out << "{\n  \"meta\": {";
  for (std::size_t i = 0; i < meta.size(); ++i) {
    out << (i ? ", " : "") << json_string(meta[i].first) << ": " << json_string(meta[i].second);
  }
  out << "},\n  \"tables\": [";
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& tab = tables[t];
    out << (t ? "," : "") << "\n    {\"title\": " << json_string(tab.title) << ", \"columns\": [";
    for (std::size_t c = 0; c < tab.columns.size(); ++c) out << (c ? ", " : "") << json_string(tab.columns[c]);
    out << "], \"rows\": [";
    for (std::size_t r = 0; r < tab.rows.size(); ++r) {
      out << (r ? "," : "") << "\n      [";
      for (std::size_t c = 0; c < tab.rows[r].size(); ++c) {
        const std::string& cell = tab.rows[r][c];
        out << (c ? ", " : "") << (looks_numeric(cell) ? cell : json_string(cell));
      }
      out << "]";
    }
    out << "]}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string render_report_json(const SuiteReport& report) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"suite\": " << json_string(report.suite) << ",\n";
  out << "  \"seed\": " << report.seed << ",\n";
  out << "  \"prng\": " << json_string(report.prng) << ",\n";
  out << "  \"profile\": " << json_string(report.profile) << ",\n";
  out << "  \"pass\": " << (report.all_pass() ? "true" : "false") << ",\n";
  out << "  \"checks\": [";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const CheckResult& c = report.checks[i];
    out << (i ? "," : "") << "\n    {\"id\": " << json_string(c.id) << ", \"status\": \""
        << (c.pass ? "PASS" : "FAIL") << "\", \"residual\": " << json_number(c.residual)
        << ", \"tolerance\": " << json_number(c.tolerance) << ", \"description\": " << json_string(c.description)
        << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::string render_report_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "# suite=" << report.suite << " seed=" << report.seed << " prng=" << report.prng
      << " profile=" << report.profile << " pass=" << (report.all_pass() ? "true" : "false") << "\n";
  out << "id,status,residual,tolerance,description\n";
  for (const CheckResult& c : report.checks) {
    out << csv_field(c.id) << "," << (c.pass ? "PASS" : "FAIL") << "," << format_number(c.residual) << ","
        << format_number(c.tolerance) << "," << csv_field(c.description) << "\n";
  }
  return out.str();
}

}  // namespace igk
