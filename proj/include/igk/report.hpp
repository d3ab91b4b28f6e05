#pragma once

#include <string>
#include <vector>

#include "igk/verify.hpp"

namespace igk {

// Shortest round-trip is not used: always 17 significant digits, '.' separator.
std::string format_number(double value);

// Generic table: header row plus numeric/text rows.
struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const Table& table);
std::string render_json(const std::vector<Table>& tables, const std::vector<std::pair<std::string, std::string>>& meta);

std::string render_report_json(const SuiteReport& report);
std::string render_report_csv(const SuiteReport& report);

}  // namespace igk
