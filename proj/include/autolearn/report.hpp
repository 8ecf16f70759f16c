#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "autolearn/teacher.hpp"

namespace autolearn {

// Summary of one learning run, as written to report.json.
struct RunReport {
  std::string algorithm;
  int states = 0;
  int accepting_states = 0;
  QueryStats stats;
  std::optional<bool> equivalent;      // only when a reference target is known
  std::optional<std::string> counterexample;
  double wall_ms = 0.0;
};

inline bool uses_lexicographical_order(const std::string& algorithm) {
  return algorithm == "rpni" || algorithm == "rpni2";
}

// Aligned comparison table over a batch of reports: per-algorithm query
// counts plus the lexicographical-order column.
inline std::string stats_table(const std::vector<RunReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"algorithm", "membership", "equivalence", "bookkeeping", "lexicographical"});
  for (const RunReport& r : reports)
    rows.push_back({r.algorithm, std::to_string(r.stats.membership), std::to_string(r.stats.equivalence),
                    std::to_string(r.stats.bookkeeping),
                    uses_lexicographical_order(r.algorithm) ? "yes" : "no"});
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << row[i];
    os << "\n";
  }
  return os.str();
}

}  // namespace autolearn
