#pragma once

#include <string>
#include <vector>

#include "autolearn/observation_table.hpp"
#include "autolearn/teacher.hpp"

namespace autolearn {

struct LstarResult {
  Dfa hypothesis;
  std::vector<OtSnapshot> snapshots;  // one per table fill
  std::vector<Word> counterexamples;  // in the order received
  QueryStats stats;
};

// Angluin's L*. Loop order is fill, consistency, closedness, conjecture,
// equivalence; witnesses are taken first-in-deterministic-order so traces
// are reproducible.
inline LstarResult lstar_run(Teacher& teacher) {
  LstarResult res;
  ObservationTable table = ObservationTable::init_table(teacher);
  res.snapshots.push_back(table.snapshot());
  for (;;) {
    if (auto w = table.is_consistent()) {
      table.consistency_step(*w, teacher);
      res.snapshots.push_back(table.snapshot());
      continue;
    }
    if (auto u = table.is_closed()) {
      table.close_step(*u, teacher);
      res.snapshots.push_back(table.snapshot());
      continue;
    }
    Dfa hypothesis = table.conjecture();
    auto cex = teacher.equivalence(hypothesis);
    if (!cex) {
      res.hypothesis = hypothesis;
      res.stats = teacher.stats();
      res.stats.algorithm = "lstar";
      return res;
    }
    res.counterexamples.push_back(*cex);
    table.handle_counterexample(*cex, teacher);
    res.snapshots.push_back(table.snapshot());
  }
}

}  // namespace autolearn
