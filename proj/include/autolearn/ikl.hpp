#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autolearn/id_family.hpp"
#include "autolearn/kripke.hpp"
#include "autolearn/partition_table.hpp"
#include "autolearn/teacher.hpp"

namespace autolearn {

// Shared prefix-closed live set and T' with one independent column table per
// output bit. Refining one bit never adds columns to another bit's table.
struct IklState {
  std::vector<Word> live_words;
  TsetLayout layout;
  std::vector<ColumnTable> bits;

  PartitionTable slice_table(int bit) const {
    return PartitionTable{layout, bits.at(static_cast<std::size_t>(bit))};
  }
};

struct IklBitSnapshot {
  int bit = 0;  // 1-based, matching the E^c notation
  PtSnapshot table;
};

struct IklTrace {
  std::vector<IklBitSnapshot> snapshots;
  std::vector<std::pair<int, SplitRecord>> splits;  // bit (1-based), witness
  std::vector<std::string> events;                  // ingest / skip per queue word
};

struct IklResult {
  KripkeStructure hypothesis;
  IklState state;
  IklTrace trace;
  QueryStats stats;
};

namespace detail {

inline MembershipFn bit_member(KripkeTeacher& teacher, int bit) {
  return [&teacher, bit](const Word& w) { return teacher.membership(bit, w); };
}

inline void ikl_snapshot_all(const IklState& s, IklTrace& trace) {
  for (int c = 0; c < static_cast<int>(s.bits.size()); ++c)
    trace.snapshots.push_back({c + 1, pt_snapshot(s.layout, s.bits[static_cast<std::size_t>(c)])});
}

}  // namespace detail

// Extends the live set with the prefixes of w, rebuilds the shared T' and
// refills every bit's existing columns for the new elements.
inline void ikl_ingest(IklState& s, const Word& w, KripkeTeacher& teacher) {
  teacher.alphabet().check_word(w);
  detail::append_word(s.live_words, w, true);
  s.layout = build_tset(s.live_words, teacher.alphabet());
  for (int c = 0; c < teacher.width(); ++c) {
    ColumnTable& cols = s.bits[static_cast<std::size_t>(c)];
    if (cols.v.empty())
      fill_column(s.layout, cols, Word{}, detail::bit_member(teacher, c));
    else
      refill(s.layout, cols, detail::bit_member(teacher, c));
  }
}

// Per-bit split search until every slice table is stable, then promotion of
// frontier classes into the shared live set (which refills all slices).
inline void ikl_refine_all(IklState& s, KripkeTeacher& teacher, IklTrace& trace) {
  for (int guard = 0; guard < 100000; ++guard) {
    bool changed = false;
    for (int c = 0; c < teacher.width(); ++c) {
      ColumnTable& cols = s.bits[static_cast<std::size_t>(c)];
      while (auto w = find_split(s.layout, cols, SplitPolicy::exact)) {
        trace.splits.emplace_back(c + 1, detail::record_of(s.layout, *w));
        fill_column(s.layout, cols, w->new_v, detail::bit_member(teacher, c));
        trace.snapshots.push_back({c + 1, pt_snapshot(s.layout, cols)});
        changed = true;
      }
    }
    std::optional<Word> promote;
    for (int c = 0; c < teacher.width() && !promote; ++c)
      promote = frontier_word(s.layout, s.bits[static_cast<std::size_t>(c)]);
    if (promote) {
      detail::append_word(s.live_words, *promote, true);
      s.layout = build_tset(s.live_words, teacher.alphabet());
      for (int c = 0; c < teacher.width(); ++c)
        refill(s.layout, s.bits[static_cast<std::size_t>(c)], detail::bit_member(teacher, c));
      changed = true;
    }
    if (!changed) return;
  }
  throw std::logic_error("ikl_refine_all: refinement failed to terminate");
}

// Builds the one-bit hypothesis per slice and recombines them; output bit c
// of the product equals slice c's acceptance.
inline KripkeStructure ikl_hypothesis(const IklState& s) {
  std::vector<Dfa> slices;
  slices.reserve(s.bits.size());
  for (const ColumnTable& cols : s.bits) slices.push_back(id_hypothesis(s.layout, cols));
  return slice_product(slices);
}

// A queued word is consistent when the current hypothesis matches the
// teacher's outputs on every prefix and every bit; only failures trigger
// ingest and refinement.
inline bool ikl_consistent(const KripkeStructure& h, const Word& w, KripkeTeacher& teacher) {
  for (const Word& p : prefixes(w))
    for (int c = 0; c < teacher.width(); ++c)
      if (h.output_bit(p, c) != teacher.membership(c, p)) return false;
  return true;
}

inline IklResult ikl_run(const std::vector<Word>& queue, KripkeTeacher& teacher) {
  IklResult res;
  res.state.live_words.push_back(Word{});
  res.state.layout.alphabet = teacher.alphabet();
  res.state.bits.resize(static_cast<std::size_t>(teacher.width()));
  std::optional<KripkeStructure> hypothesis;
  for (const Word& w : queue) {
    if (hypothesis && ikl_consistent(*hypothesis, w, teacher)) {
      res.trace.events.push_back("skip " + teacher.alphabet().render(w));
      continue;
    }
    res.trace.events.push_back("ingest " + teacher.alphabet().render(w));
    ikl_ingest(res.state, w, teacher);
    detail::ikl_snapshot_all(res.state, res.trace);
    ikl_refine_all(res.state, teacher, res.trace);
    hypothesis = ikl_hypothesis(res.state);
  }
  if (!hypothesis) {
    // Empty queue: degenerate single-state structure with the initial output.
    KripkeStructure k;
    k.alphabet = teacher.alphabet();
    k.width = teacher.width();
    std::uint64_t bits = 0;
    for (int c = 0; c < teacher.width(); ++c)
      if (teacher.membership(c, Word{})) bits |= (1ull << c);
    k.output = {bits};
    k.next = {std::vector<int>(static_cast<std::size_t>(teacher.alphabet().size()), 0)};
    hypothesis = k;
  }
  res.hypothesis = *hypothesis;
  res.stats = teacher.stats();
  res.stats.algorithm = "ikl";
  return res;
}

}  // namespace autolearn
