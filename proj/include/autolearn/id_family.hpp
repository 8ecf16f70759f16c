#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autolearn/errors.hpp"
#include "autolearn/partition_table.hpp"
#include "autolearn/teacher.hpp"

namespace autolearn {

struct SplitRecord {
  bool alpha_dead = false;
  Word alpha;
  bool beta_dead = false;
  Word beta;
  int sigma = 0;
  Word gamma;
  Word new_v;
  bool coarse = false;
};

struct IdFamilyTrace {
  std::vector<PtSnapshot> snapshots;
  std::vector<SplitRecord> splits;
  std::vector<std::string> events;  // per labeled example: incorporated / skipped
};

struct IdRunResult {
  Dfa hypothesis;
  std::vector<Dfa> increments;  // hypothesis after each labeled example
  std::vector<Word> live_words;
  PartitionTable table;
  IdFamilyTrace trace;
  QueryStats stats;
};

namespace detail {

inline SplitRecord record_of(const TsetLayout& t, const SplitWitness& w) {
  SplitRecord r;
  r.alpha_dead = t.elems[static_cast<std::size_t>(w.alpha)].dead;
  r.alpha = t.elems[static_cast<std::size_t>(w.alpha)].word;
  r.beta_dead = t.elems[static_cast<std::size_t>(w.beta)].dead;
  r.beta = t.elems[static_cast<std::size_t>(w.beta)].word;
  r.sigma = w.sigma;
  r.gamma = w.gamma;
  r.new_v = w.new_v;
  r.coarse = w.coarse;
  return r;
}

inline void append_word(std::vector<Word>& live, const Word& w, bool with_prefixes) {
  auto add = [&](const Word& x) {
    if (std::find(live.begin(), live.end(), x) == live.end()) live.push_back(x);
  };
  if (with_prefixes)
    for (const Word& p : prefixes(w)) add(p);
  else
    add(w);
}

// Split until stable, then promote frontier classes into the live set until
// every E-value class has an access word. Promotion rebuilds the table; the
// fill answers are cached, so replays cost bookkeeping only.
inline void stabilize(PartitionTable& table, std::vector<Word>& live, bool prefix_closed_promotion,
                      const MembershipFn& member, SplitPolicy policy, IdFamilyTrace& trace) {
  for (int guard = 0; guard < 100000; ++guard) {
    if (auto w = find_split(table.layout, table.cols, policy)) {
      trace.splits.push_back(record_of(table.layout, *w));
      fill_column(table.layout, table.cols, w->new_v, member);
      trace.snapshots.push_back(table.snapshot());
      continue;
    }
    if (auto fw = frontier_word(table.layout, table.cols)) {
      append_word(live, *fw, prefix_closed_promotion);
      table.layout = build_tset(live, table.layout.alphabet);
      refill(table.layout, table.cols, member);
      trace.snapshots.push_back(table.snapshot());
      continue;
    }
    return;
  }
  throw std::logic_error("stabilize: refinement failed to terminate");
}

inline void rebuild_and_fill(PartitionTable& table, const std::vector<Word>& live,
                             const MembershipFn& member, IdFamilyTrace& trace) {
  table.layout = build_tset(live, table.layout.alphabet);
  if (table.cols.v.empty())
    fill_column(table.layout, table.cols, Word{}, member);
  else
    refill(table.layout, table.cols, member);
  trace.snapshots.push_back(table.snapshot());
}

inline Dfa single_dead_state(const Alphabet& a) {
  Dfa h;
  h.alphabet = a;
  h.initial = 0;
  h.accepting = {false};
  h.next = {std::vector<int>(static_cast<std::size_t>(a.size()), 0)};
  return h;
}

}  // namespace detail

// Batch ID over a caller-supplied live-complete set. Live-completeness is
// the caller's obligation and is not validated here. The coarse split phase
// mirrors the accepting/rejecting-block comparison the batch algorithm
// works with; with a live-complete P it only adds redundant columns.
inline IdRunResult id_run(const std::vector<Word>& live_complete, Teacher& teacher) {
  if (std::find(live_complete.begin(), live_complete.end(), Word{}) == live_complete.end())
    throw std::invalid_argument("id_run: live set must contain the empty word");
  IdRunResult res;
  res.live_words = live_complete;
  res.table.layout.alphabet = teacher.alphabet();
  MembershipFn member = [&teacher](const Word& w) { return teacher.membership(w); };
  detail::rebuild_and_fill(res.table, res.live_words, member, res.trace);
  detail::stabilize(res.table, res.live_words, true, member, SplitPolicy::exact_then_coarse, res.trace);
  res.hypothesis = id_hypothesis(res.table.layout, res.table.cols);
  res.stats = teacher.stats();
  res.stats.algorithm = "id";
  return res;
}

// IID: incremental ID driven by labeled examples. Positive examples (and any
// example inconsistent with the current hypothesis) contribute their prefix
// set to P; consistent negative examples leave the state untouched.
inline IdRunResult iid_run(const std::vector<LabeledExample>& stream, Teacher& teacher) {
  IdRunResult res;
  res.table.layout.alphabet = teacher.alphabet();
  MembershipFn member = [&teacher](const Word& w) { return teacher.membership(w); };
  Dfa hypothesis = detail::single_dead_state(teacher.alphabet());
  for (const LabeledExample& ex : stream) {
    if (teacher.membership(ex.word) != ex.positive)
      throw DomainError("iid_run: labeled example contradicts the teacher");
    bool consistent = accepts(hypothesis, ex.word) == ex.positive;
    if (!ex.positive && consistent) {
      res.trace.events.push_back("skip " + teacher.alphabet().render(ex.word));
      res.increments.push_back(hypothesis);
      continue;
    }
    res.trace.events.push_back("incorporate " + teacher.alphabet().render(ex.word));
    detail::append_word(res.live_words, ex.word, true);
    detail::rebuild_and_fill(res.table, res.live_words, member, res.trace);
    detail::stabilize(res.table, res.live_words, true, member, SplitPolicy::exact, res.trace);
    hypothesis = id_hypothesis(res.table.layout, res.table.cols);
    res.increments.push_back(hypothesis);
  }
  res.hypothesis = hypothesis;
  res.stats = teacher.stats();
  res.stats.algorithm = "iid";
  return res;
}

enum class IdsMode { prefix_closed, prefix_free };

// IDS: incremental ID over any labeled example. Every example is
// incorporated; the prefix-closed variant adds the example's whole prefix
// set, the prefix-free variant only the example itself.
inline IdRunResult ids_run(const std::vector<LabeledExample>& stream, Teacher& teacher, IdsMode mode) {
  IdRunResult res;
  res.table.layout.alphabet = teacher.alphabet();
  MembershipFn member = [&teacher](const Word& w) { return teacher.membership(w); };
  res.live_words.push_back(Word{});
  Dfa hypothesis = detail::single_dead_state(teacher.alphabet());
  for (const LabeledExample& ex : stream) {
    if (teacher.membership(ex.word) != ex.positive)
      throw DomainError("ids_run: labeled example contradicts the teacher");
    res.trace.events.push_back("incorporate " + teacher.alphabet().render(ex.word));
    detail::append_word(res.live_words, ex.word, mode == IdsMode::prefix_closed);
    detail::rebuild_and_fill(res.table, res.live_words, member, res.trace);
    detail::stabilize(res.table, res.live_words, mode == IdsMode::prefix_closed, member,
                      SplitPolicy::exact, res.trace);
    hypothesis = id_hypothesis(res.table.layout, res.table.cols);
    res.increments.push_back(hypothesis);
  }
  res.hypothesis = hypothesis;
  res.stats = teacher.stats();
  res.stats.algorithm = mode == IdsMode::prefix_closed ? "ids-closed" : "ids-free";
  return res;
}

}  // namespace autolearn
