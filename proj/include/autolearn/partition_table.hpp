#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "autolearn/dfa.hpp"
#include "autolearn/words.hpp"

namespace autolearn {

using MembershipFn = std::function<bool(const Word&)>;

// T' = {d0} ∪ P ∪ {f(α,β) : α ∈ P, β ∈ Σ} with f(d0,β) = d0. Element 0 is
// always the dead marker d0; remaining elements keep insertion order:
// P first, then extensions in (P order × alphabet order), duplicates dropped.
struct TsetLayout {
  struct Element {
    bool dead = false;
    Word word;
  };

  Alphabet alphabet;
  std::vector<Element> elems;
  std::map<Word, int> index;
  std::vector<std::vector<int>> succ;  // succ[i][sym], -1 when f(i,sym) not in T'
  std::vector<int> domain;             // elements with every successor present

  int size() const { return static_cast<int>(elems.size()); }

  std::string label(int i) const {
    return elems[static_cast<std::size_t>(i)].dead ? "d0"
                                                   : alphabet.render(elems[static_cast<std::size_t>(i)].word);
  }
};

inline TsetLayout build_tset(const std::vector<Word>& live_words, const Alphabet& alphabet) {
  TsetLayout t;
  t.alphabet = alphabet;
  t.elems.push_back({true, Word{}});
  auto add = [&](const Word& w) {
    if (t.index.emplace(w, static_cast<int>(t.elems.size())).second) t.elems.push_back({false, w});
  };
  for (const Word& p : live_words) add(p);
  for (const Word& p : live_words)
    for (int c = 0; c < alphabet.size(); ++c) add(p + static_cast<char>(c));
  t.succ.assign(t.elems.size(), std::vector<int>(static_cast<std::size_t>(alphabet.size()), -1));
  for (int i = 0; i < t.size(); ++i) {
    for (int c = 0; c < alphabet.size(); ++c) {
      if (t.elems[static_cast<std::size_t>(i)].dead) {
        t.succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = 0;
      } else {
        auto it = t.index.find(t.elems[static_cast<std::size_t>(i)].word + static_cast<char>(c));
        if (it != t.index.end()) t.succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = it->second;
      }
    }
  }
  for (int i = 0; i < t.size(); ++i) {
    bool total = true;
    for (int c = 0; c < alphabet.size(); ++c)
      if (t.succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] < 0) total = false;
    if (total) t.domain.push_back(i);
  }
  return t;
}

// Distinguishing-string columns and the E map for one table. E(α) is the set
// of columns v with α·v accepted, stored as a bitmask; E(d0) stays empty.
struct ColumnTable {
  std::vector<Word> v;
  std::vector<std::uint64_t> e;
};

inline void fill_column(const TsetLayout& t, ColumnTable& cols, const Word& v, const MembershipFn& member) {
  for (const Word& existing : cols.v)
    if (existing == v) throw std::logic_error("fill_column: duplicate distinguishing string");
  if (cols.v.empty() && !v.empty()) throw std::logic_error("fill_column: first column must be lambda");
  if (cols.v.size() >= 64) throw std::logic_error("fill_column: column capacity exceeded");
  int bit = static_cast<int>(cols.v.size());
  cols.v.push_back(v);
  cols.e.resize(static_cast<std::size_t>(t.size()), 0);
  for (int i = 0; i < t.size(); ++i) {
    if (t.elems[static_cast<std::size_t>(i)].dead) continue;
    if (member(t.elems[static_cast<std::size_t>(i)].word + v)) cols.e[static_cast<std::size_t>(i)] |= (1ull << bit);
  }
}

// Re-derives every cell for the (possibly rebuilt) layout. Cached teacher
// answers make repeats bookkeeping queries.
inline void refill(const TsetLayout& t, ColumnTable& cols, const MembershipFn& member) {
  cols.e.assign(static_cast<std::size_t>(t.size()), 0);
  for (std::size_t bit = 0; bit < cols.v.size(); ++bit)
    for (int i = 0; i < t.size(); ++i) {
      if (t.elems[static_cast<std::size_t>(i)].dead) continue;
      if (member(t.elems[static_cast<std::size_t>(i)].word + cols.v[bit]))
        cols.e[static_cast<std::size_t>(i)] |= (1ull << bit);
    }
}

enum class SplitPolicy {
  exact,             // pairs compared by E-value set equality
  exact_then_coarse  // fall back to accepting/rejecting-block comparison
};

struct SplitWitness {
  int alpha = 0;
  int beta = 0;
  int sigma = 0;
  Word gamma;
  Word new_v;   // sigma · gamma
  bool coarse = false;
};

namespace detail {

// Shortlex-least column named by the symmetric-difference mask.
inline Word shortest_of_mask(const ColumnTable& cols, std::uint64_t mask) {
  std::optional<Word> best;
  for (std::size_t bit = 0; bit < cols.v.size(); ++bit)
    if ((mask >> bit) & 1u)
      if (!best || shortlex_less(cols.v[bit], *best)) best = cols.v[bit];
  if (!best) throw std::logic_error("shortest_of_mask: empty mask");
  return *best;
}

inline bool has_column(const ColumnTable& cols, const Word& v) {
  for (const Word& existing : cols.v)
    if (existing == v) return true;
  return false;
}

}  // namespace detail

// Split search over pairs whose one-symbol extensions are all tabulated.
// Exact phase: E(α) = E(β) as sets but some E(f(α,σ)) ≠ E(f(β,σ)). Among the
// candidates the one producing the shortlex-least new distinguishing string
// σγ wins, with γ fixed as the shortlex-least element of the symmetric
// difference. The coarse phase (batch ID only) relaxes both comparisons to
// accepting-block versus rejecting-block, i.e. E-value emptiness; a coarse
// candidate whose σγ is already a column is discarded.
inline std::optional<SplitWitness> find_split(const TsetLayout& t, const ColumnTable& cols,
                                              SplitPolicy policy) {
  std::optional<SplitWitness> best;
  auto consider = [&](const SplitWitness& w) {
    if (!best || shortlex_less(w.new_v, best->new_v)) best = w;
  };

  for (std::size_t a = 0; a < t.domain.size(); ++a)
    for (std::size_t b = a + 1; b < t.domain.size(); ++b) {
      int i = t.domain[a];
      int j = t.domain[b];
      if (cols.e[static_cast<std::size_t>(i)] != cols.e[static_cast<std::size_t>(j)]) continue;
      for (int c = 0; c < t.alphabet.size(); ++c) {
        std::uint64_t ei = cols.e[static_cast<std::size_t>(t.succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])];
        std::uint64_t ej = cols.e[static_cast<std::size_t>(t.succ[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)])];
        if (ei == ej) continue;
        SplitWitness w;
        w.alpha = i;
        w.beta = j;
        w.sigma = c;
        w.gamma = detail::shortest_of_mask(cols, ei ^ ej);
        w.new_v = Word(1, static_cast<char>(c)) + w.gamma;
        if (detail::has_column(cols, w.new_v))
          throw std::logic_error("find_split: exact witness rediscovered an existing column");
        consider(w);
      }
    }
  if (best || policy == SplitPolicy::exact) return best;

  for (std::size_t a = 0; a < t.domain.size(); ++a)
    for (std::size_t b = a + 1; b < t.domain.size(); ++b) {
      int i = t.domain[a];
      int j = t.domain[b];
      bool live_i = cols.e[static_cast<std::size_t>(i)] != 0;
      bool live_j = cols.e[static_cast<std::size_t>(j)] != 0;
      if (live_i != live_j) continue;
      for (int c = 0; c < t.alphabet.size(); ++c) {
        std::uint64_t ei = cols.e[static_cast<std::size_t>(t.succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])];
        std::uint64_t ej = cols.e[static_cast<std::size_t>(t.succ[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)])];
        if ((ei != 0) == (ej != 0)) continue;
        SplitWitness w;
        w.alpha = i;
        w.beta = j;
        w.sigma = c;
        w.gamma = detail::shortest_of_mask(cols, ei ^ ej);
        w.new_v = Word(1, static_cast<char>(c)) + w.gamma;
        w.coarse = true;
        if (detail::has_column(cols, w.new_v)) continue;
        consider(w);
      }
    }
  return best;
}

// First element (in T' order) whose E-value class holds no element with
// tabulated successors; absent when every class has an access word.
inline std::optional<Word> frontier_word(const TsetLayout& t, const ColumnTable& cols) {
  std::map<std::uint64_t, bool> class_has_access;
  for (int i : t.domain) class_has_access[cols.e[static_cast<std::size_t>(i)]] = true;
  for (int i = 1; i < t.size(); ++i)
    if (!class_has_access.count(cols.e[static_cast<std::size_t>(i)]))
      return t.elems[static_cast<std::size_t>(i)].word;
  return std::nullopt;
}

// Hypothesis from a stable table: states are the distinct E-values over T',
// the initial state is E(λ), accepting states contain λ, and
// δ(E(α), σ) = E(f(α, σ)). The empty value self-loops as the dead state.
inline Dfa id_hypothesis(const TsetLayout& t, const ColumnTable& cols) {
  if (cols.v.empty() || !cols.v[0].empty()) throw std::logic_error("id_hypothesis: missing lambda column");
  auto lambda_it = t.index.find(Word{});
  if (lambda_it == t.index.end()) throw std::logic_error("id_hypothesis: lambda not tabulated");
  std::map<std::uint64_t, int> state_of;
  std::vector<std::uint64_t> values;
  for (int i = 0; i < t.size(); ++i) {
    std::uint64_t e = cols.e[static_cast<std::size_t>(i)];
    if (state_of.emplace(e, static_cast<int>(values.size())).second) values.push_back(e);
  }
  Dfa h;
  h.alphabet = t.alphabet;
  h.initial = state_of.at(cols.e[static_cast<std::size_t>(lambda_it->second)]);
  h.accepting.resize(values.size());
  h.next.assign(values.size(), std::vector<int>(static_cast<std::size_t>(t.alphabet.size()), -1));
  for (std::size_t s = 0; s < values.size(); ++s) h.accepting[s] = values[s] & 1u;
  for (int i : t.domain) {
    int from = state_of.at(cols.e[static_cast<std::size_t>(i)]);
    for (int c = 0; c < t.alphabet.size(); ++c) {
      int to = state_of.at(
          cols.e[static_cast<std::size_t>(t.succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])]);
      int& slot = h.next[static_cast<std::size_t>(from)][static_cast<std::size_t>(c)];
      if (slot >= 0 && slot != to)
        throw std::logic_error("id_hypothesis: conflicting transitions for one E-value");
      slot = to;
    }
  }
  for (std::size_t s = 0; s < values.size(); ++s)
    for (int c = 0; c < t.alphabet.size(); ++c) {
      int& slot = h.next[s][static_cast<std::size_t>(c)];
      if (slot < 0) {
        if (values[s] != 0) throw std::logic_error("id_hypothesis: class without access word");
        slot = static_cast<int>(s);  // dead value self-loops
      }
    }
  h.validate();
  return h;
}

// Trace snapshot of one table: T' labels down, V across,
// cells as 0/1.
struct PtSnapshot {
  std::vector<std::string> labels;
  std::vector<Word> v;
  std::vector<std::vector<bool>> cells;

  std::string render(const Alphabet& a) const {
    std::ostringstream os;
    os << "PT\nV:";
    for (const Word& w : v) os << " " << a.render(w);
    os << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      os << labels[i] << ":";
      for (bool b : cells[i]) os << " " << (b ? 1 : 0);
      os << "\n";
    }
    return os.str();
  }
};

inline PtSnapshot pt_snapshot(const TsetLayout& t, const ColumnTable& cols) {
  PtSnapshot s;
  s.v = cols.v;
  for (int i = 0; i < t.size(); ++i) {
    s.labels.push_back(t.label(i));
    std::vector<bool> row;
    for (std::size_t bit = 0; bit < cols.v.size(); ++bit)
      row.push_back((cols.e[static_cast<std::size_t>(i)] >> bit) & 1u);
    s.cells.push_back(std::move(row));
  }
  return s;
}

// The ID-family table as one value: layout plus columns.
struct PartitionTable {
  TsetLayout layout;
  ColumnTable cols;

  PtSnapshot snapshot() const { return pt_snapshot(layout, cols); }
};

}  // namespace autolearn
