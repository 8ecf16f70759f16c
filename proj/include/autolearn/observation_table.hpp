#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "autolearn/dfa.hpp"
#include "autolearn/teacher.hpp"
#include "autolearn/words.hpp"

namespace autolearn {

// Snapshot of an observation table: row labels in display order (upper part
// first), experiments, and the 0/1 matrix.
struct OtSnapshot {
  std::vector<Word> upper;
  std::vector<Word> lower;
  std::vector<Word> experiments;
  std::map<Word, std::vector<bool>> rows;

  std::string render(const Alphabet& a) const {
    std::ostringstream os;
    os << "OT\nS:";
    for (const Word& w : upper) os << " " << a.render(w);
    os << "\nE:";
    for (const Word& w : experiments) os << " " << a.render(w);
    os << "\n";
    auto emit = [&](const Word& w) {
      os << a.render(w) << ":";
      for (bool b : rows.at(w)) os << " " << (b ? 1 : 0);
      os << "\n";
    };
    for (const Word& w : upper) emit(w);
    for (const Word& w : lower) emit(w);
    return os.str();
  }
};

// L*'s (S, E, T) triple. S is prefix-closed and ordered by insertion; E is
// ordered with lambda first; rows shared between S and S·Sigma are stored
// once and displayed in the upper part.
class ObservationTable {
public:
  explicit ObservationTable(const Alphabet& alphabet) : alphabet_(alphabet) {}

  static ObservationTable init_table(Teacher& teacher) {
    ObservationTable t(teacher.alphabet());
    t.s_.push_back(Word{});
    t.in_s_.emplace(Word{}, 0);
    t.e_.push_back(Word{});
    t.fill(teacher);
    return t;
  }

  const std::vector<Word>& access_words() const { return s_; }
  const std::vector<Word>& experiments() const { return e_; }

  // Lower-part labels in display order: u in S order, a in alphabet order,
  // skipping labels that already live in S.
  std::vector<Word> lower_labels() const {
    std::vector<Word> out;
    for (const Word& u : s_)
      for (int c = 0; c < alphabet_.size(); ++c) {
        Word ua = u;
        ua.push_back(static_cast<char>(c));
        if (!in_s_.count(ua)) out.push_back(ua);
      }
    return out;
  }

  const std::vector<bool>& row(const Word& label) const {
    auto it = rows_.find(label);
    if (it == rows_.end()) throw std::logic_error("observation table row missing");
    return it->second;
  }

  // Asks the teacher for every unfilled cell, in row-then-experiment order.
  void fill(Teacher& teacher) {
    auto fill_label = [&](const Word& u) {
      auto& r = rows_[u];
      while (r.size() < e_.size()) r.push_back(teacher.membership(u + e_[r.size()]));
    };
    for (const Word& u : s_) fill_label(u);
    for (const Word& u : lower_labels()) fill_label(u);
  }

  // Absent iff every lower row equals some upper row; otherwise first
  // offending lower label in display order.
  std::optional<Word> is_closed() const {
    std::map<std::vector<bool>, bool> upper_rows;
    for (const Word& u : s_) upper_rows.emplace(row(u), true);
    for (const Word& t : lower_labels())
      if (!upper_rows.count(row(t))) return t;
    return std::nullopt;
  }

  struct ConsistencyWitness {
    Word s1, s2;
    int symbol = 0;
    Word experiment;
  };

  // Absent iff equal upper rows stay equal after one-symbol extension;
  // otherwise the first violation in (row order, alphabet order) with the
  // first differing experiment.
  std::optional<ConsistencyWitness> is_consistent() const {
    for (std::size_t i = 0; i < s_.size(); ++i)
      for (std::size_t j = i + 1; j < s_.size(); ++j) {
        if (row(s_[i]) != row(s_[j])) continue;
        for (int c = 0; c < alphabet_.size(); ++c) {
          Word ua = s_[i] + static_cast<char>(c);
          Word va = s_[j] + static_cast<char>(c);
          const auto& ra = row(ua);
          const auto& rb = row(va);
          for (std::size_t e = 0; e < e_.size(); ++e)
            if (ra[e] != rb[e]) return ConsistencyWitness{s_[i], s_[j], c, e_[e]};
        }
      }
    return std::nullopt;
  }

  // Moves the closedness witness into S and fills the new rows.
  void close_step(const Word& u, Teacher& teacher) {
    if (in_s_.count(u)) throw std::logic_error("close_step: witness already in S");
    in_s_.emplace(u, static_cast<int>(s_.size()));
    s_.push_back(u);
    fill(teacher);
  }

  // Appends the experiment a.e and refills every row for the new column.
  void consistency_step(const ConsistencyWitness& w, Teacher& teacher) {
    Word v;
    v.push_back(static_cast<char>(w.symbol));
    v += w.experiment;
    for (const Word& e : e_)
      if (e == v) throw std::logic_error("consistency_step: duplicate experiment");
    e_.push_back(v);
    fill(teacher);
  }

  // Adds the counterexample and all of its prefixes to S.
  void handle_counterexample(const Word& cex, Teacher& teacher) {
    for (const Word& p : prefixes(cex)) {
      if (in_s_.count(p)) continue;
      in_s_.emplace(p, static_cast<int>(s_.size()));
      s_.push_back(p);
    }
    fill(teacher);
  }

  // Builds the hypothesis from a closed and consistent table: states are the
  // distinct upper rows, delta(row(s), a) = row(s.a), accepting iff the
  // lambda column holds 1.
  Dfa conjecture() const {
    if (is_closed() || is_consistent()) throw std::logic_error("conjecture on unready table");
    std::map<std::vector<bool>, int> state_of;
    std::vector<const std::vector<bool>*> states;
    for (const Word& u : s_) {
      const auto& r = row(u);
      if (state_of.emplace(r, static_cast<int>(states.size())).second) states.push_back(&r);
    }
    Dfa h;
    h.alphabet = alphabet_;
    h.initial = state_of.at(row(Word{}));
    h.accepting.resize(states.size());
    h.next.assign(states.size(), std::vector<int>(static_cast<std::size_t>(alphabet_.size()), -1));
    for (std::size_t i = 0; i < states.size(); ++i) h.accepting[i] = (*states[i])[0];
    for (const Word& u : s_) {
      int from = state_of.at(row(u));
      for (int c = 0; c < alphabet_.size(); ++c) {
        Word ua = u + static_cast<char>(c);
        int to = state_of.at(row(ua));  // closedness guarantees presence
        int& slot = h.next[static_cast<std::size_t>(from)][static_cast<std::size_t>(c)];
        if (slot >= 0 && slot != to) throw std::logic_error("conjecture: inconsistent table");
        slot = to;
      }
    }
    h.validate();
    return h;
  }

  OtSnapshot snapshot() const {
    OtSnapshot s;
    s.upper = s_;
    s.lower = lower_labels();
    s.experiments = e_;
    for (const Word& u : s.upper) s.rows.emplace(u, row(u));
    for (const Word& u : s.lower) s.rows.emplace(u, row(u));
    return s;
  }

private:
  Alphabet alphabet_;
  std::vector<Word> s_;
  std::map<Word, int> in_s_;
  std::vector<Word> e_;
  std::map<Word, std::vector<bool>> rows_;
};

}  // namespace autolearn
