#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "autolearn/dfa.hpp"
#include "autolearn/kripke.hpp"
#include "autolearn/words.hpp"

namespace autolearn {

// Per-query-type counters. Repeated membership questions are answered from a
// cache and counted as bookkeeping instead; raw totals are membership +
// bookkeeping.
struct QueryStats {
  std::string algorithm;
  long membership = 0;
  long equivalence = 0;
  long bookkeeping = 0;

  long raw_membership() const { return membership + bookkeeping; }
};

// A word with its teacher-assigned label.
struct LabeledExample {
  Word word;
  bool positive = false;
};

// Minimally adequate teacher synthesized from a hidden reference DFA.
// Answers membership and equivalence queries; never exposes the target.
class Teacher {
public:
  explicit Teacher(Dfa target, std::ostream* transcript = nullptr)
      : target_(std::move(target)), transcript_(transcript) {
    target_.validate();
  }

  const Alphabet& alphabet() const { return target_.alphabet; }

  bool membership(const Word& w) {
    alphabet().check_word(w);
    auto it = cache_.find(w);
    bool fresh = it == cache_.end();
    bool answer;
    if (fresh) {
      answer = accepts(target_, w);
      cache_.emplace(w, answer);
      ++stats_.membership;
    } else {
      answer = it->second;
      ++stats_.bookkeeping;
    }
    if (transcript_)
      *transcript_ << "M " << alphabet().render(w) << " -> " << (answer ? 1 : 0) << "\n";
    return answer;
  }

  // nullopt means yes; otherwise the shortest (lex tie-broken) word in the
  // symmetric difference. A partial hypothesis is an error, not a
  // counterexample.
  std::optional<Word> equivalence(const Dfa& hypothesis) {
    hypothesis.validate();
    if (hypothesis.alphabet != target_.alphabet)
      throw std::invalid_argument("equivalence: alphabet mismatch");
    ++stats_.equivalence;
    std::optional<Word> cex = difference_witness(hypothesis, target_);
    if (transcript_) {
      if (cex)
        *transcript_ << "E -> cex " << alphabet().render(*cex) << "\n";
      else
        *transcript_ << "E -> yes\n";
    }
    return cex;
  }

  const QueryStats& stats() const { return stats_; }
  QueryStats& stats() { return stats_; }

private:
  Dfa target_;
  std::unordered_map<Word, bool> cache_;
  QueryStats stats_;
  std::ostream* transcript_;
};

// Labels each scheduled word with its true membership. Labels come from the
// target directly; the stream is input data, not metered queries.
inline std::vector<LabeledExample> example_stream(Teacher& t, const std::vector<Word>& schedule) {
  std::vector<LabeledExample> out;
  out.reserve(schedule.size());
  for (const Word& w : schedule) out.push_back({w, t.membership(w)});
  return out;
}

// Teacher over a hidden Kripke structure; membership queries are per output
// bit, with per-bit caches and counters.
class KripkeTeacher {
public:
  explicit KripkeTeacher(KripkeStructure target, std::ostream* transcript = nullptr)
      : target_(std::move(target)), transcript_(transcript) {
    target_.validate();
    caches_.resize(static_cast<std::size_t>(target_.width));
    bit_membership_.assign(static_cast<std::size_t>(target_.width), 0);
  }

  const Alphabet& alphabet() const { return target_.alphabet; }
  int width() const { return target_.width; }

  bool membership(int bit, const Word& w) {
    if (bit < 0 || bit >= width()) throw std::invalid_argument("kripke membership: bit out of range");
    alphabet().check_word(w);
    auto& cache = caches_[static_cast<std::size_t>(bit)];
    auto it = cache.find(w);
    bool answer;
    if (it == cache.end()) {
      answer = target_.output_bit(w, bit);
      cache.emplace(w, answer);
      ++bit_membership_[static_cast<std::size_t>(bit)];
      ++stats_.membership;
    } else {
      answer = it->second;
      ++stats_.bookkeeping;
    }
    if (transcript_)
      *transcript_ << "K" << (bit + 1) << " " << alphabet().render(w) << " -> " << (answer ? 1 : 0)
                   << "\n";
    return answer;
  }

  // nullopt means behaviorally equivalent; otherwise a shortest word after
  // which outputs differ.
  std::optional<Word> equivalence(const KripkeStructure& hypothesis) {
    hypothesis.validate();
    if (hypothesis.alphabet != target_.alphabet || hypothesis.width != target_.width)
      throw std::invalid_argument("kripke equivalence: shape mismatch");
    ++stats_.equivalence;
    std::optional<Word> best;
    for (int c = 0; c < width(); ++c) {
      auto cex = difference_witness(bit_slice(hypothesis, c), bit_slice(target_, c));
      if (cex && (!best || shortlex_less(*cex, *best))) best = cex;
    }
    if (transcript_) {
      if (best)
        *transcript_ << "E -> cex " << alphabet().render(*best) << "\n";
      else
        *transcript_ << "E -> yes\n";
    }
    return best;
  }

  const QueryStats& stats() const { return stats_; }
  QueryStats& stats() { return stats_; }
  long bit_membership(int bit) const { return bit_membership_.at(static_cast<std::size_t>(bit)); }

private:
  KripkeStructure target_;
  std::vector<std::unordered_map<Word, bool>> caches_;
  std::vector<long> bit_membership_;
  QueryStats stats_;
  std::ostream* transcript_;
};

}  // namespace autolearn
