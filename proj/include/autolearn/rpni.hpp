#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "autolearn/errors.hpp"
#include "autolearn/nfa.hpp"
#include "autolearn/prefix_tree.hpp"
#include "autolearn/teacher.hpp"

namespace autolearn {

// Positive and negative sample sets over one alphabet; disjointness is an
// invariant.
struct Sample {
  Alphabet alphabet;
  std::set<Word> positives;
  std::set<Word> negatives;

  void validate() const {
    for (const Word& w : positives)
      if (negatives.count(w)) throw DomainError("sample word labeled both positive and negative");
  }
};

// Prefix tree plus the current partition over its states.
struct MergeState {
  PrefixTree tree;
  StatePartition pi;

  Nfa quotient() const { return autolearn::quotient(tree, pi); }
};

// True iff the quotient rejects every negative word.
inline bool consistent_with_negatives(const PrefixTree& tree, const StatePartition& pi,
                                      const std::set<Word>& negatives) {
  Nfa q = quotient(tree, pi);
  for (const Word& w : negatives)
    if (nfa_accepts(q, w)) return false;
  return true;
}

// Full sample check: the quotient must accept all of S+ and reject all of
// S-. Returns the violating word when it fails: the shortlex-greatest
// violation, matching the golden merge traces.
inline std::optional<Word> consistency_violation(const PrefixTree& tree, const StatePartition& pi,
                                                 const Sample& sample) {
  Nfa q = quotient(tree, pi);
  std::optional<Word> worst;
  auto note = [&](const Word& w) {
    if (!worst || shortlex_less(*worst, w)) worst = w;
  };
  for (const Word& w : sample.positives)
    if (!nfa_accepts(q, w)) note(w);
  for (const Word& w : sample.negatives)
    if (nfa_accepts(q, w)) note(w);
  return worst;
}

struct MergeAttempt {
  Word block;  // access word of the earlier block's representative
  Word u;      // the state being merged
  bool accepted = false;
  std::optional<Word> violation;
};

struct RpniResult {
  Dfa machine;
  MergeState state;
  std::vector<MergeAttempt> attempts;
};

namespace detail {

inline Dfa finish_quotient(const MergeState& s) { return minimize(determinize(s.quotient())); }

inline bool quotient_deterministic(const MergeState& s) { return s.quotient().deterministic(); }

// Post-order depth-first traversal with children in reverse alphabet order:
// the deepest, lexicographically largest access words come first.
inline void reverse_postorder(const PrefixTree& tree, int state, std::vector<int>& out) {
  for (int c = tree.alphabet.size() - 1; c >= 0; --c) {
    int child = tree.next[static_cast<std::size_t>(state)][static_cast<std::size_t>(c)];
    if (child >= 0) reverse_postorder(tree, child, out);
  }
  out.push_back(state);
}

}  // namespace detail

// RPNI over the shortlex-ordered prefix-tree states: for each u (skipping
// lambda and states already swallowed by an earlier block), try each
// strictly earlier block in shortlex order and accept the first join whose
// quotient stays consistent with the sample.
inline RpniResult rpni_run(const Sample& sample) {
  sample.validate();
  RpniResult res;
  res.state.tree = build_prefix_tree(sample.positives, sample.alphabet);
  res.state.pi = StatePartition::identity(res.state.tree.state_count());
  for (int u = 1; u < res.state.tree.state_count(); ++u) {
    if (res.state.pi.rep(u) != u) continue;  // merged into an earlier block already
    for (int r : res.state.pi.representatives()) {
      if (r >= u) break;
      StatePartition candidate = join(res.state.pi, r, u);
      MergeAttempt attempt;
      attempt.block = res.state.tree.words[static_cast<std::size_t>(r)];
      attempt.u = res.state.tree.words[static_cast<std::size_t>(u)];
      attempt.violation = consistency_violation(res.state.tree, candidate, sample);
      attempt.accepted = !attempt.violation.has_value();
      res.attempts.push_back(attempt);
      if (attempt.accepted) {
        res.state.pi = candidate;
        break;
      }
    }
  }
  res.machine = detail::finish_quotient(res.state);
  return res;
}

struct Rpni2Result {
  Dfa machine;
  MergeState state;
  bool prior_consistent = false;
  std::vector<Word> split_words;  // every word processed by the split pass
  std::vector<MergeAttempt> attempts;
};

// Recursive splitting: walk the tree depth first in reverse lexicographical
// order, detaching each visited state from its block (a no-op for
// singletons), until the quotient is deterministic and consistent with the
// extended sample.
inline MergeState rpni2_split(const MergeState& prior, const Sample& extended,
                              std::vector<Word>* split_log = nullptr) {
  if (detail::quotient_deterministic(prior) &&
      !consistency_violation(prior.tree, prior.pi, extended))
    throw std::logic_error("rpni2_split: state already consistent");
  MergeState s = prior;
  std::vector<int> order;
  detail::reverse_postorder(s.tree, 0, order);
  for (int state : order) {
    s.pi = split_state(s.pi, state);
    if (split_log) split_log->push_back(s.tree.words[static_cast<std::size_t>(state)]);
    if (detail::quotient_deterministic(s) && !consistency_violation(s.tree, s.pi, extended)) return s;
  }
  // All singletons: the quotient is the tree itself, deterministic and
  // consistent with any sample that agrees with the tree's acceptances.
  return s;
}

// Incremental RPNI. A consistent example leaves the prior solution as is;
// otherwise the quotient is repaired by recursive splitting, the example
// joins the sample, and merging resumes with each state offered only to its
// tree parent's block.
inline Rpni2Result rpni2_run(const Sample& sample, const MergeState& prior, const LabeledExample& x) {
  sample.validate();
  if ((x.positive && sample.negatives.count(x.word)) || (!x.positive && sample.positives.count(x.word)))
    throw DomainError("rpni2_run: new example contradicts the sample");

  Rpni2Result res;
  res.state = prior;

  if (nfa_accepts(prior.quotient(), x.word) == x.positive) {
    res.prior_consistent = true;
    res.machine = detail::finish_quotient(res.state);
    return res;
  }

  Sample extended = sample;
  if (x.positive)
    extended.positives.insert(x.word);
  else
    extended.negatives.insert(x.word);

  if (x.positive) {
    // The tree accepts exactly S+, so an inconsistent positive example always
    // needs the tree rebuilt over S+ plus the new word; carried-over blocks
    // are keyed by access words, new states start as singletons.
    PrefixTree wider = build_prefix_tree(extended.positives, res.state.tree.alphabet);
    StatePartition pi = StatePartition::identity(wider.state_count());
    for (int s = 0; s < res.state.tree.state_count(); ++s) {
      int rep = res.state.pi.rep(s);
      if (rep == s) continue;
      int a = wider.index.at(res.state.tree.words[static_cast<std::size_t>(rep)]);
      int b = wider.index.at(res.state.tree.words[static_cast<std::size_t>(s)]);
      if (pi.rep(a) != pi.rep(b)) pi = join(pi, pi.rep(a), pi.rep(b));
    }
    res.state.tree = wider;
    res.state.pi = pi;
  }

  if (!detail::quotient_deterministic(res.state) ||
      consistency_violation(res.state.tree, res.state.pi, extended))
    res.state = rpni2_split(res.state, extended, &res.split_words);

  for (int u = 1; u < res.state.tree.state_count(); ++u) {
    if (res.state.pi.rep(u) != u) continue;
    int parent = res.state.tree.parent[static_cast<std::size_t>(u)];
    int parent_rep = res.state.pi.rep(parent);
    if (parent_rep == u) continue;
    StatePartition candidate = join(res.state.pi, parent_rep, u);
    MergeAttempt attempt;
    attempt.block = res.state.tree.words[static_cast<std::size_t>(parent)];
    attempt.u = res.state.tree.words[static_cast<std::size_t>(u)];
    attempt.violation = consistency_violation(res.state.tree, candidate, extended);
    attempt.accepted = !attempt.violation.has_value();
    res.attempts.push_back(attempt);
    if (attempt.accepted) res.state.pi = candidate;
  }
  res.machine = detail::finish_quotient(res.state);
  return res;
}

}  // namespace autolearn
