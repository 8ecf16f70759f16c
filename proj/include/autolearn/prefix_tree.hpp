#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "autolearn/nfa.hpp"
#include "autolearn/words.hpp"

namespace autolearn {

// All prefixes of all positives, sorted by length then alphabet order.
inline std::vector<Word> shortlex_prefixes(const std::set<Word>& positives) {
  std::set<Word> all;
  for (const Word& w : positives)
    for (const Word& p : prefixes(w)) all.insert(p);
  std::vector<Word> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

// Prefix tree acceptor over S+. State ids equal shortlex ranks of the access
// words, so state 0 is always the root (lambda). Partial: no dead state.
struct PrefixTree {
  Alphabet alphabet;
  std::vector<Word> words;             // words[state] = access word, shortlex order
  std::vector<int> parent;             // -1 for the root
  std::vector<std::vector<int>> next;  // next[state][symbol] = child or -1
  std::vector<bool> accepting;
  std::map<Word, int> index;

  int state_count() const { return static_cast<int>(words.size()); }

  Nfa to_nfa() const {
    Nfa n;
    n.alphabet = alphabet;
    n.initials = {0};
    n.accepting = accepting;
    n.next.assign(words.size(), std::vector<std::vector<int>>(static_cast<std::size_t>(alphabet.size())));
    for (int s = 0; s < state_count(); ++s)
      for (int c = 0; c < alphabet.size(); ++c)
        if (next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] >= 0)
          n.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] = {
              next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)]};
    return n;
  }
};

inline PrefixTree build_prefix_tree(const std::set<Word>& positives, const Alphabet& alphabet) {
  if (positives.empty()) throw std::invalid_argument("build_prefix_tree: empty positive sample");
  for (const Word& w : positives) alphabet.check_word(w);
  PrefixTree t;
  t.alphabet = alphabet;
  t.words = shortlex_prefixes(positives);
  t.parent.assign(t.words.size(), -1);
  t.next.assign(t.words.size(), std::vector<int>(static_cast<std::size_t>(alphabet.size()), -1));
  t.accepting.assign(t.words.size(), false);
  for (int s = 0; s < t.state_count(); ++s) t.index.emplace(t.words[static_cast<std::size_t>(s)], s);
  for (int s = 0; s < t.state_count(); ++s) {
    const Word& w = t.words[static_cast<std::size_t>(s)];
    if (positives.count(w)) t.accepting[static_cast<std::size_t>(s)] = true;
    if (!w.empty()) {
      int p = t.index.at(w.substr(0, w.size() - 1));
      t.parent[static_cast<std::size_t>(s)] = p;
      t.next[static_cast<std::size_t>(p)][static_cast<unsigned char>(w.back())] = s;
    }
  }
  return t;
}

// Partition of the states of a host automaton into disjoint blocks. Blocks
// are identified by their smallest member state.
struct StatePartition {
  std::vector<int> block_of;  // state -> representative (smallest member)

  static StatePartition identity(int n) {
    StatePartition p;
    p.block_of.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p.block_of[static_cast<std::size_t>(i)] = i;
    return p;
  }

  int state_count() const { return static_cast<int>(block_of.size()); }

  int rep(int state) const { return block_of.at(static_cast<std::size_t>(state)); }

  std::vector<int> block_members(int representative) const {
    std::vector<int> out;
    for (int s = 0; s < state_count(); ++s)
      if (block_of[static_cast<std::size_t>(s)] == representative) out.push_back(s);
    return out;
  }

  std::vector<int> representatives() const {
    std::set<int> reps(block_of.begin(), block_of.end());
    return std::vector<int>(reps.begin(), reps.end());
  }

  int block_count() const { return static_cast<int>(representatives().size()); }

  void validate(int host_states) const {
    if (state_count() != host_states) throw std::invalid_argument("partition does not cover host states");
    for (int s = 0; s < state_count(); ++s) {
      int r = block_of[static_cast<std::size_t>(s)];
      if (r < 0 || r >= host_states || block_of[static_cast<std::size_t>(r)] != r)
        throw std::invalid_argument("partition block representative invalid");
    }
  }
};

// J(pi, Bi, Bj): replaces the two blocks by their union.
inline StatePartition join(const StatePartition& pi, int rep_i, int rep_j) {
  if (rep_i == rep_j) throw std::logic_error("join: identical blocks");
  if (pi.rep(rep_i) != rep_i || pi.rep(rep_j) != rep_j)
    throw std::invalid_argument("join: block not in partition");
  StatePartition out = pi;
  int keep = std::min(rep_i, rep_j);
  int drop = std::max(rep_i, rep_j);
  for (int s = 0; s < out.state_count(); ++s)
    if (out.block_of[static_cast<std::size_t>(s)] == drop) out.block_of[static_cast<std::size_t>(s)] = keep;
  return out;
}

// Detaches one state into a fresh singleton block. No-op if already alone.
inline StatePartition split_state(const StatePartition& pi, int state) {
  StatePartition out = pi;
  int old = out.rep(state);
  auto members = out.block_members(old);
  if (members.size() == 1) return out;
  out.block_of[static_cast<std::size_t>(state)] = state;
  if (old == state) {
    int fresh = -1;
    for (int m : members)
      if (m != state) fresh = (fresh < 0 || m < fresh) ? m : fresh;
    for (int m : members)
      if (m != state) out.block_of[static_cast<std::size_t>(m)] = fresh;
  }
  return out;
}

// Quotient of the tree by the partition; may be nondeterministic. Block ids
// are compacted in order of their smallest member.
inline Nfa quotient(const PrefixTree& tree, const StatePartition& pi) {
  pi.validate(tree.state_count());
  std::vector<int> reps = pi.representatives();
  std::map<int, int> id;
  for (std::size_t i = 0; i < reps.size(); ++i) id.emplace(reps[i], static_cast<int>(i));
  Nfa q;
  q.alphabet = tree.alphabet;
  q.accepting.assign(reps.size(), false);
  q.next.assign(reps.size(), std::vector<std::vector<int>>(static_cast<std::size_t>(tree.alphabet.size())));
  q.initials = {id.at(pi.rep(0))};
  for (int s = 0; s < tree.state_count(); ++s) {
    int b = id.at(pi.rep(s));
    if (tree.accepting[static_cast<std::size_t>(s)]) q.accepting[static_cast<std::size_t>(b)] = true;
    for (int c = 0; c < tree.alphabet.size(); ++c) {
      int t = tree.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)];
      if (t >= 0) q.add_edge(b, c, id.at(pi.rep(t)));
    }
  }
  return q;
}

}  // namespace autolearn
