#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "autolearn/dfa.hpp"
#include "autolearn/words.hpp"

namespace autolearn {

// Nondeterministic acceptor; delta may be partial (empty successor sets).
// Used for RPNI quotients and for completing partial machines.
struct Nfa {
  Alphabet alphabet;
  std::vector<int> initials;                        // sorted, distinct
  std::vector<bool> accepting;
  std::vector<std::vector<std::vector<int>>> next;  // next[state][symbol] sorted

  int state_count() const { return static_cast<int>(next.size()); }

  void add_edge(int from, int symbol, int to) {
    auto& dst = next[static_cast<std::size_t>(from)][static_cast<std::size_t>(symbol)];
    auto it = std::lower_bound(dst.begin(), dst.end(), to);
    if (it == dst.end() || *it != to) dst.insert(it, to);
  }

  bool deterministic() const {
    if (initials.size() != 1) return false;
    for (const auto& row : next)
      for (const auto& dst : row)
        if (dst.size() > 1) return false;
    return true;
  }
};

inline Nfa nfa_from_dfa(const Dfa& d) {
  Nfa n;
  n.alphabet = d.alphabet;
  n.initials = {d.initial};
  n.accepting = d.accepting;
  n.next.assign(static_cast<std::size_t>(d.state_count()),
                std::vector<std::vector<int>>(static_cast<std::size_t>(d.alphabet.size())));
  for (int s = 0; s < d.state_count(); ++s)
    for (int c = 0; c < d.alphabet.size(); ++c)
      n.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] = {d.step(s, c)};
  return n;
}

inline bool nfa_accepts(const Nfa& n, const Word& w) {
  n.alphabet.check_word(w);
  std::set<int> cur(n.initials.begin(), n.initials.end());
  for (char c : w) {
    std::set<int> nxt;
    for (int s : cur)
      for (int t : n.next[static_cast<std::size_t>(s)][static_cast<unsigned char>(c)]) nxt.insert(t);
    cur.swap(nxt);
    if (cur.empty()) return false;
  }
  for (int s : cur)
    if (n.accepting[static_cast<std::size_t>(s)]) return true;
  return false;
}

// Subset construction. The empty subset becomes an explicit sink, so the
// result is total.
inline Dfa determinize(const Nfa& n) {
  Dfa out;
  out.alphabet = n.alphabet;
  std::map<std::vector<int>, int> id;
  std::deque<std::vector<int>> queue;
  auto intern = [&](std::vector<int> subset) {
    auto [it, fresh] = id.emplace(subset, static_cast<int>(id.size()));
    if (fresh) {
      bool acc = false;
      for (int s : subset)
        if (n.accepting[static_cast<std::size_t>(s)]) acc = true;
      out.accepting.push_back(acc);
      out.next.emplace_back(n.alphabet.size(), -1);
      queue.push_back(std::move(subset));
    }
    return it->second;
  };
  out.initial = intern(n.initials);
  while (!queue.empty()) {
    std::vector<int> subset = queue.front();
    queue.pop_front();
    int s = id.at(subset);
    for (int c = 0; c < n.alphabet.size(); ++c) {
      std::set<int> nxt;
      for (int q : subset)
        for (int t : n.next[static_cast<std::size_t>(q)][static_cast<std::size_t>(c)]) nxt.insert(t);
      out.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] =
          intern(std::vector<int>(nxt.begin(), nxt.end()));
    }
  }
  return out;
}

// Completes a deterministic, possibly partial machine into a total Dfa. One
// fresh self-looping sink is added only if some transition was missing.
inline Dfa complete_with_dead_state(const Nfa& n) {
  if (!n.deterministic()) throw std::invalid_argument("complete_with_dead_state: input is nondeterministic");
  bool missing = false;
  for (const auto& row : n.next)
    for (const auto& dst : row)
      if (dst.empty()) missing = true;
  Dfa out;
  out.alphabet = n.alphabet;
  out.initial = n.initials.at(0);
  out.accepting = n.accepting;
  int sink = n.state_count();
  out.next.assign(static_cast<std::size_t>(n.state_count() + (missing ? 1 : 0)),
                  std::vector<int>(static_cast<std::size_t>(n.alphabet.size()), sink));
  if (missing) out.accepting.push_back(false);
  for (int s = 0; s < n.state_count(); ++s)
    for (int c = 0; c < n.alphabet.size(); ++c) {
      const auto& dst = n.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)];
      if (!dst.empty()) out.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] = dst[0];
    }
  return out;
}

}  // namespace autolearn
