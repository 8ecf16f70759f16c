#pragma once

#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "autolearn/words.hpp"

namespace autolearn {

// Total deterministic acceptor. Every (state, symbol) pair has a successor.
struct Dfa {
  Alphabet alphabet;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> next;  // next[state][symbol]

  int state_count() const { return static_cast<int>(next.size()); }

  int step(int state, int symbol) const { return next[static_cast<std::size_t>(state)][static_cast<std::size_t>(symbol)]; }

  int run(const Word& w) const {
    int s = initial;
    for (char c : w) s = step(s, static_cast<unsigned char>(c));
    return s;
  }

  void validate() const {
    if (next.empty()) throw std::invalid_argument("dfa has no states");
    if (accepting.size() != next.size()) throw std::invalid_argument("dfa accepting size mismatch");
    if (initial < 0 || initial >= state_count()) throw std::invalid_argument("dfa initial out of range");
    for (const auto& row : next) {
      if (static_cast<int>(row.size()) != alphabet.size())
        throw std::invalid_argument("dfa transition row size mismatch");
      for (int t : row)
        if (t < 0 || t >= state_count()) throw std::invalid_argument("dfa transition out of range");
    }
  }
};

inline bool accepts(const Dfa& d, const Word& w) {
  d.alphabet.check_word(w);
  return d.accepting[static_cast<std::size_t>(d.run(w))];
}

// Reachable product automaton; the language is combine applied pointwise.
inline Dfa product(const Dfa& a, const Dfa& b, const std::function<bool(bool, bool)>& combine) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("product: alphabet mismatch");
  Dfa out;
  out.alphabet = a.alphabet;
  std::map<std::pair<int, int>, int> id;
  std::deque<std::pair<int, int>> queue;
  auto intern = [&](int x, int y) {
    auto [it, fresh] = id.emplace(std::make_pair(x, y), static_cast<int>(id.size()));
    if (fresh) {
      out.accepting.push_back(combine(a.accepting[static_cast<std::size_t>(x)],
                                      b.accepting[static_cast<std::size_t>(y)]));
      out.next.emplace_back(a.alphabet.size(), -1);
      queue.emplace_back(x, y);
    }
    return it->second;
  };
  out.initial = intern(a.initial, b.initial);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    int s = id.at({x, y});
    for (int c = 0; c < a.alphabet.size(); ++c)
      out.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] = intern(a.step(x, c), b.step(y, c));
  }
  return out;
}

// BFS-shortest accepted word, expanding symbols in alphabet order so ties
// break lexicographically. Absent iff the language is empty.
inline std::optional<Word> shortest_accepted(const Dfa& d) {
  std::vector<bool> seen(static_cast<std::size_t>(d.state_count()), false);
  std::deque<std::pair<int, Word>> queue;
  seen[static_cast<std::size_t>(d.initial)] = true;
  queue.emplace_back(d.initial, Word{});
  while (!queue.empty()) {
    auto [s, w] = queue.front();
    queue.pop_front();
    if (d.accepting[static_cast<std::size_t>(s)]) return w;
    for (int c = 0; c < d.alphabet.size(); ++c) {
      int t = d.step(s, c);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        Word wc = w;
        wc.push_back(static_cast<char>(c));
        queue.emplace_back(t, wc);
      }
    }
  }
  return std::nullopt;
}

// Renumbers states in BFS discovery order from the initial state, following
// symbols in alphabet order. Unreachable states are dropped.
inline Dfa canonicalize(const Dfa& d) {
  std::vector<int> remap(static_cast<std::size_t>(d.state_count()), -1);
  std::vector<int> order;
  std::deque<int> queue;
  remap[static_cast<std::size_t>(d.initial)] = 0;
  order.push_back(d.initial);
  queue.push_back(d.initial);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int c = 0; c < d.alphabet.size(); ++c) {
      int t = d.step(s, c);
      if (remap[static_cast<std::size_t>(t)] < 0) {
        remap[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  Dfa out;
  out.alphabet = d.alphabet;
  out.initial = 0;
  out.accepting.resize(order.size());
  out.next.assign(order.size(), std::vector<int>(static_cast<std::size_t>(d.alphabet.size())));
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.accepting[i] = d.accepting[static_cast<std::size_t>(order[i])];
    for (int c = 0; c < d.alphabet.size(); ++c)
      out.next[i][static_cast<std::size_t>(c)] = remap[static_cast<std::size_t>(d.step(order[i], c))];
  }
  return out;
}

inline bool isomorphic(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet) return false;
  Dfa ca = canonicalize(a);
  Dfa cb = canonicalize(b);
  return ca.accepting == cb.accepting && ca.next == cb.next;
}

// Language-minimal equivalent DFA by partition refinement on the reachable
// part, canonically numbered.
inline Dfa minimize(const Dfa& d) {
  Dfa r = canonicalize(d);
  int n = r.state_count();
  std::vector<int> block(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) block[static_cast<std::size_t>(s)] = r.accepting[static_cast<std::size_t>(s)] ? 1 : 0;
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> fresh(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig;
      sig.reserve(static_cast<std::size_t>(r.alphabet.size()) + 1);
      sig.push_back(block[static_cast<std::size_t>(s)]);
      for (int c = 0; c < r.alphabet.size(); ++c)
        sig.push_back(block[static_cast<std::size_t>(r.step(s, c))]);
      auto [it, inserted] = sig_to_block.emplace(std::move(sig), static_cast<int>(sig_to_block.size()));
      (void)inserted;
      fresh[static_cast<std::size_t>(s)] = it->second;
    }
    if (fresh != block) {
      std::vector<int> old = block;
      block = fresh;
      std::map<int, int> distinct_old, distinct_new;
      for (int s = 0; s < n; ++s) {
        distinct_old.emplace(old[static_cast<std::size_t>(s)], 0);
        distinct_new.emplace(block[static_cast<std::size_t>(s)], 0);
      }
      changed = distinct_new.size() != distinct_old.size();
    }
  }
  std::map<int, int> block_id;
  for (int s = 0; s < n; ++s) block_id.emplace(block[static_cast<std::size_t>(s)], 0);
  int k = 0;
  for (auto& [key, val] : block_id) val = k++;
  Dfa out;
  out.alphabet = r.alphabet;
  out.initial = block_id.at(block[static_cast<std::size_t>(r.initial)]);
  out.accepting.assign(static_cast<std::size_t>(k), false);
  out.next.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(r.alphabet.size()), -1));
  for (int s = 0; s < n; ++s) {
    int bs = block_id.at(block[static_cast<std::size_t>(s)]);
    out.accepting[static_cast<std::size_t>(bs)] = r.accepting[static_cast<std::size_t>(s)];
    for (int c = 0; c < r.alphabet.size(); ++c)
      out.next[static_cast<std::size_t>(bs)][static_cast<std::size_t>(c)] =
          block_id.at(block[static_cast<std::size_t>(r.step(s, c))]);
  }
  return canonicalize(out);
}

// Language equivalence via symmetric-difference product emptiness. The
// returned word, when present, is the shortest (lex tie-broken)
// distinguishing word.
inline std::optional<Word> difference_witness(const Dfa& a, const Dfa& b) {
  return shortest_accepted(product(a, b, [](bool x, bool y) { return x != y; }));
}

inline bool language_equal(const Dfa& a, const Dfa& b) { return !difference_witness(a, b).has_value(); }

}  // namespace autolearn
