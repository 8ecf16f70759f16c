#pragma once

// Shared test utilities: fixture loading, seeded random machine generators,
// and independent oracles (enumeration, pair-marking minimality) used to
// cross-check the library implementations.

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "autolearn/dfa.hpp"
#include "autolearn/io.hpp"
#include "autolearn/kripke.hpp"
#include "autolearn/nfa.hpp"
#include "autolearn/words.hpp"

namespace testsupport {

using namespace autolearn;

inline std::string data_path(const std::string& name) {
  return std::string(AUTOLEARN_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline Dfa load_dfa(const std::string& name) { return parse_dfa(read_file(data_path(name))); }
inline KripkeStructure load_kripke(const std::string& name) {
  return parse_kripke(read_file(data_path(name)));
}

inline std::vector<Word> all_words_up_to(const Alphabet& a, int max_len) {
  std::vector<Word> out = {Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int c = 0; c < a.size(); ++c) out.push_back(out[i] + static_cast<char>(c));
    begin = end;
  }
  return out;
}

inline Dfa random_dfa(std::mt19937& rng, int states, const Alphabet& a) {
  Dfa d;
  d.alphabet = a;
  d.initial = 0;
  std::uniform_int_distribution<int> state_dist(0, states - 1);
  std::bernoulli_distribution acc(0.4);
  for (int s = 0; s < states; ++s) {
    d.accepting.push_back(acc(rng));
    std::vector<int> row;
    for (int c = 0; c < a.size(); ++c) row.push_back(state_dist(rng));
    d.next.push_back(std::move(row));
  }
  return d;
}

// Random minimal DFA with a state count in [lo, hi].
inline Dfa random_minimal_dfa(std::mt19937& rng, int lo, int hi, const Alphabet& a) {
  for (;;) {
    Dfa d = minimize(random_dfa(rng, hi + 2, a));
    if (d.state_count() >= lo && d.state_count() <= hi) return d;
  }
}

// Random minimal DFA with exactly n states.
inline Dfa random_minimal_dfa_exact(std::mt19937& rng, int n, const Alphabet& a) {
  for (;;) {
    Dfa d = minimize(random_dfa(rng, n + 2, a));
    if (d.state_count() == n) return d;
  }
}

inline Nfa random_nfa(std::mt19937& rng, int states, const Alphabet& a) {
  Nfa n;
  n.alphabet = a;
  n.accepting.resize(static_cast<std::size_t>(states));
  n.next.assign(static_cast<std::size_t>(states),
                std::vector<std::vector<int>>(static_cast<std::size_t>(a.size())));
  std::bernoulli_distribution acc(0.4), edge(0.35), init(0.5);
  for (int s = 0; s < states; ++s) {
    n.accepting[static_cast<std::size_t>(s)] = acc(rng);
    for (int c = 0; c < a.size(); ++c)
      for (int t = 0; t < states; ++t)
        if (edge(rng)) n.add_edge(s, c, t);
  }
  for (int s = 0; s < states; ++s)
    if (init(rng)) n.initials.push_back(s);
  if (n.initials.empty()) n.initials.push_back(0);
  return n;
}

inline KripkeStructure random_kripke(std::mt19937& rng, int states, int width, const Alphabet& a) {
  KripkeStructure k;
  k.alphabet = a;
  k.initial = 0;
  k.width = width;
  std::uniform_int_distribution<int> state_dist(0, states - 1);
  std::uniform_int_distribution<std::uint64_t> bits(0, (1ull << width) - 1);
  for (int s = 0; s < states; ++s) {
    k.output.push_back(bits(rng));
    std::vector<int> row;
    for (int c = 0; c < a.size(); ++c) row.push_back(state_dist(rng));
    k.next.push_back(std::move(row));
  }
  return k;
}

// Independent minimality oracle: reachable states, then the classic
// table-filling (pair marking) algorithm; returns the number of equivalence
// classes. Deliberately a different algorithm from minimize().
inline int table_filling_state_count(const Dfa& d) {
  std::vector<int> reach;
  std::vector<bool> seen(static_cast<std::size_t>(d.state_count()), false);
  reach.push_back(d.initial);
  seen[static_cast<std::size_t>(d.initial)] = true;
  for (std::size_t i = 0; i < reach.size(); ++i)
    for (int c = 0; c < d.alphabet.size(); ++c) {
      int t = d.step(reach[i], c);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        reach.push_back(t);
      }
    }
  int n = static_cast<int>(reach.size());
  std::vector<std::vector<bool>> marked(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  auto idx = [&](int s) {
    for (int i = 0; i < n; ++i)
      if (reach[static_cast<std::size_t>(i)] == s) return i;
    return -1;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d.accepting[static_cast<std::size_t>(reach[static_cast<std::size_t>(i)])] !=
          d.accepting[static_cast<std::size_t>(reach[static_cast<std::size_t>(j)])])
        marked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (marked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) continue;
        for (int c = 0; c < d.alphabet.size(); ++c) {
          int ti = idx(d.step(reach[static_cast<std::size_t>(i)], c));
          int tj = idx(d.step(reach[static_cast<std::size_t>(j)], c));
          if (marked[static_cast<std::size_t>(ti)][static_cast<std::size_t>(tj)]) {
            marked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
            changed = true;
            break;
          }
        }
      }
  }
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[static_cast<std::size_t>(i)] >= 0) continue;
    for (int j = i; j < n; ++j)
      if (!marked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) cls[static_cast<std::size_t>(j)] = count;
    ++count;
  }
  return count;
}

// BFS-shortest access word for every live state of a total DFA; the live set
// handed to batch ID.
inline std::vector<Word> live_access_words(const Dfa& d) {
  int n = d.state_count();
  std::vector<bool> live(static_cast<std::size_t>(n), false);
  for (int s = 0; s < n; ++s) live[static_cast<std::size_t>(s)] = d.accepting[static_cast<std::size_t>(s)];
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (live[static_cast<std::size_t>(s)]) continue;
      for (int c = 0; c < d.alphabet.size(); ++c)
        if (live[static_cast<std::size_t>(d.step(s, c))]) {
          live[static_cast<std::size_t>(s)] = true;
          changed = true;
          break;
        }
    }
  }
  std::vector<Word> access(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> order;
  seen[static_cast<std::size_t>(d.initial)] = true;
  order.push_back(d.initial);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c = 0; c < d.alphabet.size(); ++c) {
      int t = d.step(order[i], c);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        access[static_cast<std::size_t>(t)] = access[static_cast<std::size_t>(order[i])] + static_cast<char>(c);
        order.push_back(t);
      }
    }
  std::vector<Word> out;
  for (int s : order)
    if (live[static_cast<std::size_t>(s)]) out.push_back(access[static_cast<std::size_t>(s)]);
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

}  // namespace testsupport
