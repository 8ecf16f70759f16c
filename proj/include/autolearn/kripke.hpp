#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <vector>

#include "autolearn/dfa.hpp"
#include "autolearn/words.hpp"

namespace autolearn {

// k-bit-output Moore machine over a finite input alphabet. Outputs are
// attached to states; bit c of a state's output is (output >> c) & 1.
struct KripkeStructure {
  Alphabet alphabet;
  int initial = 0;
  int width = 1;
  std::vector<std::uint64_t> output;
  std::vector<std::vector<int>> next;

  int state_count() const { return static_cast<int>(next.size()); }

  int step(int state, int symbol) const {
    return next[static_cast<std::size_t>(state)][static_cast<std::size_t>(symbol)];
  }

  int run(const Word& w) const {
    int s = initial;
    for (char c : w) s = step(s, static_cast<unsigned char>(c));
    return s;
  }

  std::uint64_t output_after(const Word& w) const {
    alphabet.check_word(w);
    return output[static_cast<std::size_t>(run(w))];
  }

  bool output_bit(const Word& w, int bit) const {
    if (bit < 0 || bit >= width) throw std::invalid_argument("output bit out of range");
    return (output_after(w) >> bit) & 1u;
  }

  void validate() const {
    if (next.empty()) throw std::invalid_argument("kripke structure has no states");
    if (width < 1 || width > 64) throw std::invalid_argument("kripke width out of range");
    if (output.size() != next.size()) throw std::invalid_argument("kripke output size mismatch");
    for (const auto& row : next) {
      if (static_cast<int>(row.size()) != alphabet.size())
        throw std::invalid_argument("kripke transition row size mismatch");
      for (int t : row)
        if (t < 0 || t >= state_count()) throw std::invalid_argument("kripke transition out of range");
    }
  }
};

// One-bit slice: same states and transitions, accepting = output bit c set.
inline Dfa bit_slice(const KripkeStructure& k, int c) {
  if (c < 0 || c >= k.width) throw std::invalid_argument("bit_slice: bit index out of range");
  Dfa d;
  d.alphabet = k.alphabet;
  d.initial = k.initial;
  d.next = k.next;
  d.accepting.resize(k.output.size());
  for (std::size_t s = 0; s < k.output.size(); ++s) d.accepting[s] = (k.output[s] >> c) & 1u;
  return d;
}

// Reachable product of one-bit acceptors; output bit c of a product state is
// the acceptance flag of component c (bit order = slice order).
inline KripkeStructure slice_product(const std::vector<Dfa>& slices) {
  if (slices.empty()) throw std::invalid_argument("slice_product: no slices");
  if (slices.size() > 64) throw std::invalid_argument("slice_product: too many slices");
  for (const Dfa& s : slices)
    if (s.alphabet != slices[0].alphabet) throw std::invalid_argument("slice_product: alphabet mismatch");
  KripkeStructure out;
  out.alphabet = slices[0].alphabet;
  out.width = static_cast<int>(slices.size());
  std::map<std::vector<int>, int> id;
  std::deque<std::vector<int>> queue;
  auto intern = [&](std::vector<int> tuple) {
    auto [it, fresh] = id.emplace(tuple, static_cast<int>(id.size()));
    if (fresh) {
      std::uint64_t bits = 0;
      for (std::size_t c = 0; c < slices.size(); ++c)
        if (slices[c].accepting[static_cast<std::size_t>(tuple[c])]) bits |= (1ull << c);
      out.output.push_back(bits);
      out.next.emplace_back(out.alphabet.size(), -1);
      queue.push_back(std::move(tuple));
    }
    return it->second;
  };
  std::vector<int> start;
  for (const Dfa& s : slices) start.push_back(s.initial);
  out.initial = intern(start);
  while (!queue.empty()) {
    std::vector<int> tuple = queue.front();
    queue.pop_front();
    int s = id.at(tuple);
    for (int c = 0; c < out.alphabet.size(); ++c) {
      std::vector<int> nxt(tuple.size());
      for (std::size_t i = 0; i < tuple.size(); ++i) nxt[i] = slices[i].step(tuple[i], c);
      out.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)] = intern(std::move(nxt));
    }
  }
  return out;
}

// Behavioral equivalence of two structures: every bit slice pair is
// language-equal (checked by symmetric-difference emptiness).
inline bool kripke_equivalent(const KripkeStructure& a, const KripkeStructure& b) {
  if (a.alphabet != b.alphabet || a.width != b.width) return false;
  for (int c = 0; c < a.width; ++c)
    if (!language_equal(bit_slice(a, c), bit_slice(b, c))) return false;
  return true;
}

}  // namespace autolearn
