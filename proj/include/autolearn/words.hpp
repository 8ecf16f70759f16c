#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace autolearn {

// A word is a sequence of symbol indices into an Alphabet, stored one index
// per char. Index encoding keeps shortlex comparison and prefix handling the
// plain std::string operations. The empty string is the empty word (lambda).
using Word = std::string;

inline Word word_of(std::initializer_list<int> idx) {
  Word w;
  for (int i : idx) w.push_back(static_cast<char>(i));
  return w;
}

// Ordered set of distinct symbols. The ordering is total and fixed; it drives
// every lexicographic/shortlex order in the library.
class Alphabet {
public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw std::invalid_argument("alphabet must be non-empty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) throw std::invalid_argument("alphabet symbol must be non-empty");
      if (!index_.emplace(symbols_[i], static_cast<int>(i)).second)
        throw std::invalid_argument("duplicate alphabet symbol: " + symbols_[i]);
    }
  }

  static Alphabet from_chars(const std::string& chars) {
    std::vector<std::string> syms;
    for (char c : chars) syms.emplace_back(1, c);
    return Alphabet(std::move(syms));
  }

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(int i) const { return symbols_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  int index_of(const std::string& sym) const {
    auto it = index_.find(sym);
    if (it == index_.end()) throw std::invalid_argument("symbol not in alphabet: " + sym);
    return it->second;
  }

  bool contains(const std::string& sym) const { return index_.count(sym) != 0; }

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  // Renders a word as the concatenation of its symbols; lambda renders as "".
  std::string render(const Word& w) const {
    if (w.empty()) return "\"\"";
    std::string out;
    for (char c : w) out += symbol(static_cast<unsigned char>(c));
    return out;
  }

  // Parses a display string by greedy longest-symbol match. All shipped
  // fixtures use single-character symbols, where this degenerates to a
  // per-character lookup.
  Word parse_word(const std::string& text) const {
    Word w;
    std::size_t pos = 0;
    while (pos < text.size()) {
      int best = -1;
      std::size_t best_len = 0;
      for (int i = 0; i < size(); ++i) {
        const std::string& s = symbols_[static_cast<std::size_t>(i)];
        if (s.size() > best_len && text.compare(pos, s.size(), s) == 0) {
          best = i;
          best_len = s.size();
        }
      }
      if (best < 0)
        throw std::invalid_argument("cannot parse word \"" + text + "\" at position " +
                                    std::to_string(pos));
      w.push_back(static_cast<char>(best));
      pos += best_len;
    }
    return w;
  }

  void check_word(const Word& w) const {
    for (char c : w)
      if (static_cast<unsigned char>(c) >= symbols_.size())
        throw std::invalid_argument("word contains symbol outside alphabet");
  }

private:
  std::vector<std::string> symbols_;
  std::map<std::string, int> index_;
};

// Length-then-lexicographic order; the tie-break order used everywhere.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// All prefixes of w including lambda and w itself, shortest first.
inline std::vector<Word> prefixes(const Word& w) {
  std::vector<Word> out;
  out.reserve(w.size() + 1);
  for (std::size_t i = 0; i <= w.size(); ++i) out.push_back(w.substr(0, i));
  return out;
}

inline bool is_prefix_closed(const std::vector<Word>& words) {
  std::map<Word, bool> present;
  for (const Word& w : words) present[w] = true;
  for (const Word& w : words)
    if (!w.empty() && !present.count(w.substr(0, w.size() - 1))) return false;
  return true;
}

}  // namespace autolearn
