#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "autolearn/dfa.hpp"
#include "autolearn/errors.hpp"
#include "autolearn/kripke.hpp"
#include "autolearn/nfa.hpp"
#include "autolearn/rpni.hpp"
#include "autolearn/teacher.hpp"
#include "autolearn/words.hpp"

namespace autolearn {

namespace io_detail {

struct Line {
  int number = 0;
  std::string text;
};

// Content lines only: '#' comments and blank lines are skipped.
inline std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = line;
    auto pos = stripped.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (stripped[pos] == '#') continue;
    out.push_back({number, line});
  }
  return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    int value = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got \"" + tok + "\"");
  }
}

inline int parse_flag(const std::string& tok, int line) {
  int v = parse_int(tok, line);
  if (v != 0 && v != 1) throw ParseError(line, "expected 0 or 1, got \"" + tok + "\"");
  return v;
}

}  // namespace io_detail

// DFA text format: a header line of space-separated alphabet symbols, then
// one line per state: <id> <initial 0|1> <accepting 0|1> <successor per
// symbol in header order>. '#' starts a comment.
inline Dfa parse_dfa(const std::string& text) {
  auto lines = io_detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing alphabet header");
  Alphabet alphabet;
  try {
    alphabet = Alphabet(io_detail::tokens(lines[0].text));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines[0].number, e.what());
  }
  struct Row {
    int id, initial, accepting;
    std::vector<int> succ;
    int line;
  };
  std::vector<Row> rows;
  std::map<int, int> id_to_dense;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto toks = io_detail::tokens(lines[i].text);
    if (static_cast<int>(toks.size()) != 3 + alphabet.size())
      throw ParseError(lines[i].number, "expected " + std::to_string(3 + alphabet.size()) +
                                            " columns, got " + std::to_string(toks.size()));
    Row r;
    r.line = lines[i].number;
    r.id = io_detail::parse_int(toks[0], r.line);
    r.initial = io_detail::parse_flag(toks[1], r.line);
    r.accepting = io_detail::parse_flag(toks[2], r.line);
    for (int c = 0; c < alphabet.size(); ++c)
      r.succ.push_back(io_detail::parse_int(toks[static_cast<std::size_t>(3 + c)], r.line));
    if (!id_to_dense.emplace(r.id, static_cast<int>(rows.size())).second)
      throw ParseError(r.line, "duplicate state id " + std::to_string(r.id));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError(lines[0].number, "dfa has no states");
  Dfa d;
  d.alphabet = alphabet;
  d.initial = -1;
  for (const Row& r : rows) {
    if (r.initial) {
      if (d.initial >= 0) throw ParseError(r.line, "multiple initial states");
      d.initial = id_to_dense.at(r.id);
    }
    d.accepting.push_back(r.accepting != 0);
    std::vector<int> succ;
    for (int s : r.succ) {
      auto it = id_to_dense.find(s);
      if (it == id_to_dense.end())
        throw ParseError(r.line, "successor references unknown state " + std::to_string(s));
      succ.push_back(it->second);
    }
    d.next.push_back(std::move(succ));
  }
  if (d.initial < 0) throw ParseError(rows.back().line, "no initial state");
  d.validate();
  return d;
}

inline std::string emit_dfa(const Dfa& d) {
  std::ostringstream os;
  for (int c = 0; c < d.alphabet.size(); ++c) os << (c ? " " : "") << d.alphabet.symbol(c);
  os << "\n";
  for (int s = 0; s < d.state_count(); ++s) {
    os << s << " " << (s == d.initial ? 1 : 0) << " " << (d.accepting[static_cast<std::size_t>(s)] ? 1 : 0);
    for (int c = 0; c < d.alphabet.size(); ++c) os << " " << d.step(s, c);
    os << "\n";
  }
  return os.str();
}

// Kripke text format: like the DFA format with the accepting column replaced
// by a fixed-width bit string per state; the leftmost character is bit 1.
inline KripkeStructure parse_kripke(const std::string& text) {
  auto lines = io_detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, "missing alphabet header");
  Alphabet alphabet;
  try {
    alphabet = Alphabet(io_detail::tokens(lines[0].text));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines[0].number, e.what());
  }
  KripkeStructure k;
  k.alphabet = alphabet;
  k.initial = -1;
  k.width = 0;
  std::map<int, int> id_to_dense;
  struct Row {
    int id, initial;
    std::uint64_t bits;
    std::vector<int> succ;
    int line;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto toks = io_detail::tokens(lines[i].text);
    if (static_cast<int>(toks.size()) != 3 + alphabet.size())
      throw ParseError(lines[i].number, "expected " + std::to_string(3 + alphabet.size()) +
                                            " columns, got " + std::to_string(toks.size()));
    Row r;
    r.line = lines[i].number;
    r.id = io_detail::parse_int(toks[0], r.line);
    r.initial = io_detail::parse_flag(toks[1], r.line);
    const std::string& bits = toks[2];
    if (bits.empty() || bits.size() > 64) throw ParseError(r.line, "bad output bit string");
    if (k.width == 0)
      k.width = static_cast<int>(bits.size());
    else if (k.width != static_cast<int>(bits.size()))
      throw ParseError(r.line, "output width differs from earlier states");
    r.bits = 0;
    for (std::size_t b = 0; b < bits.size(); ++b) {
      if (bits[b] == '1')
        r.bits |= (1ull << b);
      else if (bits[b] != '0')
        throw ParseError(r.line, "output bits must be 0 or 1");
    }
    for (int c = 0; c < alphabet.size(); ++c)
      r.succ.push_back(io_detail::parse_int(toks[static_cast<std::size_t>(3 + c)], r.line));
    if (!id_to_dense.emplace(r.id, static_cast<int>(rows.size())).second)
      throw ParseError(r.line, "duplicate state id " + std::to_string(r.id));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ParseError(lines[0].number, "kripke structure has no states");
  for (const Row& r : rows) {
    if (r.initial) {
      if (k.initial >= 0) throw ParseError(r.line, "multiple initial states");
      k.initial = id_to_dense.at(r.id);
    }
    k.output.push_back(r.bits);
    std::vector<int> succ;
    for (int s : r.succ) {
      auto it = id_to_dense.find(s);
      if (it == id_to_dense.end())
        throw ParseError(r.line, "successor references unknown state " + std::to_string(s));
      succ.push_back(it->second);
    }
    k.next.push_back(std::move(succ));
  }
  if (k.initial < 0) throw ParseError(rows.back().line, "no initial state");
  k.validate();
  return k;
}

inline std::string emit_kripke(const KripkeStructure& k) {
  std::ostringstream os;
  for (int c = 0; c < k.alphabet.size(); ++c) os << (c ? " " : "") << k.alphabet.symbol(c);
  os << "\n";
  for (int s = 0; s < k.state_count(); ++s) {
    os << s << " " << (s == k.initial ? 1 : 0) << " ";
    for (int b = 0; b < k.width; ++b) os << (((k.output[static_cast<std::size_t>(s)] >> b) & 1u) ? '1' : '0');
    for (int c = 0; c < k.alphabet.size(); ++c) os << " " << k.step(s, c);
    os << "\n";
  }
  return os.str();
}

namespace io_detail {

// One record per line: `+ <word>` or `- <word>`, lambda written as the empty
// string after the mandatory sign and space.
inline std::vector<std::pair<bool, std::string>> parse_signed_lines(const std::string& text) {
  std::vector<std::pair<bool, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    if (line[0] != '+' && line[0] != '-') throw ParseError(number, "expected '+' or '-' sign");
    if (line.size() >= 2 && line[1] != ' ') throw ParseError(number, "expected space after sign");
    std::string word = line.size() >= 2 ? line.substr(2) : std::string{};
    while (!word.empty() && (word.back() == ' ' || word.back() == '\t')) word.pop_back();
    out.emplace_back(line[0] == '+', word);
  }
  return out;
}

}  // namespace io_detail

// Sample files carry no header; the alphabet is the sorted set of characters
// observed across all words.
inline Alphabet alphabet_of_sample_text(const std::string& text) {
  std::set<char> chars;
  for (const auto& [pos, word] : io_detail::parse_signed_lines(text))
    for (char c : word) chars.insert(c);
  if (chars.empty()) chars = {'a', 'b'};
  std::string ordered(chars.begin(), chars.end());
  return Alphabet::from_chars(ordered);
}

inline Sample parse_samples(const std::string& text) {
  Sample s;
  s.alphabet = alphabet_of_sample_text(text);
  for (const auto& [positive, word] : io_detail::parse_signed_lines(text)) {
    Word w = s.alphabet.parse_word(word);
    if (positive)
      s.positives.insert(w);
    else
      s.negatives.insert(w);
  }
  s.validate();
  return s;
}

inline std::string emit_samples(const Sample& s) {
  std::ostringstream os;
  for (const Word& w : s.positives) os << "+ " << (w.empty() ? "" : s.alphabet.render(w)) << "\n";
  for (const Word& w : s.negatives) os << "- " << (w.empty() ? "" : s.alphabet.render(w)) << "\n";
  return os.str();
}

// Ordered labeled examples over a known alphabet (learning schedules).
inline std::vector<LabeledExample> parse_schedule(const std::string& text, const Alphabet& alphabet) {
  std::vector<LabeledExample> out;
  for (const auto& [positive, word] : io_detail::parse_signed_lines(text))
    out.push_back({alphabet.parse_word(word), positive});
  return out;
}

// Word-list files (IKL queues, live sets): one word per line; the literal
// token "" denotes lambda; blank lines and '#' comments are skipped.
inline std::vector<Word> parse_word_list(const std::string& text, const Alphabet& alphabet) {
  std::vector<Word> out;
  for (const auto& line : io_detail::content_lines(text)) {
    auto toks = io_detail::tokens(line.text);
    if (toks.size() != 1) throw ParseError(line.number, "expected one word per line");
    if (toks[0] == "\"\"")
      out.push_back(Word{});
    else
      out.push_back(alphabet.parse_word(toks[0]));
  }
  return out;
}

namespace io_detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace io_detail

// DOT export: accepting states double-circled, the initial state marked by
// an arrow from a point node.
inline std::string emit_dot(const Dfa& d, const std::string& name = "dfa") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (int s = 0; s < d.state_count(); ++s)
    os << "  q" << s << " [shape=" << (d.accepting[static_cast<std::size_t>(s)] ? "doublecircle" : "circle")
       << "];\n";
  os << "  __start -> q" << d.initial << ";\n";
  for (int s = 0; s < d.state_count(); ++s)
    for (int c = 0; c < d.alphabet.size(); ++c)
      os << "  q" << s << " -> q" << d.step(s, c) << " [label=\""
         << io_detail::dot_escape(d.alphabet.symbol(c)) << "\"];\n";
  os << "}\n";
  return os.str();
}

inline std::string emit_dot(const Nfa& n, const std::string& name = "nfa") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (int s = 0; s < n.state_count(); ++s)
    os << "  q" << s << " [shape=" << (n.accepting[static_cast<std::size_t>(s)] ? "doublecircle" : "circle")
       << "];\n";
  for (int s : n.initials) os << "  __start -> q" << s << ";\n";
  for (int s = 0; s < n.state_count(); ++s)
    for (int c = 0; c < n.alphabet.size(); ++c)
      for (int t : n.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(c)])
        os << "  q" << s << " -> q" << t << " [label=\"" << io_detail::dot_escape(n.alphabet.symbol(c))
           << "\"];\n";
  os << "}\n";
  return os.str();
}

// Kripke outputs become part of the state labels, leftmost character bit 1.
inline std::string emit_dot(const KripkeStructure& k, const std::string& name = "kripke") {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (int s = 0; s < k.state_count(); ++s) {
    std::string bits;
    for (int b = 0; b < k.width; ++b)
      bits.push_back(((k.output[static_cast<std::size_t>(s)] >> b) & 1u) ? '1' : '0');
    os << "  q" << s << " [shape=circle, label=\"q" << s << "\\n" << bits << "\"];\n";
  }
  os << "  __start -> q" << k.initial << ";\n";
  for (int s = 0; s < k.state_count(); ++s)
    for (int c = 0; c < k.alphabet.size(); ++c)
      os << "  q" << s << " -> q" << k.step(s, c) << " [label=\""
         << io_detail::dot_escape(k.alphabet.symbol(c)) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace autolearn
