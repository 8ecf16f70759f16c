#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "autolearn/lstar.hpp"
#include "support.hpp"

using namespace autolearn;
using namespace testsupport;

namespace {

// (label, row) pairs of a snapshot, for order-insensitive table comparison.
std::map<std::string, std::vector<bool>> table_cells(const OtSnapshot& s, const Alphabet& a) {
  std::map<std::string, std::vector<bool>> out;
  for (const auto& [w, row] : s.rows) out[a.render(w)] = row;
  return out;
}

Dfa universal(const Alphabet& a) {
  Dfa d;
  d.alphabet = a;
  d.initial = 0;
  d.accepting = {true};
  d.next = {std::vector<int>(static_cast<std::size_t>(a.size()), 0)};
  return d;
}

}  // namespace

TEST_CASE("initial observation table") {
  Dfa even0s = load_dfa("even0s.dfa");
  Teacher t(even0s);
  ObservationTable table = ObservationTable::init_table(t);
  const Alphabet& a = even0s.alphabet;

  CHECK(table.access_words() == std::vector<Word>{Word{}});
  CHECK(table.experiments() == std::vector<Word>{Word{}});
  CHECK(table.row(Word{}) == std::vector<bool>{false});
  CHECK(table.row(a.parse_word("0")) == std::vector<bool>{false});
  CHECK(table.row(a.parse_word("1")) == std::vector<bool>{false});

  Teacher tu(universal(a));
  ObservationTable all_ones = ObservationTable::init_table(tu);
  CHECK(all_ones.row(Word{}) == std::vector<bool>{true});
  CHECK(all_ones.row(a.parse_word("0")) == std::vector<bool>{true});

  std::mt19937 rng(101);
  Alphabet ab = Alphabet::from_chars("ab");
  Dfa target = random_dfa(rng, 5, ab);
  Teacher tr(target);
  ObservationTable tt = ObservationTable::init_table(tr);
  CHECK(tt.row(Word{})[0] == accepts(target, Word{}));
  CHECK(tt.row(ab.parse_word("a"))[0] == accepts(target, ab.parse_word("a")));
}

TEST_CASE("closedness and consistency checks") {
  Dfa even0s = load_dfa("even0s.dfa");
  Teacher t(even0s);
  const Alphabet& a = even0s.alphabet;

  ObservationTable table = ObservationTable::init_table(t);
  CHECK_FALSE(table.is_closed().has_value());      // the initial table is closed
  CHECK_FALSE(table.is_consistent().has_value());  // single row: trivially consistent

  // after the counterexample 00 the table is closed but not consistent
  table.handle_counterexample(a.parse_word("00"), t);
  CHECK(table.access_words() ==
        std::vector<Word>{Word{}, a.parse_word("0"), a.parse_word("00")});
  std::set<std::string> lower;
  for (const Word& w : table.lower_labels()) lower.insert(a.render(w));
  CHECK(lower == std::set<std::string>{"1", "01", "000", "001"});

  CHECK_FALSE(table.is_closed().has_value());
  auto witness = table.is_consistent();
  REQUIRE(witness.has_value());
  CHECK(witness->s1 == Word{});
  CHECK(a.render(witness->s2) == "0");
  CHECK(a.symbol(witness->symbol) == "0");
  CHECK(witness->experiment == Word{});

  table.consistency_step(*witness, t);
  CHECK(table.experiments() == std::vector<Word>{Word{}, a.parse_word("0")});
  CHECK_FALSE(table.is_consistent().has_value());
  CHECK_FALSE(table.is_closed().has_value());
  CHECK_THROWS_AS(table.consistency_step(*witness, t), std::logic_error);

  // random filled tables agree with a brute-force scan
  std::mt19937 rng(103);
  Alphabet ab = Alphabet::from_chars("ab");
  for (int trial = 0; trial < 10; ++trial) {
    Dfa target = random_dfa(rng, 5, ab);
    Teacher tr(target);
    ObservationTable tab = ObservationTable::init_table(tr);
    tab.handle_counterexample(ab.parse_word("ab"), tr);
    auto closed = tab.is_closed();
    bool brute_open = false;
    std::set<std::vector<bool>> upper;
    for (const Word& u : tab.access_words()) upper.insert(tab.row(u));
    for (const Word& u : tab.lower_labels())
      if (!upper.count(tab.row(u))) brute_open = true;
    CHECK(closed.has_value() == brute_open);
  }
}

TEST_CASE("conjectures from the golden tables") {
  Dfa even0s = load_dfa("even0s.dfa");
  Teacher t(even0s);
  const Alphabet& a = even0s.alphabet;

  ObservationTable table = ObservationTable::init_table(t);
  Dfa h1 = table.conjecture();
  CHECK(h1.state_count() == 1);
  CHECK_FALSE(h1.accepting[0]);
  CHECK(h1.next[0] == std::vector<int>{0, 0});

  table.handle_counterexample(a.parse_word("00"), t);
  CHECK_THROWS_AS(table.conjecture(), std::logic_error);  // not consistent yet
  auto witness = table.is_consistent();
  REQUIRE(witness.has_value());
  table.consistency_step(*witness, t);

  Dfa h2 = table.conjecture();
  REQUIRE(h2.state_count() == 3);
  // q0 = row(lambda), q1 = row(0), q2 = row(00)
  CHECK(h2.initial == 0);
  CHECK(h2.next[0] == std::vector<int>{1, 0});
  CHECK(h2.next[1] == std::vector<int>{2, 1});
  CHECK(h2.next[2] == std::vector<int>{1, 2});
  CHECK(h2.accepting == std::vector<bool>{false, false, true});
  CHECK(language_equal(h2, even0s));

  Teacher tu(universal(a));
  ObservationTable ut = ObservationTable::init_table(tu);
  Dfa uh = ut.conjecture();
  CHECK(uh.state_count() == 1);
  CHECK(uh.accepting[0]);
}

TEST_CASE("lstar golden run on the even-0s target") {
  Dfa even0s = load_dfa("even0s.dfa");
  Teacher t(even0s);
  const Alphabet& a = even0s.alphabet;
  LstarResult res = lstar_run(t);

  REQUIRE(res.counterexamples.size() == 1);
  CHECK(a.render(res.counterexamples[0]) == "00");

  REQUIRE(res.snapshots.size() == 3);
  auto t1 = table_cells(res.snapshots[0], a);
  CHECK(t1 == std::map<std::string, std::vector<bool>>{
                  {"\"\"", {false}}, {"0", {false}}, {"1", {false}}});
  auto t2 = table_cells(res.snapshots[1], a);
  CHECK(t2 == std::map<std::string, std::vector<bool>>{{"\"\"", {false}},
                                                       {"0", {false}},
                                                       {"00", {true}},
                                                       {"1", {false}},
                                                       {"01", {false}},
                                                       {"001", {true}},
                                                       {"000", {false}}});
  auto t3 = table_cells(res.snapshots[2], a);
  CHECK(t3 == std::map<std::string, std::vector<bool>>{{"\"\"", {false, false}},
                                                       {"0", {false, true}},
                                                       {"00", {true, false}},
                                                       {"1", {false, false}},
                                                       {"01", {false, true}},
                                                       {"001", {true, false}},
                                                       {"000", {false, true}}});

  CHECK(res.hypothesis.state_count() == 3);
  CHECK(language_equal(res.hypothesis, even0s));

  // identical reruns give identical counters
  Teacher t2nd(even0s);
  LstarResult again = lstar_run(t2nd);
  CHECK(again.stats.membership == res.stats.membership);
  CHECK(again.stats.bookkeeping == res.stats.bookkeeping);
  CHECK(again.stats.equivalence == res.stats.equivalence);
}

TEST_CASE("lstar terminates immediately on the empty language") {
  Alphabet ab = Alphabet::from_chars("ab");
  Dfa empty;
  empty.alphabet = ab;
  empty.initial = 0;
  empty.accepting = {false};
  empty.next = {{0, 0}};
  Teacher t(empty);
  LstarResult res = lstar_run(t);
  CHECK(res.stats.equivalence == 1);
  CHECK(res.hypothesis.state_count() == 1);
}

TEST_CASE("lstar identifies random minimal targets") {
  std::mt19937 rng(107);
  Alphabet ab = Alphabet::from_chars("ab");
  for (int trial = 0; trial < 50; ++trial) {
    Dfa target = random_minimal_dfa(rng, 2, 6, ab);
    Teacher t(target);
    LstarResult res = lstar_run(t);
    CHECK(language_equal(res.hypothesis, target));
    CHECK(res.hypothesis.state_count() == target.state_count());
    // S stays prefix-closed and the distinct-upper-row count never drops
    std::size_t distinct_rows = 0;
    for (const auto& snap : res.snapshots) {
      CHECK(is_prefix_closed(snap.upper));
      std::set<std::vector<bool>> rows;
      for (const Word& u : snap.upper) rows.insert(snap.rows.at(u));
      CHECK(rows.size() >= distinct_rows);
      distinct_rows = rows.size();
    }
  }
}

TEST_CASE("snapshot rendering is stable") {
  Dfa even0s = load_dfa("even0s.dfa");
  Teacher t(even0s);
  LstarResult res = lstar_run(t);
  CHECK(res.snapshots[0].render(even0s.alphabet) ==
        "OT\nS: \"\"\nE: \"\"\n\"\": 0\n0: 0\n1: 0\n");
}
