#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "autolearn/id_family.hpp"
#include "autolearn/partition_table.hpp"
#include "support.hpp"

using namespace autolearn;
using namespace testsupport;

namespace {

std::vector<std::string> tset_labels(const TsetLayout& t) {
  std::vector<std::string> out;
  for (int i = 0; i < t.size(); ++i) out.push_back(t.label(i));
  return out;
}

std::vector<std::string> rendered(const Alphabet& a, const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const Word& w : ws) out.push_back(a.render(w));
  return out;
}

}  // namespace

TEST_CASE("tset construction order") {
  Alphabet ab = Alphabet::from_chars("ab");
  TsetLayout t = build_tset({Word{}, ab.parse_word("a")}, ab);
  CHECK(tset_labels(t) == std::vector<std::string>{"d0", "\"\"", "a", "b", "aa", "ab"});

  TsetLayout empty = build_tset({}, ab);
  CHECK(tset_labels(empty) == std::vector<std::string>{"d0"});

  TsetLayout lb = build_tset({Word{}, ab.parse_word("b")}, ab);
  CHECK(tset_labels(lb) == std::vector<std::string>{"d0", "\"\"", "b", "a", "ba", "bb"});

  // d0 absorbs under f and belongs to the scan domain
  CHECK(t.succ[0][0] == 0);
  CHECK(t.succ[0][1] == 0);
  CHECK(t.domain == std::vector<int>{0, 1, 2});
}

TEST_CASE("column fill against the golden initial table") {
  Dfa baab = load_dfa("b_aa_b.dfa");
  Teacher teacher(baab);
  const Alphabet& a = teacher.alphabet();
  TsetLayout t = build_tset({Word{}, a.parse_word("a")}, a);
  ColumnTable cols;
  MembershipFn member = [&](const Word& w) { return teacher.membership(w); };
  fill_column(t, cols, Word{}, member);

  // initial column: lambda, b, aa accepted; d0, a, ab empty
  CHECK(cols.e[0] == 0);  // d0
  CHECK(cols.e[1] == 1);  // lambda
  CHECK(cols.e[2] == 0);  // a
  CHECK(cols.e[3] == 1);  // b
  CHECK(cols.e[4] == 1);  // aa
  CHECK(cols.e[5] == 0);  // ab

  CHECK_THROWS_AS(fill_column(t, cols, Word{}, member), std::logic_error);

  // a universal target marks every non-dead element
  Dfa uni;
  uni.alphabet = a;
  uni.initial = 0;
  uni.accepting = {true};
  uni.next = {{0, 0}};
  Teacher ut(uni);
  ColumnTable ucols;
  fill_column(t, ucols, Word{}, [&](const Word& w) { return ut.membership(w); });
  for (int i = 1; i < t.size(); ++i) CHECK(ucols.e[static_cast<std::size_t>(i)] == 1);
  CHECK(ucols.e[0] == 0);
}

TEST_CASE("split search reproduces the golden witnesses") {
  Dfa baab = load_dfa("b_aa_b.dfa");
  Teacher teacher(baab);
  const Alphabet& a = teacher.alphabet();
  TsetLayout t = build_tset({Word{}, a.parse_word("a")}, a);
  ColumnTable cols;
  MembershipFn member = [&](const Word& w) { return teacher.membership(w); };
  fill_column(t, cols, Word{}, member);

  // first stage: (d0, a) splits on sigma = a with gamma = lambda
  auto w1 = find_split(t, cols, SplitPolicy::exact_then_coarse);
  REQUIRE(w1.has_value());
  CHECK(t.label(w1->alpha) == "d0");
  CHECK(t.label(w1->beta) == "a");
  CHECK(a.symbol(w1->sigma) == "a");
  CHECK(w1->gamma.empty());
  CHECK(a.render(w1->new_v) == "a");
  CHECK_FALSE(w1->coarse);

  fill_column(t, cols, w1->new_v, member);
  // second stage: exact comparison is stable, the block comparison yields
  // (lambda, a) with the new distinguishing string b
  CHECK_FALSE(find_split(t, cols, SplitPolicy::exact).has_value());
  auto w2 = find_split(t, cols, SplitPolicy::exact_then_coarse);
  REQUIRE(w2.has_value());
  CHECK(w2->coarse);
  CHECK(t.label(w2->alpha) == "\"\"");
  CHECK(t.label(w2->beta) == "a");
  CHECK(a.symbol(w2->sigma) == "b");
  CHECK(a.render(w2->new_v) == "b");

  fill_column(t, cols, w2->new_v, member);
  // the three-column table is stable under both policies
  CHECK_FALSE(find_split(t, cols, SplitPolicy::exact_then_coarse).has_value());
}

TEST_CASE("batch id golden run") {
  Dfa baab = load_dfa("b_aa_b.dfa");
  Teacher teacher(baab);
  const Alphabet& a = teacher.alphabet();
  IdRunResult res = id_run({Word{}, a.parse_word("a")}, teacher);

  CHECK(rendered(a, res.table.cols.v) == std::vector<std::string>{"\"\"", "a", "b"});
  REQUIRE(res.trace.splits.size() == 2);
  CHECK(res.trace.splits[0].alpha_dead);
  CHECK(a.render(res.trace.splits[0].beta) == "a");
  CHECK(a.render(res.trace.splits[0].new_v) == "a");
  CHECK_FALSE(res.trace.splits[1].alpha_dead);
  CHECK(res.trace.splits[1].alpha.empty());
  CHECK(a.render(res.trace.splits[1].beta) == "a");
  CHECK(a.render(res.trace.splits[1].new_v) == "b");
  CHECK(language_equal(res.hypothesis, baab));
  // at most n-1 splits for the 3-state minimal target
  CHECK(res.trace.splits.size() <= 2);

  // final table cells match the printed stable table
  PtSnapshot snap = res.table.snapshot();
  REQUIRE(snap.labels == std::vector<std::string>{"d0", "\"\"", "a", "b", "aa", "ab"});
  CHECK(snap.cells[0] == std::vector<bool>{false, false, false});
  CHECK(snap.cells[1] == std::vector<bool>{true, false, true});
  CHECK(snap.cells[2] == std::vector<bool>{false, true, false});
  CHECK(snap.cells[3] == std::vector<bool>{true, false, true});
  CHECK(snap.cells[4] == std::vector<bool>{true, false, true});
  CHECK(snap.cells[5] == std::vector<bool>{false, false, false});

  CHECK_THROWS_AS(id_run({a.parse_word("a")}, teacher), std::invalid_argument);
}

TEST_CASE("batch id trivial and random runs") {
  Alphabet ab = Alphabet::from_chars("ab");
  Dfa empty;
  empty.alphabet = ab;
  empty.initial = 0;
  empty.accepting = {false};
  empty.next = {{0, 0}};
  Teacher t(empty);
  IdRunResult res = id_run({Word{}}, t);
  CHECK(res.hypothesis.state_count() == 1);
  CHECK(res.trace.splits.empty());
  CHECK(minimize(res.hypothesis).state_count() == 1);

  std::mt19937 rng(211);
  for (int trial = 0; trial < 40; ++trial) {
    Dfa target = random_minimal_dfa(rng, 2, 6, ab);
    Teacher teacher(target);
    IdRunResult r = id_run(live_access_words(target), teacher);
    CHECK(language_equal(r.hypothesis, target));
    // exact splits separate a class each, so there are fewer than n of them
    std::size_t exact_splits = 0;
    for (const auto& s : r.trace.splits)
      if (!s.coarse) ++exact_splits;
    CHECK(exact_splits < static_cast<std::size_t>(target.state_count()));
    // hypothesis agrees with the teacher on every tabulated alpha.v
    Teacher replay(target);
    for (int i = 1; i < r.table.layout.size(); ++i)
      for (const Word& v : r.table.cols.v) {
        Word q = r.table.layout.elems[static_cast<std::size_t>(i)].word + v;
        CHECK(accepts(r.hypothesis, q) == replay.membership(q));
      }
  }
}

TEST_CASE("iid golden run") {
  Dfa baab = load_dfa("b_aa_b.dfa");
  Teacher teacher(baab);
  const Alphabet& a = teacher.alphabet();
  std::vector<LabeledExample> stream = {{a.parse_word("a"), false},
                                        {a.parse_word("b"), true},
                                        {a.parse_word("aa"), true}};
  IdRunResult res = iid_run(stream, teacher);

  REQUIRE(res.increments.size() == 3);
  REQUIRE(res.trace.events.size() == 3);
  CHECK(res.trace.events[0] == "skip a");
  CHECK(res.trace.events[1] == "incorporate b");
  CHECK(res.trace.events[2] == "incorporate aa");

  // the consistent negative example leaves the null hypothesis untouched
  CHECK(res.increments[0].state_count() == 1);
  CHECK_FALSE(res.increments[0].accepting[0]);

  // H1 accepts exactly the words of b's (the teacher pins lambda accepting)
  for (const Word& w : all_words_up_to(a, 6)) {
    bool all_b = true;
    for (char c : w)
      if (a.symbol(static_cast<unsigned char>(c)) != "b") all_b = false;
    CHECK(accepts(res.increments[1], w) == all_b);
  }

  CHECK(language_equal(res.increments[2], baab));
  CHECK(rendered(a, res.table.cols.v) == std::vector<std::string>{"\"\"", "a"});
  CHECK(rendered(a, res.live_words) == std::vector<std::string>{"\"\"", "b", "a", "aa"});

  // empty stream keeps the single dead state
  Teacher t2(baab);
  IdRunResult none = iid_run({}, t2);
  CHECK(none.hypothesis.state_count() == 1);
  CHECK_FALSE(none.hypothesis.accepting[0]);

  // contradictory label
  Teacher t3(baab);
  CHECK_THROWS_AS(iid_run({{a.parse_word("a"), true}}, t3), DomainError);
}

TEST_CASE("ids golden runs") {
  Dfa baab = load_dfa("b_aa_b.dfa");
  const Alphabet& a = baab.alphabet;

  SECTION("prefix closed") {
    Teacher teacher(baab);
    std::vector<LabeledExample> stream = {{a.parse_word("a"), false},
                                          {a.parse_word("ab"), false},
                                          {a.parse_word("b"), true},
                                          {a.parse_word("aa"), true}};
    IdRunResult res = ids_run(stream, teacher, IdsMode::prefix_closed);
    REQUIRE(res.increments.size() == 4);
    CHECK(language_equal(res.hypothesis, baab));
    CHECK(rendered(a, res.table.cols.v) == std::vector<std::string>{"\"\"", "a"});
    CHECK(is_prefix_closed(res.live_words));
  }

  SECTION("prefix free") {
    Teacher teacher(baab);
    std::vector<LabeledExample> stream = {{a.parse_word("ab"), false},
                                          {a.parse_word("b"), true},
                                          {a.parse_word("aa"), true}};
    IdRunResult res = ids_run(stream, teacher, IdsMode::prefix_free);
    CHECK(language_equal(res.hypothesis, baab));
    std::set<std::string> p;
    for (const Word& w : res.live_words) p.insert(a.render(w));
    CHECK(p == std::set<std::string>{"\"\"", "b", "aa", "ab"});
  }

  SECTION("single lambda example") {
    Teacher teacher(baab);
    IdRunResult res = ids_run({{Word{}, true}}, teacher, IdsMode::prefix_closed);
    CHECK(accepts(res.hypothesis, Word{}));
  }
}

TEST_CASE("incremental runs match batch id on the accumulated live set") {
  std::mt19937 rng(223);
  Alphabet ab = Alphabet::from_chars("ab");
  for (int trial = 0; trial < 12; ++trial) {
    Dfa target = random_minimal_dfa(rng, 2, 5, ab);
    int n = target.state_count();
    std::vector<LabeledExample> stream;
    Teacher label_teacher(target);
    for (const Word& w : all_words_up_to(ab, std::min(2 * n, 8)))
      stream.push_back({w, label_teacher.membership(w)});

    Teacher iid_teacher(target);
    IdRunResult inc = iid_run(stream, iid_teacher);
    CHECK(language_equal(inc.hypothesis, target));

    Teacher batch_teacher(target);
    IdRunResult batch = id_run(inc.live_words, batch_teacher);
    CHECK(language_equal(batch.hypothesis, inc.hypothesis));

    Teacher ids_teacher(target);
    IdRunResult ids_res = ids_run(stream, ids_teacher, IdsMode::prefix_closed);
    CHECK(language_equal(ids_res.hypothesis, target));
  }
}

TEST_CASE("dead value stays empty and self-loops") {
  Dfa baab = load_dfa("b_aa_b.dfa");
  Teacher teacher(baab);
  const Alphabet& a = teacher.alphabet();
  IdRunResult res = id_run({Word{}, a.parse_word("a")}, teacher);
  CHECK(res.table.cols.e[0] == 0);
  // the hypothesis state for the empty value self-loops on every symbol
  Word dead_access = a.parse_word("ab");
  int dead_state = res.hypothesis.run(dead_access);
  for (int c = 0; c < a.size(); ++c) CHECK(res.hypothesis.step(dead_state, c) == dead_state);
}
