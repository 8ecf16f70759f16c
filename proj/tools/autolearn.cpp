#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "autolearn/dfa.hpp"
#include "autolearn/errors.hpp"
#include "autolearn/id_family.hpp"
#include "autolearn/ikl.hpp"
#include "autolearn/io.hpp"
#include "autolearn/lstar.hpp"
#include "autolearn/report.hpp"
#include "autolearn/rpni.hpp"
#include "autolearn/teacher.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw autolearn::ParseError(0, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string default_out_dir() {
  if (const char* env = std::getenv("AUTOBENCH_OUT")) return env;
  return ".";
}

json report_to_json(const autolearn::RunReport& r) {
  json j;
  j["algorithm"] = r.algorithm;
  j["states"] = r.states;
  j["accepting"] = r.accepting_states;
  j["membership"] = r.stats.membership;
  j["equivalence"] = r.stats.equivalence;
  j["bookkeeping"] = r.stats.bookkeeping;
  if (r.equivalent.has_value()) j["equivalent"] = *r.equivalent;
  if (r.counterexample.has_value()) j["counterexample"] = *r.counterexample;
  j["wall_ms"] = r.wall_ms;
  return j;
}

struct LearnOptions {
  std::string algorithm;
  std::string target_file;
  std::string samples_file;
  std::string schedule_file;
  std::string live_set_file;
  std::string mode = "closed";
  std::string out_dir = default_out_dir();
  bool trace = false;
  long seed = 0;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw CLI::ValidationError(message);
}

int run_learn(const LearnOptions& opt) {
  using namespace autolearn;
  std::string algorithm = opt.algorithm;
  IdsMode ids_mode = IdsMode::prefix_closed;
  if (algorithm == "ids" || algorithm == "ids-closed" || algorithm == "ids-free") {
    if (algorithm == "ids-free" || (algorithm == "ids" && opt.mode == "free"))
      ids_mode = IdsMode::prefix_free;
    else
      require(algorithm != "ids" || opt.mode == "closed", "--mode must be closed or free");
    algorithm = "ids";
  }

  bool active = algorithm == "lstar" || algorithm == "id" || algorithm == "iid" ||
                algorithm == "ids" || algorithm == "ikl";
  bool passive = algorithm == "rpni" || algorithm == "rpni2";
  require(active || passive, "unknown algorithm: " + opt.algorithm);
  require(!active || !opt.target_file.empty(), opt.algorithm + " requires --target");
  require(!passive || !opt.samples_file.empty(), opt.algorithm + " requires --samples");
  require(algorithm != "id" || !opt.live_set_file.empty(), "id requires --live-set");
  require((algorithm != "iid" && algorithm != "ids") || !opt.schedule_file.empty(),
          opt.algorithm + " requires --schedule");
  require(algorithm != "ikl" || !opt.schedule_file.empty(), "ikl requires --schedule (word queue)");
  require(algorithm != "rpni2" || !opt.schedule_file.empty(),
          "rpni2 requires --schedule (new labeled examples)");

  fs::path out_dir(opt.out_dir);
  fs::create_directories(out_dir);
  std::ostringstream trace;
  RunReport report;
  report.algorithm = opt.algorithm;
  auto t0 = std::chrono::steady_clock::now();

  auto finish_dfa = [&](const Dfa& h, const QueryStats& stats, const Dfa* target) {
    report.states = h.state_count();
    report.accepting_states = 0;
    for (bool a : h.accepting) report.accepting_states += a ? 1 : 0;
    report.stats = stats;
    report.stats.algorithm = opt.algorithm;
    if (target) {
      auto witness = difference_witness(h, *target);
      report.equivalent = !witness.has_value();
      if (witness) report.counterexample = h.alphabet.render(*witness);
    }
    spill(out_dir / "hypothesis.dfa", emit_dfa(h));
    spill(out_dir / "hypothesis.dot", emit_dot(h));
  };

  if (algorithm == "lstar" || algorithm == "id" || algorithm == "iid" || algorithm == "ids") {
    Dfa target = parse_dfa(slurp(opt.target_file));
    std::ostringstream transcript;
    Teacher teacher(target, opt.trace ? &transcript : nullptr);

    if (algorithm == "lstar") {
      LstarResult res = lstar_run(teacher);
      for (const auto& s : res.snapshots) trace << s.render(target.alphabet) << "\n";
      finish_dfa(res.hypothesis, res.stats, &target);
    } else if (algorithm == "id") {
      auto live = parse_word_list(slurp(opt.live_set_file), target.alphabet);
      IdRunResult res = id_run(live, teacher);
      for (const auto& s : res.trace.snapshots) trace << s.render(target.alphabet) << "\n";
      finish_dfa(res.hypothesis, res.stats, &target);
    } else {
      auto schedule = parse_schedule(slurp(opt.schedule_file), target.alphabet);
      IdRunResult res = algorithm == "iid" ? iid_run(schedule, teacher)
                                           : ids_run(schedule, teacher, ids_mode);
      for (const auto& e : res.trace.events) trace << e << "\n";
      for (const auto& s : res.trace.snapshots) trace << s.render(target.alphabet) << "\n";
      finish_dfa(res.hypothesis, res.stats, &target);
    }
    if (opt.trace) trace << "transcript\n" << transcript.str();
  } else if (algorithm == "ikl") {
    KripkeStructure target = parse_kripke(slurp(opt.target_file));
    std::ostringstream transcript;
    KripkeTeacher teacher(target, opt.trace ? &transcript : nullptr);
    auto queue = parse_word_list(slurp(opt.schedule_file), target.alphabet);
    IklResult res = ikl_run(queue, teacher);
    for (const auto& e : res.trace.events) trace << e << "\n";
    for (const auto& s : res.trace.snapshots)
      trace << "bit " << s.bit << " " << s.table.render(target.alphabet) << "\n";
    report.states = res.hypothesis.state_count();
    report.stats = res.stats;
    report.stats.algorithm = opt.algorithm;
    report.equivalent = kripke_equivalent(res.hypothesis, target);
    spill(out_dir / "hypothesis.kripke", emit_kripke(res.hypothesis));
    spill(out_dir / "hypothesis.dot", emit_dot(res.hypothesis));
    if (opt.trace) trace << "transcript\n" << transcript.str();
  } else if (algorithm == "rpni") {
    Sample sample = parse_samples(slurp(opt.samples_file));
    RpniResult res = rpni_run(sample);
    for (const auto& a : res.attempts) {
      trace << "join " << sample.alphabet.render(a.block) << "," << sample.alphabet.render(a.u)
            << " -> " << (a.accepted ? "accepted" : "rejected");
      if (a.violation) trace << " " << sample.alphabet.render(*a.violation);
      trace << "\n";
    }
    QueryStats stats;
    finish_dfa(res.machine, stats, nullptr);
  } else {  // rpni2
    Sample sample = parse_samples(slurp(opt.samples_file));
    auto schedule = parse_schedule(slurp(opt.schedule_file), sample.alphabet);
    RpniResult prior = rpni_run(sample);
    MergeState state = prior.state;
    Dfa machine = prior.machine;
    for (const LabeledExample& x : schedule) {
      Rpni2Result res = rpni2_run(sample, state, x);
      for (const Word& w : res.split_words) trace << "split " << sample.alphabet.render(w) << "\n";
      for (const auto& a : res.attempts) {
        trace << "join " << sample.alphabet.render(a.block) << "," << sample.alphabet.render(a.u)
              << " -> " << (a.accepted ? "accepted" : "rejected");
        if (a.violation) trace << " " << sample.alphabet.render(*a.violation);
        trace << "\n";
      }
      state = res.state;
      machine = res.machine;
      if (x.positive)
        sample.positives.insert(x.word);
      else
        sample.negatives.insert(x.word);
    }
    QueryStats stats;
    finish_dfa(machine, stats, nullptr);
  }

  auto t1 = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  spill(out_dir / "report.json", report_to_json(report).dump(2) + "\n");
  if (opt.trace) spill(out_dir / "trace.log", trace.str());
  std::cout << report_to_json(report).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial-time automaton learning toolkit"};
  app.require_subcommand(1);

  LearnOptions learn;
  CLI::App* learn_cmd = app.add_subcommand("learn", "Run a learner against a target or sample set");
  learn_cmd->add_option("--algorithm", learn.algorithm,
                        "lstar | id | iid | ids | ids-closed | ids-free | ikl | rpni | rpni2")
      ->required();
  learn_cmd->add_option("--target", learn.target_file, "target automaton file (DFA or Kripke text)");
  learn_cmd->add_option("--samples", learn.samples_file, "sample file (+/- records)");
  learn_cmd->add_option("--schedule", learn.schedule_file, "labeled example schedule / IKL word queue");
  learn_cmd->add_option("--live-set", learn.live_set_file, "live-complete access word file for id");
  learn_cmd->add_option("--mode", learn.mode, "ids prefix mode: closed | free");
  learn_cmd->add_option("--out-dir", learn.out_dir, "output directory (default $AUTOBENCH_OUT or .)");
  learn_cmd->add_flag("--trace", learn.trace, "write trace.log");
  learn_cmd->add_option("--seed", learn.seed, "seed for randomized commands");

  std::string verify_a, verify_b;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check two DFA files for language equivalence");
  verify_cmd->add_option("a", verify_a, "first DFA file")->required();
  verify_cmd->add_option("b", verify_b, "second DFA file")->required();

  std::string oracle_target;
  int oracle_max_len = 4;
  int oracle_cap = 12;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "List accept/reject bits for all words up to a length");
  oracle_cmd->add_option("--target", oracle_target, "target DFA file")->required();
  oracle_cmd->add_option("--max-len", oracle_max_len, "maximum word length");
  oracle_cmd->add_option("--cap", oracle_cap, "upper bound allowed for --max-len");

  std::vector<std::string> stats_files;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Render a comparison table from report.json files");
  stats_cmd->add_option("reports", stats_files, "report.json files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    if (learn_cmd->parsed()) return run_learn(learn);

    if (verify_cmd->parsed()) {
      autolearn::Dfa a = autolearn::parse_dfa(slurp(verify_a));
      autolearn::Dfa b = autolearn::parse_dfa(slurp(verify_b));
      auto witness = autolearn::difference_witness(a, b);
      if (witness)
        std::cout << "counterexample " << a.alphabet.render(*witness) << "\n";
      else
        std::cout << "equivalent\n";
      return 0;
    }

    if (oracle_cmd->parsed()) {
      if (oracle_max_len > oracle_cap || oracle_max_len < 0) {
        std::cerr << "error: --max-len exceeds the configured cap (" << oracle_cap << ")\n";
        return 1;
      }
      autolearn::Dfa d = autolearn::parse_dfa(slurp(oracle_target));
      std::vector<autolearn::Word> layer = {autolearn::Word{}};
      for (int len = 0; len <= oracle_max_len; ++len) {
        std::vector<autolearn::Word> next;
        for (const autolearn::Word& w : layer) {
          std::cout << d.alphabet.render(w) << " " << (autolearn::accepts(d, w) ? 1 : 0) << "\n";
          if (len < oracle_max_len)
            for (int c = 0; c < d.alphabet.size(); ++c) next.push_back(w + static_cast<char>(c));
        }
        layer = std::move(next);
      }
      return 0;
    }

    if (stats_cmd->parsed()) {
      std::vector<autolearn::RunReport> reports;
      for (const std::string& file : stats_files) {
        json j = json::parse(slurp(file));
        autolearn::RunReport r;
        r.algorithm = j.value("algorithm", "?");
        r.stats.membership = j.value("membership", 0L);
        r.stats.equivalence = j.value("equivalence", 0L);
        r.stats.bookkeeping = j.value("bookkeeping", 0L);
        reports.push_back(r);
      }
      std::cout << autolearn::stats_table(reports);
      return 0;
    }
  } catch (const autolearn::DomainError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return 2;
  } catch (const autolearn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
