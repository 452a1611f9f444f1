// Copyright 2026 The fenhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line harness: instance generation, exact verification,
// randomized testing, repair, and benchmark sweeps.
//
// Exit codes: 0 success / stable / accept-dominant, 1 unstable /
// reject-dominant, 2 usage or input errors. Every command is
// deterministic given --seed; trial t of a multi-trial run uses seed + t,
// so serial and parallel executions agree. Timing columns are opt-in
// (--timing) because they break byte-stable output.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fenhg/exact.hpp"
#include "fenhg/generators.hpp"
#include "fenhg/io.hpp"
#include "fenhg/json_io.hpp"
#include "fenhg/testers.hpp"

namespace {

using namespace fenhg;
using nlohmann::json;

double parse_epsilon(const std::string& text) {
  double value = 0.0;
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      value = std::stod(text);
    } else {
      double num = std::stod(text.substr(0, slash));
      double den = std::stod(text.substr(slash + 1));
      value = num / den;
    }
  } catch (const std::exception&) {
    throw ValidationError("cannot parse epsilon: '" + text + "'");
  }
  if (!(value > 0.0) || value > 1.0)
    throw ValidationError("epsilon must lie in (0, 1]: " + text);
  return value;
}

StabilityConcept parse_concept(const std::string& text) {
  auto c = concept_parse(text);
  if (!c)
    throw ValidationError("unknown concept '" + text +
                          "' (expected perfect|ir|nash|is|cis|core)");
  return *c;
}

struct Trial {
  int index;
  std::uint64_t seed;
  TesterVerdict verdict;
  long long elapsed_us;
};

json aggregate_json(const std::vector<Trial>& trials, bool timing) {
  std::vector<long long> totals;
  long long rejections = 0;
  for (const Trial& t : trials) {
    totals.push_back(t.verdict.ledger.total());
    if (!t.verdict.accept) ++rejections;
  }
  std::sort(totals.begin(), totals.end());
  json agg{{"trials", trials.size()},
           {"rejections", rejections},
           {"rejection_frequency",
            trials.empty() ? 0.0 : static_cast<double>(rejections) / trials.size()},
           {"queries",
            {{"min", totals.empty() ? 0 : totals.front()},
             {"median", totals.empty() ? 0 : totals[totals.size() / 2]},
             {"max", totals.empty() ? 0 : totals.back()}}}};
  if (timing) {
    long long total_us = 0;
    for (const Trial& t : trials) total_us += t.elapsed_us;
    agg["elapsed_us_total"] = total_us;
  }
  return agg;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(const InstanceSpec& spec, const std::string& out_prefix) {
  GeneratedInstance inst = generate(spec);

  std::string game_path = out_prefix + ".game";
  write_file(game_path, [&](std::ostream& os) { write_game(os, inst.game); }, "game");
  json report{{"game_file", game_path}};

  if (inst.partition) {
    std::string part_path = out_prefix + ".partition";
    write_file(part_path, [&](std::ostream& os) { write_partition(os, *inst.partition); },
               "partition");
    report["partition_file"] = part_path;
  }

  std::string cert_path = out_prefix + ".cert.json";
  write_file(cert_path,
             [&](std::ostream& os) { os << to_json(inst.certificate).dump(2) << '\n'; },
             "certificate");
  report["certificate_file"] = cert_path;
  report["certificate"] = to_json(inst.certificate);

  std::cout << report.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// verify-exact
// ---------------------------------------------------------------------------

int cmd_verify_exact(const std::string& game_path, const std::string& part_path,
                     StabilityConcept concept_, SizeBound c) {
  FenGame game = read_game_file(game_path);
  CoalitionStructure part = read_partition_file(part_path);
  StabilityCertificate cert = exact_verify(game, part, concept_, c);
  std::cout << to_json(cert).dump(2) << '\n';
  return cert.stable ? 0 : 1;
}

// ---------------------------------------------------------------------------
// test
// ---------------------------------------------------------------------------

int cmd_test(const std::string& game_path, const std::string& part_path, const std::string& mode,
             const std::string& concept_text, const std::string& epsilon_text, SizeBound c,
             std::uint64_t seed, int trials, const std::string& format, bool timing) {
  if (trials < 1) throw ValidationError("--trials must be >= 1");
  double epsilon = parse_epsilon(epsilon_text);
  FenGame game = read_game_file(game_path);

  std::optional<CoalitionStructure> part;
  std::optional<StabilityConcept> concept_;
  if (mode == "verify") {
    if (part_path.empty()) throw ValidationError("verify mode needs a partition file");
    if (concept_text.empty()) throw ValidationError("verify mode needs --concept");
    part = read_partition_file(part_path);
    concept_ = parse_concept(concept_text);
    if (part->n() != game.n()) throw ValidationError("game and partition disagree on n");
  } else if (mode == "exist") {
    if (!c.is_bounded()) throw ValidationError("exist mode needs a bounded --c");
  } else {
    throw ValidationError("unknown --mode '" + mode + "' (expected verify|exist)");
  }

  std::vector<Trial> results;
  results.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
    auto start = std::chrono::steady_clock::now();
    TesterVerdict verdict;
    if (mode == "verify") {
      GraphOracle graph(game);
      PartitionOracle po(*part);
      verdict = verification_tester(graph, po, {epsilon, *concept_, c, trial_seed});
    } else {
      GraphOracle graph(game);
      verdict = perfect_existence_tester(graph, epsilon, c, trial_seed);
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    results.push_back({t, trial_seed, std::move(verdict), elapsed});
  }

  long long rejections = 0;
  for (const Trial& t : results)
    if (!t.verdict.accept) ++rejections;

  std::string concept_label = mode == "exist" ? "perfect" : concept_name(*concept_);
  if (format == "json") {
    json out{{"config",
              {{"mode", mode},
               {"concept", concept_label},
               {"epsilon", epsilon},
               {"c", c.str()},
               {"seed", seed},
               {"trials", trials},
               {"n", game.n()},
               {"d", game.degree_bound()},
               {"game_file", game_path}}},
             {"aggregate", aggregate_json(results, timing)}};
    json rows = json::array();
    for (const Trial& t : results) {
      json row = verdict_json(t.verdict, mode, concept_label, epsilon, c);
      row["trial"] = t.index;
      if (timing) row["elapsed_us"] = t.elapsed_us;
      rows.push_back(std::move(row));
    }
    out["trials"] = std::move(rows);
    std::cout << out.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "trial,seed,decision,neighbor,find,member,total,mode,concept,epsilon,c,n"
              << (timing ? ",elapsed_us" : "") << '\n';
    for (const Trial& t : results) {
      const QueryLedger& q = t.verdict.ledger;
      std::cout << t.index << ',' << t.seed << ',' << (t.verdict.accept ? "accept" : "reject")
                << ',' << q.neighbor << ',' << q.find << ',' << q.member << ',' << q.total() << ','
                << mode << ',' << concept_label << ',' << epsilon_text << ',' << c.str() << ','
                << game.n();
      if (timing) std::cout << ',' << t.elapsed_us;
      std::cout << '\n';
    }
  } else {
    throw ValidationError("unknown --format '" + format + "' (expected json|csv)");
  }

  return 2 * rejections < trials ? 0 : 1;  // accept-dominant -> 0
}

// ---------------------------------------------------------------------------
// repair
// ---------------------------------------------------------------------------

int cmd_repair(const std::string& game_path, const std::string& part_path,
               StabilityConcept concept_, SizeBound c, const std::string& out_path) {
  FenGame game = read_game_file(game_path);
  CoalitionStructure part = read_partition_file(part_path);
  if (part.n() != game.n()) throw ValidationError("game and partition disagree on n");

  long long witnesses = 0;
  {
    GraphOracle graph(game);
    PartitionOracle po(part);
    for (Player i = 1; i <= game.n(); ++i)
      if (phi(concept_, graph, po, i, c, game.params()).witness) ++witnesses;
  }
  EditScript script = repair_all_witnesses(game, part, concept_, c);
  long long bound = witnesses * game.degree_bound();
  if (static_cast<long long>(script.cost()) > bound)
    throw std::logic_error("repair script exceeds the k*d bound");
  FenGame repaired = game.apply(script);
  bool stable_after = exact_verify(repaired, part, concept_, c).stable;

  write_file(out_path, [&](std::ostream& os) { write_edit_script(os, script); }, "edit script");

  json out{{"concept", concept_name(concept_)},
           {"c", c.str()},
           {"witnesses", witnesses},
           {"script_length", script.cost()},
           {"bound_witnesses_times_d", bound},
           {"stable_after", stable_after},
           {"script_file", out_path}};
  std::cout << out.dump(2) << '\n';
  return stable_after ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

int cmd_bench(const std::string& sweep, const std::vector<std::string>& values, int fixed_n,
              int fixed_d, SizeBound fixed_c, StabilityConcept concept_,
              const std::string& epsilon_text, std::uint64_t seed, int trials,
              const std::string& out_path, bool timing) {
  if (values.empty()) throw ValidationError("--values must not be empty");
  double fixed_epsilon = parse_epsilon(epsilon_text);

  std::ostringstream csv;
  csv << "sweep,value,trial,seed,decision,s,neighbor,find,member,total,n,d,c,concept,epsilon"
      << (timing ? ",elapsed_us" : "") << '\n';

  for (const std::string& value : values) {
    int n = fixed_n;
    SizeBound c = fixed_c;
    double epsilon = fixed_epsilon;
    std::string eps_label = epsilon_text;
    if (sweep == "n")
      n = static_cast<int>(std::stoll(value));
    else if (sweep == "epsilon") {
      epsilon = parse_epsilon(value);
      eps_label = value;
    } else if (sweep == "c")
      c = SizeBound::parse(value);
    else
      throw ValidationError("unknown --sweep '" + sweep + "' (expected n|epsilon|c)");

    // Uniform certified-stable instance: friend clusters with an enemy
    // ring, so per-sample query counts depend only on d, c, and epsilon.
    InstanceSpec spec;
    spec.family = Family::FriendClustersPerfect;
    spec.n = n;
    spec.d = fixed_d;
    spec.c = fixed_c;
    spec.seed = seed;
    GeneratedInstance inst = generate(spec);

    int s = sample_size(epsilon);
    for (int t = 0; t < trials; ++t) {
      std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
      GraphOracle graph(inst.game);
      PartitionOracle po(*inst.partition);
      auto start = std::chrono::steady_clock::now();
      TesterVerdict verdict = verification_tester(graph, po, {epsilon, concept_, c, trial_seed});
      auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      const QueryLedger& q = verdict.ledger;
      csv << sweep << ',' << value << ',' << t << ',' << trial_seed << ','
          << (verdict.accept ? "accept" : "reject") << ',' << s << ',' << q.neighbor << ','
          << q.find << ',' << q.member << ',' << q.total() << ',' << n << ',' << fixed_d << ','
          << c.str() << ',' << concept_name(concept_) << ',' << eps_label;
      if (timing) csv << ',' << elapsed;
      csv << '\n';
    }
  }

  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out_path, [&](std::ostream& os) { os << csv.str(); }, "csv");
    std::cout << "wrote " << out_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability testing for FEN hedonic games on bounded-degree graphs"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance (game, partition, certificate)");
  std::string gen_family, gen_preset = "custom", gen_c = "unbounded", gen_out = "instance";
  InstanceSpec spec;
  long long gen_f = 1, gen_e = 1, gen_edge_target = -1;
  gen->add_option("--family", gen_family, "instance family")->required();
  gen->add_option("--n", spec.n, "number of players")->required();
  gen->add_option("--d", spec.d, "degree bound")->default_val(4);
  gen->add_option("--c", gen_c, "coalition size bound or 'unbounded'");
  gen->add_option("--seed", spec.seed, "rng seed")->default_val(0);
  gen->add_option("--preset", gen_preset, "friends-appreciation|enemies-aversion|custom");
  gen->add_option("--f", gen_f, "friend value (custom preset)");
  gen->add_option("--e", gen_e, "enemy value (custom preset)");
  gen->add_option("--edge-target", gen_edge_target, "edge count target (random family)");
  gen->add_option("--out", gen_out, "output file prefix");

  // verify-exact
  auto* verify = app.add_subcommand("verify-exact", "exact stability verification");
  std::string v_game, v_part, v_concept, v_c = "unbounded";
  verify->add_option("game", v_game, "game file")->required();
  verify->add_option("partition", v_part, "partition file")->required();
  verify->add_option("--concept", v_concept, "stability concept")->required();
  verify->add_option("--c", v_c, "coalition size bound or 'unbounded'");

  // test
  auto* test = app.add_subcommand("test", "randomized property-testing runs");
  std::string t_game, t_part, t_mode = "verify", t_concept, t_epsilon = "0.1",
              t_c = "unbounded", t_format = "json";
  std::uint64_t t_seed = 0;
  int t_trials = 1;
  bool t_timing = false;
  test->add_option("game", t_game, "game file")->required();
  test->add_option("partition", t_part, "partition file (verify mode)");
  test->add_option("--mode", t_mode, "verify|exist");
  test->add_option("--concept", t_concept, "stability concept (verify mode)");
  test->add_option("--epsilon", t_epsilon, "distance parameter, decimal or p/q");
  test->add_option("--c", t_c, "coalition size bound or 'unbounded'");
  test->add_option("--seed", t_seed, "base seed; trial t uses seed + t");
  test->add_option("--trials", t_trials, "number of independent runs");
  test->add_option("--format", t_format, "json|csv");
  test->add_flag("--timing", t_timing, "include wall-clock columns (breaks byte-stable output)");

  // repair
  auto* repair = app.add_subcommand("repair", "emit and check a witness repair script");
  std::string r_game, r_part, r_concept, r_c = "unbounded", r_out = "repair.edits";
  repair->add_option("game", r_game, "game file")->required();
  repair->add_option("partition", r_part, "partition file")->required();
  repair->add_option("--concept", r_concept, "stability concept")->required();
  repair->add_option("--c", r_c, "coalition size bound or 'unbounded'");
  repair->add_option("--out", r_out, "edit script output file");

  // bench
  auto* bench = app.add_subcommand("bench", "query-count sweeps over n, epsilon, or c");
  std::string b_sweep, b_values, b_concept = "nash", b_epsilon = "0.1", b_c = "unbounded", b_out;
  int b_n = 1000, b_d = 6, b_trials = 100;
  std::uint64_t b_seed = 0;
  bool b_timing = false;
  bench->add_option("--sweep", b_sweep, "n|epsilon|c")->required();
  bench->add_option("--values", b_values, "comma-separated sweep values")->required();
  bench->add_option("--n", b_n, "fixed player count");
  bench->add_option("--d", b_d, "fixed degree bound");
  bench->add_option("--c", b_c, "fixed size bound");
  bench->add_option("--concept", b_concept, "stability concept");
  bench->add_option("--epsilon", b_epsilon, "fixed epsilon");
  bench->add_option("--seed", b_seed, "base seed");
  bench->add_option("--trials", b_trials, "runs per sweep value");
  bench->add_option("--out", b_out, "write CSV here instead of stdout");
  bench->add_flag("--timing", b_timing, "include wall-clock columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      auto family = family_parse(gen_family);
      if (!family) throw ValidationError("unknown family '" + gen_family + "'");
      spec.family = *family;
      spec.c = SizeBound::parse(gen_c);
      spec.preset = gen_preset;
      spec.params = {gen_f, gen_e};
      if (gen_edge_target >= 0) spec.edge_target = gen_edge_target;
      return cmd_gen(spec, gen_out);
    }
    if (verify->parsed())
      return cmd_verify_exact(v_game, v_part, parse_concept(v_concept), SizeBound::parse(v_c));
    if (test->parsed())
      return cmd_test(t_game, t_part, t_mode, t_concept, t_epsilon, SizeBound::parse(t_c), t_seed,
                      t_trials, t_format, t_timing);
    if (repair->parsed())
      return cmd_repair(r_game, r_part, parse_concept(r_concept), SizeBound::parse(r_c), r_out);
    if (bench->parsed()) {
      std::vector<std::string> values;
      std::stringstream ss(b_values);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) values.push_back(item);
      return cmd_bench(b_sweep, values, b_n, b_d, SizeBound::parse(b_c), parse_concept(b_concept),
                       b_epsilon, b_seed, b_trials, b_out, b_timing);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedInstance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
