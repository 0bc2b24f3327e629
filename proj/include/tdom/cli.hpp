#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdom/adversary.hpp"
#include "tdom/algorithms.hpp"
#include "tdom/graph.hpp"
#include "tdom/graph_io.hpp"
#include "tdom/local_sim.hpp"
#include "tdom/parallel.hpp"
#include "tdom/rational.hpp"
#include "tdom/reductions.hpp"
#include "tdom/report.hpp"
#include "tdom/verify.hpp"

namespace tdom {

enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitConfigError = 2 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything that determines a command's output. Thread count is deliberately
/// absent: it never changes a report.
struct ExperimentConfig {
  std::string command;
  // graph source
  std::optional<std::int64_t> ring;
  std::vector<Label> labels;
  std::optional<std::uint64_t> seed;
  std::string graph_file;
  std::optional<Label> L;
  // algorithm
  std::string alg = "choose-smallest";
  std::int64_t T = 0;
  // verify
  std::vector<Label> members;
  // adversary
  std::int64_t n = 0;
  std::string lambda = "7/5";
  // colour
  std::string x = "1/3";
  std::string beta = "2/3";
  std::optional<std::int64_t> scale_T;
  std::optional<std::int64_t> scale_T_prime;
  bool dot = false;
  // sweep
  std::int64_t n_from = 0;
  std::int64_t n_to = -1;
  std::int64_t n_step = 1;
  std::vector<std::int64_t> T_values;
  // output
  std::string format = "json";
  int verbosity = 0;
};

inline Json to_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  if (c.ring) j["ring"] = *c.ring;
  if (!c.labels.empty()) j["labels"] = c.labels;
  if (c.seed) j["seed"] = *c.seed;
  if (!c.graph_file.empty()) j["graph"] = c.graph_file;
  if (c.L) j["L"] = *c.L;
  j["alg"] = c.alg;
  j["T"] = c.T;
  if (c.command == "verify") j["members"] = c.members;
  if (c.command == "adversary") {
    j["n"] = c.n;
    j["lambda"] = c.lambda;
  }
  if (c.command == "colour") {
    j["x"] = c.x;
    j["beta"] = c.beta;
    if (c.scale_T) j["scale_T"] = *c.scale_T;
    if (c.scale_T_prime) j["scale_T_prime"] = *c.scale_T_prime;
    j["dot"] = c.dot;
  }
  if (c.command == "sweep") {
    j["n_from"] = c.n_from;
    j["n_to"] = c.n_to;
    j["n_step"] = c.n_step;
    j["T_values"] = c.T_values;
  }
  j["format"] = c.format;
  j["verbosity"] = c.verbosity;
  return j;
}

inline ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    if (j.contains("ring")) c.ring = j["ring"].get<std::int64_t>();
    if (j.contains("labels")) c.labels = j["labels"].get<std::vector<Label>>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("graph")) c.graph_file = j["graph"].get<std::string>();
    if (j.contains("L")) c.L = j["L"].get<Label>();
    c.alg = j.value("alg", c.alg);
    c.T = j.value("T", c.T);
    if (j.contains("members")) c.members = j["members"].get<std::vector<Label>>();
    c.n = j.value("n", c.n);
    c.lambda = j.value("lambda", c.lambda);
    c.x = j.value("x", c.x);
    c.beta = j.value("beta", c.beta);
    if (j.contains("scale_T")) c.scale_T = j["scale_T"].get<std::int64_t>();
    if (j.contains("scale_T_prime")) c.scale_T_prime = j["scale_T_prime"].get<std::int64_t>();
    c.dot = j.value("dot", c.dot);
    c.n_from = j.value("n_from", c.n_from);
    c.n_to = j.value("n_to", c.n_to);
    c.n_step = j.value("n_step", c.n_step);
    if (j.contains("T_values")) c.T_values = j["T_values"].get<std::vector<std::int64_t>>();
    c.format = j.value("format", c.format);
    c.verbosity = j.value("verbosity", c.verbosity);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return c;
}

namespace cli_detail {

inline Rational parse_rational(const std::string& text, const char* what) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--") + what + ": " + e.what());
  }
}

inline LabeledGraph build_graph(const ExperimentConfig& c) {
  try {
    if (!c.graph_file.empty()) {
      if (c.ring) throw ConfigError("--graph and --ring are exclusive");
      return load_graph(c.graph_file);
    }
    if (!c.ring) throw ConfigError("need a graph: --ring n or --graph file");
    if (*c.ring < 3) throw ConfigError("--ring needs n >= 3");
    const auto n = static_cast<std::size_t>(*c.ring);
    if (!c.labels.empty() && c.seed) throw ConfigError("--labels and --seed are exclusive");
    std::vector<Label> labels;
    if (!c.labels.empty()) {
      if (c.labels.size() != n)
        throw ConfigError("--labels lists " + std::to_string(c.labels.size()) + " labels for a ring of " +
                          std::to_string(n));
      labels = c.labels;
    } else if (c.seed) {
      labels = seeded_permutation(n, *c.seed);
    } else {
      for (std::size_t i = 0; i < n; ++i) labels.push_back(i + 1);
    }
    const auto max_label = *std::max_element(labels.begin(), labels.end());
    return LabeledGraph::ring(std::move(labels), c.L.value_or(std::max<Label>(n, max_label)));
  } catch (const GraphParseError& e) {
    throw ConfigError(c.graph_file + ": " + e.what());
  } catch (const GraphError& e) {
    throw ConfigError(e.what());
  }
}

inline NodeAlgorithm algorithm(const ExperimentConfig& c, Label L) {
  try {
    return make_algorithm(c.alg, c.T, L);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline Json envelope(const ExperimentConfig& c) {
  Json j;
  j["schema"] = "tdom-report";
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = to_json(c);
  return j;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

/// Proven size bound of the named algorithm on a ring, if it has one.
inline std::optional<std::int64_t> size_bound(const std::string& alg, std::int64_t n, std::int64_t T, Label L) {
  if (alg == "choose-smallest") return std::max<std::int64_t>(1, n - T / 2);
  if (alg == "ruling-set") {
    const auto p = ruling_params(T, L);
    if (p.fallback()) return n;
    return ceil_div(n, p.k + 1);
  }
  return std::nullopt;
}

inline int cmd_run(const ExperimentConfig& c, std::ostream& out) {
  if (c.T < 0) throw ConfigError("--T must be non-negative");
  const auto g = build_graph(c);
  const auto alg = algorithm(c, g.label_bound());
  ExecutionResult result;
  try {
    result = execute(alg, g, c.T);
  } catch (const GraphError& e) {
    throw ConfigError(e.what());
  }
  const auto T = static_cast<std::size_t>(c.T);
  const auto dominating = is_t_dominating(g, result.membership(), T);
  const auto certificates = check_certificates(g, result, T);
  const bool rounds_ok = result.rounds_used <= c.T;
  auto j = envelope(c);
  j["graph"] = graph_summary(g);
  j["result"] = to_json(result, g, c.verbosity > 0);
  j["checks"]["dominating"] = to_json(dominating, &g);
  j["checks"]["certificates"] = to_json(certificates, &g);
  j["checks"]["rounds_ok"] = rounds_ok;
  bool ok = dominating.ok && certificates.ok && rounds_ok;
  if (g.is_ring()) {
    if (auto bound = size_bound(c.alg, static_cast<std::int64_t>(g.size()), c.T, g.label_bound())) {
      const bool size_ok = static_cast<std::int64_t>(result.member_count()) <= *bound;
      j["checks"]["size_bound"] = *bound;
      j["checks"]["size_ok"] = size_ok;
      ok = ok && size_ok;
    }
  }
  j["ok"] = ok;
  emit(out, j);
  return ok ? kExitOk : kExitVerificationFailed;
}

inline int cmd_verify(const ExperimentConfig& c, std::ostream& out) {
  if (c.T < 0) throw ConfigError("--T must be non-negative");
  const auto g = build_graph(c);
  std::vector<bool> members(g.size(), false);
  for (auto l : c.members) {
    const auto v = g.node_of(l);
    if (!v) throw ConfigError("--members names unknown label " + std::to_string(l));
    members[*v] = true;
  }
  const auto T = static_cast<std::size_t>(c.T);
  const auto dominating = is_t_dominating(g, members, T);
  auto j = envelope(c);
  j["graph"] = graph_summary(g);
  j["set_size"] = std::count(members.begin(), members.end(), true);
  j["checks"]["dominating"] = to_json(dominating, &g);
  if (g.is_ring() && g.size() >= 2 * T + 1) j["checks"]["window"] = to_json(window_check_ring(g, members, T), &g);
  j["ok"] = dominating.ok;
  emit(out, j);
  return dominating.ok ? kExitOk : kExitVerificationFailed;
}

inline int cmd_oracle(const ExperimentConfig& c, std::ostream& out) {
  if (c.T < 0) throw ConfigError("--T must be non-negative");
  const auto g = build_graph(c);
  if (g.size() > kOracleMaxNodes)
    throw ConfigError("oracle is exact and limited to " + std::to_string(kOracleMaxNodes) + " nodes");
  const auto best = min_dominating_size_oracle(g, static_cast<std::size_t>(c.T));
  auto j = envelope(c);
  j["graph"] = graph_summary(g);
  j["min_dominating_size"] = best;
  bool ok = true;
  if (g.is_ring()) {
    const auto expected = ceil_div(static_cast<std::int64_t>(g.size()), 2 * c.T + 1);
    j["ring_formula"] = expected;
    ok = static_cast<std::int64_t>(best) == expected;
  }
  j["ok"] = ok;
  emit(out, j);
  return ok ? kExitOk : kExitVerificationFailed;
}

inline int cmd_adversary(const ExperimentConfig& c, std::ostream& out) {
  const auto lambda = parse_rational(c.lambda, "lambda");
  const auto L = static_cast<Label>(std::max<std::int64_t>(2 * c.n, 1));
  const auto alg = algorithm(c, L);
  auto j = envelope(c);
  try {
    const auto report = run_theorem1_experiment(alg, c.n, c.T, lambda);
    j["report"] = to_json(report, c.verbosity > 0);
    j["ok"] = report.certified;
    emit(out, j);
    return report.certified ? kExitOk : kExitVerificationFailed;
  } catch (const AdversaryError& e) {
    if (e.kind() == AdversaryError::Kind::Infeasible) throw ConfigError(std::string("infeasible: ") + e.what());
    j["falsified"] = e.what();
    j["witness"] = to_json(e.witness());
    j["ok"] = false;
    emit(out, j);
    return kExitVerificationFailed;
  }
}

inline int cmd_colour(const ExperimentConfig& c, std::ostream& out) {
  const auto ring = build_graph(c);
  if (!ring.is_ring()) throw ConfigError("colour needs a ring");
  const auto x = parse_rational(c.x, "x");
  const auto beta = parse_rational(c.beta, "beta");
  EightColourParams params;
  try {
    params = EightColourParams::derive(ring.size(), x, beta);
    if (c.scale_T || c.scale_T_prime) params = params.with_scale(c.scale_T.value_or(params.T), c.scale_T_prime.value_or(0));
  } catch (const ReductionError& e) {
    throw ConfigError(e.what());
  }
  const auto alg = algorithm(c, ring.label_bound());
  const auto result = eight_colour_ring(alg, ring, params);
  if (c.dot) {
    out << to_dot(ring, result.colours);
    return result.status == ColouringStatus::ClaimsViolated ? kExitVerificationFailed : kExitOk;
  }
  auto j = envelope(c);
  j["graph"] = graph_summary(ring);
  j["colouring"] = to_json(result, ring);
  for (const auto& v : result.violations()) {
    if (v.claim != Claim::SurvivorStretch) continue;
    j["claim3_counterexample"] = to_json(check_claim3_counterexample(alg, ring, result.second_run, v.witness, params));
    break;
  }
  const bool ok = result.status != ColouringStatus::ClaimsViolated;
  j["ok"] = ok;
  emit(out, j);
  return ok ? kExitOk : kExitVerificationFailed;
}

struct SweepRow {
  std::int64_t n = 0;
  std::int64_t T = 0;
  std::size_t set_size = 0;
  std::int64_t bound = 0;
  bool dominating = false;
};

inline std::string ratio_text(std::size_t size, std::int64_t bound) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", static_cast<double>(size) / static_cast<double>(bound));
  return buf;
}

inline int cmd_sweep(const ExperimentConfig& c, std::ostream& out) {
  if (c.n_step <= 0) throw ConfigError("--n-step must be positive");
  for (auto T : c.T_values)
    if (T < 0) throw ConfigError("--T-values must be non-negative");
  if (c.format != "csv" && c.format != "json") throw ConfigError("--format must be json or csv");
  std::vector<SweepRow> rows;
  for (auto n = c.n_from; n <= c.n_to; n += c.n_step) {
    if (n < 3) throw ConfigError("sweep rings need n >= 3");
    for (auto T : c.T_values) rows.push_back({n, T, 0, ceil_div(n, 2 * T + 1), false});
  }
  if (!rows.empty()) algorithm(c, 1);
  parallel_for(rows.size(), [&](std::size_t i) {
    auto& row = rows[i];
    const auto n = static_cast<std::size_t>(row.n);
    const auto g = c.seed ? seeded_ring(n, *c.seed + n) : identity_ring(n);
    const auto result = execute(make_algorithm(c.alg, row.T, g.label_bound()), g, row.T);
    row.set_size = result.member_count();
    row.dominating = is_t_dominating(g, result.membership(), static_cast<std::size_t>(row.T)).ok;
  });
  if (c.format == "csv") {
    out << "# " << to_json(c).dump() << '\n';
    out << "n,T,algorithm,set_size,bound,ratio\n";
    for (const auto& r : rows)
      out << r.n << ',' << r.T << ',' << c.alg << ',' << r.set_size << ',' << r.bound << ','
          << ratio_text(r.set_size, r.bound) << '\n';
  } else {
    auto j = envelope(c);
    Json table = Json::array();
    for (const auto& r : rows)
      table.push_back({{"n", r.n},
                       {"T", r.T},
                       {"algorithm", c.alg},
                       {"set_size", r.set_size},
                       {"bound", r.bound},
                       {"ratio", ratio_text(r.set_size, r.bound)},
                       {"dominating", r.dominating}});
    j["rows"] = table;
    emit(out, j);
  }
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.dominating; });
  return ok ? kExitOk : kExitVerificationFailed;
}

inline int dispatch(const ExperimentConfig& c, std::ostream& out) {
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
  if (c.command == "run") return cmd_run(c, out);
  if (c.command == "verify") return cmd_verify(c, out);
  if (c.command == "oracle") return cmd_oracle(c, out);
  if (c.command == "adversary") return cmd_adversary(c, out);
  if (c.command == "colour") return cmd_colour(c, out);
  if (c.command == "sweep") return cmd_sweep(c, out);
  throw ConfigError("unknown command '" + c.command + "'");
}

}  // namespace cli_detail

/// Entry point shared by the tdom binary and the tests. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"T-dominating sets in the LOCAL model: simulate, verify, attack and reduce"};
  app.require_subcommand(1);
  ExperimentConfig c;
  std::string replay_path;

  auto add_graph = [&](CLI::App* sub) {
    sub->add_option("--ring", c.ring, "generate a ring of n nodes");
    sub->add_option("--labels", c.labels, "ring labels in cyclic order")->delimiter(',');
    sub->add_option("--seed", c.seed, "seed for a label permutation of 1..n");
    sub->add_option("--graph", c.graph_file, "graph file");
    sub->add_option("--L", c.L, "label bound (default max(n, largest label))");
  };
  auto add_alg = [&](CLI::App* sub) {
    sub->add_option("--alg", c.alg, "choose-smallest | ruling-set | constant-1 | constant-0");
    sub->add_option("--T", c.T, "round budget");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json | csv");
    sub->add_flag("-v,--verbose", c.verbosity, "per-node detail");
  };

  auto* run = app.add_subcommand("run", "execute an algorithm and verify its output");
  add_graph(run);
  add_alg(run);
  add_common(run);

  auto* verify = app.add_subcommand("verify", "check a given set for T-domination");
  add_graph(verify);
  verify->add_option("--T", c.T, "domination radius");
  verify->add_option("--members", c.members, "member labels")->delimiter(',');
  add_common(verify);

  auto* oracle = app.add_subcommand("oracle", "exact minimum T-dominating set size");
  add_graph(oracle);
  oracle->add_option("--T", c.T, "domination radius");
  add_common(oracle);

  auto* adversary = app.add_subcommand("adversary", "cut-and-paste lower bound experiment on rings");
  adversary->add_option("--n", c.n, "ring size")->required();
  add_alg(adversary);
  adversary->add_option("--lambda", c.lambda, "target ratio p/q, below 3/2");
  add_common(adversary);

  auto* colour = app.add_subcommand("colour", "8-colour a ring from a candidate dominating algorithm");
  add_graph(colour);
  colour->add_option("--alg", c.alg, "candidate algorithm");
  colour->add_option("--x", c.x, "size fraction p/q in (0,1)");
  colour->add_option("--beta", c.beta, "beta p/q");
  colour->add_option("--scale-T", c.scale_T, "override T");
  colour->add_option("--scale-T-prime", c.scale_T_prime, "override T'");
  colour->add_flag("--dot", c.dot, "print the coloured ring as DOT");
  add_common(colour);

  auto* sweep = app.add_subcommand("sweep", "set sizes over a grid of ring sizes and budgets");
  sweep->add_option("--alg", c.alg, "algorithm");
  sweep->add_option("--n-from", c.n_from, "first ring size");
  sweep->add_option("--n-to", c.n_to, "last ring size (inclusive)");
  sweep->add_option("--n-step", c.n_step, "ring size step");
  sweep->add_option("--T-values", c.T_values, "budgets")->delimiter(',');
  sweep->add_option("--seed", c.seed, "label permutation seed (ring n uses seed + n)");
  sweep->add_option("--format", c.format, "csv | json")->default_str("csv");
  sweep->add_flag("-v,--verbose", c.verbosity, "unused");

  auto* replay = app.add_subcommand("replay", "re-run the config embedded in a report or config file");
  replay->add_option("file", replay_path, "report or config JSON")->required();

  std::vector<std::string> argv_store{"tdom"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfigError;
  }

  try {
    if (replay->parsed()) {
      std::ifstream in(replay_path);
      if (!in) throw ConfigError("cannot open '" + replay_path + "'");
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::exception& e) {
        throw ConfigError(replay_path + ": " + e.what());
      }
      return cli_detail::dispatch(config_from_json(j.contains("config") ? j["config"] : j), out);
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.command == "sweep" && sweep->count("--format") == 0) c.format = "csv";
    return cli_detail::dispatch(c, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace tdom
