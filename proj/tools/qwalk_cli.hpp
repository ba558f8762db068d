//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

// Command-line front end. Kept in a header so tests can drive it in-process.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwalk/qwalk.hpp"

namespace qwalk::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kDomainError = 3,
  kIoError = 4,
};

/// Unreadable or malformed user input; maps to exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

enum class OutputFormat { Json, Csv };

struct WalkOptions {
  std::optional<double> time;
  bool infinite = false;
  Hamiltonian hamiltonian = Hamiltonian::Laplacian;
  EdgeWeighting weighting = EdgeWeighting::Auto;
  double sigma = 1.0;
  OutputFormat format = OutputFormat::Json;
  std::string attrs_a;
  std::string attrs_b;
  std::size_t threads = 0;

  WalkConfig config() const {
    WalkConfig c;
    c.hamiltonian = hamiltonian;
    c.weighting = weighting;
    c.sigma = sigma;
    c.threads = threads;
    return c;
  }
  Horizon horizon() const { return time ? Horizon::finite(*time) : Horizon::infinite(); }
};

inline void add_walk_options(CLI::App *cmd, WalkOptions &o, bool pair_attrs) {
  auto *t = cmd->add_option("--time", o.time, "finite averaging horizon T > 0");
  auto *inf = cmd->add_flag("--infinite", o.infinite, "average over T -> infinity (default)");
  t->excludes(inf);
  cmd->add_option("--hamiltonian", o.hamiltonian, "walk Hamiltonian")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Hamiltonian>{{"laplacian", Hamiltonian::Laplacian},
                                             {"adjacency", Hamiltonian::Adjacency}},
          CLI::ignore_case));
  cmd->add_option("--weighting", o.weighting, "inter-edge weights")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, EdgeWeighting>{{"auto", EdgeWeighting::Auto},
                                               {"unit", EdgeWeighting::Unit},
                                               {"kernel", EdgeWeighting::AttributeKernel}},
          CLI::ignore_case));
  cmd->add_option("--sigma", o.sigma, "attribute kernel width")->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"json", OutputFormat::Json},
                                              {"csv", OutputFormat::Csv}},
          CLI::ignore_case));
  if (pair_attrs) {
    cmd->add_option("--attrs-a", o.attrs_a, "attribute sidecar for the first graph");
    cmd->add_option("--attrs-b", o.attrs_b, "attribute sidecar for the second graph");
  } else {
    cmd->add_option("--attrs", o.attrs_a, "attribute sidecar for the graph");
  }
  cmd->add_option("--threads", o.threads, "worker threads (default: QWALK_THREADS or all cores)");
}

/// Loads a graph (and optional attribute sidecar); missing or malformed
/// files become InputError naming the file.
inline Graph read_graph(const std::string &path, const std::string &attrs = {}) {
  try {
    Graph g = load_graph_file(path);
    if (!attrs.empty())
      g = g.with_attributes(load_attributes_file(attrs, g.size()));
    return g;
  } catch (const IoError &e) {
    throw InputError(e.what());
  } catch (const ParseError &e) {
    throw InputError(e.what());
  }
}

inline std::string horizon_tag(const Horizon &h) {
  return h.is_infinite() ? "infinite" : format_number(h.time());
}

inline void emit_json(std::ostream &out, const Json &j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- sim

struct SimArgs {
  std::string a, b;
  WalkOptions walk;
};

inline int cmd_sim(const SimArgs &args, std::ostream &out) {
  const Graph g1 = read_graph(args.a, args.walk.attrs_a);
  const Graph g2 = read_graph(args.b, args.walk.attrs_b);
  const auto report = graph_qjsd(g1, g2, args.walk.horizon(), args.walk.config());
  if (args.walk.format == OutputFormat::Json) {
    emit_json(out, to_json(report));
  } else {
    out << "value,entropy_mixture,entropy_rho,entropy_sigma,time_horizon\n"
        << format_number(report.value) << ',' << format_number(report.entropy_mixture) << ','
        << format_number(report.entropy_rho) << ',' << format_number(report.entropy_sigma) << ','
        << horizon_tag(*report.horizon) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- match

struct MatchArgs {
  std::string a, b;
  WalkOptions walk;
  std::vector<double> times;
  CostTransform cost = CostTransform::OneMinusQjsd;
  PairTopology topology = PairTopology::Single;
  double anchor_scale = 2.0;
};

inline int cmd_match(const MatchArgs &args, std::ostream &out) {
  const Graph g1 = read_graph(args.a, args.walk.attrs_a);
  const Graph g2 = read_graph(args.b, args.walk.attrs_b);

  std::vector<Horizon> horizons;
  for (double t : args.times)
    horizons.push_back(Horizon::finite(t));
  if (args.walk.time)
    horizons.push_back(Horizon::finite(*args.walk.time));
  if (horizons.empty() || args.walk.infinite)
    horizons.push_back(Horizon::infinite());

  WalkConfig config = args.walk.config();
  config.pair_topology = args.topology;
  config.anchor_scale = args.anchor_scale;
  const auto tables = node_pair_qjsd(g1, g2, horizons, config);

  Json results = Json::array();
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    const Assignment assignment = hungarian(qjsd_cost(tables[h], args.cost));
    if (args.walk.format == OutputFormat::Json) {
      results.push_back(Json{{"time_horizon", horizon_json(horizons[h])},
                             {"qjsd", to_json(tables[h])},
                             {"assignment", to_json(assignment)}});
    } else {
      out << "# time_horizon=" << horizon_tag(horizons[h]) << '\n';
      write_matrix_csv(out, tables[h]);
      out << "# assignment total_cost=" << format_number(assignment.total_cost) << '\n';
      out << "left,right\n";
      for (const auto &[u, v] : assignment.pairs)
        out << u << ',' << v << '\n';
    }
  }
  if (args.walk.format == OutputFormat::Json)
    emit_json(out, Json{{"results", results}});
  return kOk;
}

// ---------------------------------------------------------------- noise-curve

struct NoiseArgs {
  std::string graph;
  std::size_t max_k = 3;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  WalkOptions walk;
};

struct NoiseRow {
  std::size_t k;
  double mean;
  double stddev;
};

/// Mean and sample standard deviation of graph_qjsd(G, perturb(G, k)) per k.
inline std::vector<NoiseRow> noise_curve(const Graph &g, std::size_t max_k, std::size_t trials,
                                         std::uint64_t seed, const Horizon &horizon,
                                         const WalkConfig &config) {
  const std::size_t pairs = g.size() < 2 ? 0 : g.size() * (g.size() - 1) / 2;
  if (max_k > pairs)
    throw ParameterError("max-k " + std::to_string(max_k) + " exceeds the " +
                         std::to_string(pairs) + " node pairs of the graph");
  if (trials == 0)
    throw ParameterError("trials must be at least 1");

  std::vector<double> values((max_k + 1) * trials);
  WalkConfig serial = config;
  serial.threads = 1;
  parallel_for(values.size(), resolve_threads(config.threads), [&](std::size_t cell) {
    const std::size_t k = cell / trials;
    const std::size_t trial = cell % trials;
    const Graph noisy = perturb(g, k, split_seed(seed, {k, trial}));
    values[cell] = graph_qjsd(g, noisy, horizon, serial).value;
  });

  std::vector<NoiseRow> rows;
  for (std::size_t k = 0; k <= max_k; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < trials; ++i)
      sum += values[k * trials + i];
    const double mean = sum / static_cast<double>(trials);
    double ss = 0.0;
    for (std::size_t i = 0; i < trials; ++i)
      ss += (values[k * trials + i] - mean) * (values[k * trials + i] - mean);
    const double sd = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
    rows.push_back({k, mean, sd});
  }
  return rows;
}

inline int cmd_noise_curve(const NoiseArgs &args, std::ostream &out) {
  const Graph g = read_graph(args.graph, args.walk.attrs_a);
  const auto rows = noise_curve(g, args.max_k, args.trials, args.seed, args.walk.horizon(),
                                args.walk.config());
  if (args.walk.format == OutputFormat::Json) {
    Json j = Json::array();
    for (const auto &r : rows)
      j.push_back(Json{{"k", r.k}, {"mean_qjsd", r.mean}, {"stddev", r.stddev}});
    emit_json(out, j);
  } else {
    out << "k,mean_qjsd,stddev\n";
    for (const auto &r : rows)
      out << r.k << ',' << format_number(r.mean) << ',' << format_number(r.stddev) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::vector<std::string> manifests;
  std::size_t k = 1;
  double split = 0.5;
  std::uint64_t seed = 0;
  DistanceMetric metric = DistanceMetric::Xor;
  std::string confusion_csv;
  WalkOptions walk;
};

inline Dataset read_dataset(const std::vector<std::string> &manifests) {
  std::vector<LabeledGraph> items;
  std::string name;
  for (const auto &m : manifests) {
    std::vector<ManifestEntry> entries;
    try {
      auto in = open_input(m);
      entries = with_source(m, [&] {
        return read_manifest(in, std::filesystem::path(m).parent_path());
      });
    } catch (const IoError &e) {
      throw InputError(e.what());
    } catch (const ParseError &e) {
      throw InputError(e.what());
    }
    for (const auto &e : entries) {
      try {
        items.push_back({load_graph_file(e.path), e.label});
      } catch (const Error &err) {
        throw InputError(m + ": row at line " + std::to_string(e.line) + " ('" +
                         e.path.generic_string() + "'): " + err.what());
      }
    }
    name += (name.empty() ? "" : "+") + m;
  }
  return Dataset(name, std::move(items));
}

inline int cmd_classify(const ClassifyArgs &args, std::ostream &out, std::ostream &err) {
  const Dataset data = read_dataset(args.manifests);
  DistanceConfig dc;
  dc.metric = args.metric;
  dc.walk = args.walk.config();
  dc.walk.threads = 1;
  dc.horizon = args.walk.horizon();
  dc.threads = args.walk.threads;
  const EvaluationReport report = evaluate(data, args.split, args.k, args.seed, dc);
  for (const auto &w : report.warnings)
    err << "warning: " << w << '\n';
  if (!args.confusion_csv.empty()) {
    std::ofstream f(args.confusion_csv);
    if (!f)
      throw IoError("cannot write '" + args.confusion_csv + "'");
    write_confusion_csv(f, report);
    if (!f)
      throw IoError("failed writing '" + args.confusion_csv + "'");
  }
  if (args.walk.format == OutputFormat::Json) {
    emit_json(out, to_json(report));
  } else {
    out << "accuracy,k,seed,split_fraction,train_size,test_size\n"
        << format_number(report.accuracy) << ',' << report.k << ',' << report.seed << ','
        << format_number(report.split_fraction) << ',' << report.train_size << ','
        << report.test_size << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::size_t n = 10;
  double p = 0.3;
  std::size_t noise = 1;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string label;
};

inline void write_file(const std::filesystem::path &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw IoError("cannot write '" + path.string() + "'");
  f << content;
  if (!f)
    throw IoError("failed writing '" + path.string() + "'");
}

inline std::string variant_name(std::size_t i) {
  std::ostringstream s;
  s << "variant_" << std::setw(4) << std::setfill('0') << i << ".txt";
  return s.str();
}

/// Prototype, `count` noisy variants and a manifest listing all of them.
inline int cmd_gen(const GenArgs &args, std::ostream &out) {
  const Graph proto = synth_prototype(args.n, args.p, split_seed(args.seed, {1}));
  const std::string label = args.label.empty() ? "n" + std::to_string(args.n) : args.label;
  const std::filesystem::path dir(args.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  std::vector<ManifestEntry> manifest;
  auto save = [&](const std::string &name, const Graph &g) {
    std::ostringstream s;
    write_edgelist(s, g);
    write_file(dir / name, s.str());
    manifest.push_back({name, label});
  };
  save("prototype.txt", proto);
  for (std::size_t i = 0; i < args.count; ++i)
    save(variant_name(i), perturb(proto, args.noise, split_seed(args.seed, {2, i})));

  std::ostringstream m;
  write_manifest(m, manifest);
  write_file(dir / "manifest.csv", m.str());

  Json files = Json::array();
  for (const auto &e : manifest)
    files.push_back(e.path.generic_string());
  emit_json(out, Json{{"out", dir.generic_string()},
                      {"manifest", "manifest.csv"},
                      {"label", label},
                      {"files", files}});
  return kOk;
}

// ---------------------------------------------------------------- entry

/// Parses argv and runs one subcommand. Payload goes to out, diagnostics to err.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"qwalk: graph similarity from continuous-time quantum walks"};
  app.require_subcommand(1);

  SimArgs sim;
  auto *sim_cmd = app.add_subcommand("sim", "divergence between two graphs");
  sim_cmd->add_option("A", sim.a, "first graph")->required();
  sim_cmd->add_option("B", sim.b, "second graph")->required();
  add_walk_options(sim_cmd, sim.walk, true);

  MatchArgs match;
  auto *match_cmd = app.add_subcommand("match", "node-pair divergences and optimal assignment");
  match_cmd->add_option("A", match.a, "first graph")->required();
  match_cmd->add_option("B", match.b, "second graph")->required();
  match_cmd->add_option("--times", match.times, "comma-separated finite horizons")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  match_cmd->add_option("--cost", match.cost, "cost derived from the divergence")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, CostTransform>{{"one-minus-qjsd", CostTransform::OneMinusQjsd},
                                               {"raw", CostTransform::RawQjsd}},
          CLI::ignore_case));
  match_cmd->add_option("--pair-topology", match.topology, "inter-edges per node pair")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, PairTopology>{{"single", PairTopology::Single},
                                              {"anchored", PairTopology::Anchored}},
          CLI::ignore_case));
  match_cmd->add_option("--anchor-scale", match.anchor_scale, "anchored pair weight factor")
      ->check(CLI::PositiveNumber);
  add_walk_options(match_cmd, match.walk, true);

  NoiseArgs noise;
  noise.walk.format = OutputFormat::Csv;
  auto *noise_cmd = app.add_subcommand("noise-curve", "divergence against edge-flip noise");
  noise_cmd->add_option("G", noise.graph, "graph")->required();
  noise_cmd->add_option("--max-k", noise.max_k, "largest number of edge flips");
  noise_cmd->add_option("--trials", noise.trials, "noisy copies per k");
  noise_cmd->add_option("--seed", noise.seed, "random seed");
  add_walk_options(noise_cmd, noise.walk, false);

  ClassifyArgs cls;
  auto *cls_cmd = app.add_subcommand("classify", "kNN train/test evaluation");
  cls_cmd->add_option("manifests", cls.manifests, "manifest CSV files (path,label)")->required();
  cls_cmd->add_option("--k", cls.k, "neighbour count");
  cls_cmd->add_option("--split", cls.split, "training fraction in (0, 1)");
  cls_cmd->add_option("--seed", cls.seed, "random seed");
  cls_cmd->add_option("--metric", cls.metric, "graph distance")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, DistanceMetric>{{"xor", DistanceMetric::Xor},
                                                {"weighted", DistanceMetric::Weighted},
                                                {"qjsd", DistanceMetric::Qjsd}},
          CLI::ignore_case));
  cls_cmd->add_option("--confusion-csv", cls.confusion_csv, "write the confusion matrix here");
  add_walk_options(cls_cmd, cls.walk, false);

  GenArgs gen;
  auto *gen_cmd = app.add_subcommand("gen", "synthetic prototype and noisy variants");
  gen_cmd->add_option("--n", gen.n, "node count")->required();
  gen_cmd->add_option("--p", gen.p, "edge probability");
  gen_cmd->add_option("--noise", gen.noise, "edge flips per variant");
  gen_cmd->add_option("--count", gen.count, "number of variants");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out_dir, "output directory")->required();
  gen_cmd->add_option("--label", gen.label, "class label (default n<N>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*sim_cmd)
      return cmd_sim(sim, out);
    if (*match_cmd)
      return cmd_match(match, out);
    if (*noise_cmd)
      return cmd_noise_curve(noise, out);
    if (*cls_cmd)
      return cmd_classify(cls, out, err);
    if (*gen_cmd)
      return cmd_gen(gen, out);
  } catch (const InputError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const IoError &e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

} // namespace qwalk::cli
