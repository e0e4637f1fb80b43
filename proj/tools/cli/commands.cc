#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "dnml/errors.hpp"
#include "dnml/io.hpp"
#include "dnml/sbm_sampler.hpp"
#include "dnml/selector.hpp"
#include "table.hpp"

namespace dnml::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double seconds(std::int64_t ns) { return static_cast<double>(ns) * 1e-9; }

std::int64_t as_cell(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// --seed if given, otherwise a fresh one that is echoed so the run can be
// repeated.
Seed resolve_seed(const std::optional<std::uint64_t>& flag, std::ostream& err) {
  if (flag) return Seed{*flag};
  std::random_device device;
  const std::uint64_t value =
      ((static_cast<std::uint64_t>(device()) << 32) | device()) & 0x7fffffffffffffffULL;
  err << "seed: " << value << " (generated; pass --seed " << value << " to reproduce)\n";
  return Seed{value};
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  if (names.empty()) throw UsageError("--method needs at least one method");
  std::vector<Method> methods;
  for (const std::string& name : names) {
    Method m;
    try {
      m = parse_method(name);
    } catch (const DomainError&) {
      throw UsageError("unknown method '" + name + "' (expected dnml, cbic or il)");
    }
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }
  return methods;
}

std::string join_methods(const std::vector<Method>& methods) {
  std::string s;
  for (const Method m : methods) {
    if (!s.empty()) s += ';';
    s += method_name(m);
  }
  return s;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < count; i = next++) fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
          next = count;
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void emit(const std::vector<Table>& tables, bool json, const std::string& path,
          std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw InputError("cannot write " + path);
    sink = &file;
  }
  if (json) {
    if (tables.size() == 1) {
      *sink << tables.front().to_json().dump(2) << '\n';
    } else {
      auto doc = nlohmann::ordered_json::array();
      for (const Table& t : tables) doc.push_back(t.to_json());
      *sink << doc.dump(2) << '\n';
    }
  } else {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i) *sink << '\n';
      tables[i].write_csv(*sink);
    }
  }
  if (!sink->good()) throw InputError("error writing " + (path.empty() ? "output" : path));
}

void check_probability(double p, const std::string& name) {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError(name + " must lie in [0, 1]");
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string input;
  std::string format = "edgelist";
  int indexing = 1;
  std::optional<int> kmax;
  std::vector<std::string> methods = {"dnml"};
  double epsilon = 0.5;
  double cbic_lambda = 1.0;
  std::optional<std::uint64_t> seed;
  int restarts = 10;
  unsigned threads = 1;
  std::string output;
  bool json = false;
};

void add_estimate(CLI::App& app, EstimateArgs& a) {
  auto* cmd = app.add_subcommand("estimate", "Estimate the number of communities of a graph");
  cmd->add_option("-i,--input", a.input, "Edge list or adjacency CSV")->required();
  cmd->add_option("--format", a.format, "Input format")
      ->check(CLI::IsMember({"edgelist", "adjcsv"}))
      ->capture_default_str();
  cmd->add_option("--indexing", a.indexing, "First node id in an edge list")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  cmd->add_option("--kmax", a.kmax, "Largest candidate k (default min(n, 10))")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--method", a.methods, "dnml, cbic, il (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--epsilon", a.epsilon, "Penalty constant epsilon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--cbic-lambda", a.cbic_lambda, "CBIC penalty scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "Seed for k-means restarts");
  cmd->add_option("--restarts", a.restarts, "k-means restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", a.threads, "Worker threads for the k sweep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("-o,--output", a.output, "Write the table here instead of stdout");
  cmd->add_flag("--json", a.json, "JSON instead of CSV");
}

LoadedGraph load_input(const EstimateArgs& a) {
  try {
    if (a.format == "adjcsv") return load_adjacency_csv(a.input);
    EdgeListOptions options;
    options.indexing = a.indexing;
    return load_edge_list(a.input, options);
  } catch (const std::exception& e) {
    throw InputError(a.input + ": " + e.what());
  }
}

int run_estimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<Method> methods = parse_methods(a.methods);
  const LoadedGraph loaded = load_input(a);
  const Graph& g = loaded.graph;
  if (loaded.report.self_loops_dropped) {
    err << "warning: dropped " << loaded.report.self_loops_dropped << " self-loop(s)\n";
  }
  if (loaded.report.duplicates_dropped) {
    err << "warning: dropped " << loaded.report.duplicates_dropped << " duplicate edge(s)\n";
  }
  if (a.kmax && static_cast<std::size_t>(*a.kmax) > g.num_nodes()) {
    throw UsageError("--kmax " + std::to_string(*a.kmax) + " exceeds the node count " +
                     std::to_string(g.num_nodes()));
  }

  SelectorOptions options;
  options.k_max = a.kmax;
  options.penalty.epsilon = a.epsilon;
  options.penalty.cbic_lambda = a.cbic_lambda;
  options.detector.seed = resolve_seed(a.seed, err);
  options.detector.kmeans_restarts = a.restarts;
  options.threads = a.threads;
  const std::vector<SelectionResult> results = select_k(g, methods, options);

  Table table;
  table.schema = "dnml-estimate/1";
  table.metadata = {{"input", std::filesystem::path(a.input).filename().string()},
                    {"n", static_cast<std::int64_t>(g.num_nodes())},
                    {"edges", static_cast<std::int64_t>(g.num_edges())},
                    {"k_max", static_cast<std::int64_t>(results.front().k_max)},
                    {"epsilon", a.epsilon},
                    {"seed", as_cell(options.detector.seed.value)}};
  for (const SelectionResult& r : results) {
    const std::string key =
        results.size() == 1 ? "k_hat" : "k_hat_" + std::string(method_name(r.method));
    table.metadata.emplace_back(key, static_cast<std::int64_t>(r.k_hat));
  }
  table.columns = {"method", "k", "communities_used", "log_score", "penalty", "penalized",
                   "selected", "failure"};
  for (const SelectionResult& r : results) {
    for (const CandidateRecord& c : r.candidates) {
      const double nan = std::nan("");
      table.rows.push_back({std::string(method_name(r.method)),
                            static_cast<std::int64_t>(c.k),
                            static_cast<std::int64_t>(c.labels ? c.labels->occupied() : 0),
                            c.ok() ? c.score.log_score : nan, c.ok() ? c.score.penalty : nan,
                            c.ok() ? c.score.penalized : nan,
                            static_cast<std::int64_t>(c.k == r.k_hat), c.failure});
    }
    err << "k_hat (" << method_name(r.method) << ") = " << r.k_hat << '\n';
  }
  emit({table}, a.json, a.output, out);
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario;
  std::vector<int> n_grid;
  std::optional<int> n;
  std::vector<double> b_grid;
  std::vector<double> rho_grid;
  int k0 = 5;
  std::string pi = "balanced";
  std::optional<double> a;
  std::optional<double> b;
  double s_within = 5.0;
  double s_between = 1.0;
  int replications = 20;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> methods = {"dnml", "cbic", "il"};
  double epsilon = 0.5;
  double cbic_lambda = 1.0;
  int kmax = kDefaultMaxCommunities;
  int restarts = 10;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string output;
  std::string summary;
  bool timings = false;
  bool json = false;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
  auto* cmd = app.add_subcommand("simulate", "Run SBM simulation scenarios");
  cmd->add_option("--scenario", a.scenario, "vary-n, vary-b, sparsity or custom")
      ->required()
      ->check(CLI::IsMember({"vary-n", "vary-b", "sparsity", "custom"}));
  cmd->add_option("--n-grid", a.n_grid, "Node counts (vary-n, custom)")->delimiter(',');
  cmd->add_option("--n", a.n, "Node count (vary-b, sparsity)")->check(CLI::PositiveNumber);
  cmd->add_option("--b-grid", a.b_grid, "Between-community probabilities (vary-b, custom)")
      ->delimiter(',');
  cmd->add_option("--rho-grid", a.rho_grid, "Sparsity scales (sparsity)")->delimiter(',');
  cmd->add_option("--k0", a.k0, "True number of communities")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--pi", a.pi, "balanced, unbalanced, or comma-separated probabilities")
      ->capture_default_str();
  cmd->add_option("--a", a.a, "Within-community probability");
  cmd->add_option("--b", a.b, "Between-community probability (vary-n)");
  cmd->add_option("--s-within", a.s_within, "Sparsity shape, diagonal")->capture_default_str();
  cmd->add_option("--s-between", a.s_between, "Sparsity shape, off-diagonal")
      ->capture_default_str();
  cmd->add_option("-r,--replications", a.replications, "Replications per setting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "Base seed");
  cmd->add_option("--methods", a.methods, "Criteria to evaluate")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--epsilon", a.epsilon, "Penalty constant epsilon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--cbic-lambda", a.cbic_lambda, "CBIC penalty scale")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--kmax", a.kmax, "Largest candidate k")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--restarts", a.restarts, "k-means restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", a.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("-o,--output", a.output, "Per-replication table");
  cmd->add_option("--summary", a.summary, "Per-setting mean k_hat table");
  cmd->add_flag("--timings", a.timings, "Add wall-time columns (not reproducible)");
  cmd->add_flag("--json", a.json, "JSON instead of CSV");
}

struct Setting {
  std::size_t n = 0;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> rho;
};

std::vector<double> resolve_pi(const std::string& spec, int k0) {
  if (spec == "balanced") return SBMParams::balanced(k0);
  if (spec == "unbalanced") {
    if (k0 == 1) return {1.0};
    std::vector<double> pi(static_cast<std::size_t>(k0), 0.4 / (k0 - 1));
    pi[0] = 0.6;
    return pi;
  }
  std::vector<double> pi;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      pi.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--pi entry '" + item + "' is not a number");
    }
  }
  if (static_cast<int>(pi.size()) != k0) {
    throw UsageError("--pi has " + std::to_string(pi.size()) + " entries but --k0 is " +
                     std::to_string(k0));
  }
  try {
    validate_pi(pi);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--pi: ") + e.what());
  }
  return pi;
}

std::vector<Setting> build_settings(const SimulateArgs& a, bool unbalanced) {
  const auto forbid = [&](bool given, const char* flag) {
    if (given) throw UsageError(std::string(flag) + " does not apply to --scenario " + a.scenario);
  };
  const auto nonempty = [](const auto& grid, const char* flag) {
    if (grid.empty()) throw UsageError(std::string(flag) + " is empty");
  };
  std::vector<Setting> settings;
  if (a.scenario == "vary-n") {
    forbid(a.n.has_value(), "--n");
    forbid(!a.b_grid.empty(), "--b-grid");
    forbid(!a.rho_grid.empty(), "--rho-grid");
    const std::vector<int> grid =
        a.n_grid.empty() ? std::vector<int>{100, 150, 200, 250, 300, 350} : a.n_grid;
    for (const int n : grid) settings.push_back({static_cast<std::size_t>(n), a.a.value_or(0.8),
                                                 a.b.value_or(0.3), std::nullopt});
  } else if (a.scenario == "vary-b") {
    forbid(!a.n_grid.empty(), "--n-grid");
    forbid(a.b.has_value(), "--b");
    forbid(!a.rho_grid.empty(), "--rho-grid");
    const std::vector<double> grid =
        a.b_grid.empty() ? std::vector<double>{0.3, 0.4, 0.5, 0.6, 0.7, 0.8} : a.b_grid;
    const double within = a.a.value_or(unbalanced ? 0.8 : 0.9);
    for (const double b : grid) {
      settings.push_back({static_cast<std::size_t>(a.n.value_or(200)), within, b, std::nullopt});
    }
  } else if (a.scenario == "sparsity") {
    forbid(!a.n_grid.empty(), "--n-grid");
    forbid(!a.b_grid.empty(), "--b-grid");
    forbid(a.a.has_value(), "--a");
    forbid(a.b.has_value(), "--b");
    const std::vector<double> grid =
        a.rho_grid.empty() ? std::vector<double>{0.05, 0.1, 0.15, 0.2} : a.rho_grid;
    for (const double rho : grid) {
      settings.push_back({static_cast<std::size_t>(a.n.value_or(300)), a.s_within * rho,
                          a.s_between * rho, rho});
    }
  } else {
    forbid(!a.rho_grid.empty(), "--rho-grid");
    forbid(a.n.has_value(), "--n");
    nonempty(a.n_grid, "--n-grid");
    const std::vector<double> grid = a.b_grid.empty() ? std::vector<double>{a.b.value_or(0.3)}
                                                      : a.b_grid;
    if (!a.b_grid.empty() && a.b) throw UsageError("give either --b or --b-grid, not both");
    for (const int n : a.n_grid) {
      for (const double b : grid) {
        settings.push_back({static_cast<std::size_t>(n), a.a.value_or(0.8), b, std::nullopt});
      }
    }
  }
  nonempty(settings, "the scenario grid");
  for (const Setting& s : settings) {
    if (s.n < static_cast<std::size_t>(a.kmax)) {
      throw UsageError("n = " + std::to_string(s.n) + " is smaller than --kmax " +
                       std::to_string(a.kmax));
    }
    check_probability(s.a, "within-community probability");
    check_probability(s.b, "between-community probability");
    if (s.rho && !(*s.rho > 0.0 && *s.rho <= 1.0)) throw UsageError("rho must lie in (0, 1]");
  }
  return settings;
}

SBMParams setting_params(const Setting& s, const std::vector<double>& pi, const SimulateArgs& a) {
  if (!s.rho) return SBMParams::planted(pi, s.a, s.b);
  const int k = static_cast<int>(pi.size());
  Eigen::MatrixXd shape = Eigen::MatrixXd::Constant(k, k, a.s_between);
  shape.diagonal().setConstant(a.s_within);
  return SBMParams::sparse(pi, *s.rho, shape);
}

int run_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<Method> methods = parse_methods(a.methods);
  const std::vector<double> pi = resolve_pi(a.pi, a.k0);
  const bool unbalanced = std::adjacent_find(pi.begin(), pi.end(), std::not_equal_to<>()) !=
                          pi.end();
  const std::vector<Setting> settings = build_settings(a, unbalanced);
  std::vector<SBMParams> params;
  for (const Setting& s : settings) {
    try {
      params.push_back(setting_params(s, pi, a));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  const Seed base = resolve_seed(a.seed, err);

  const std::size_t reps = static_cast<std::size_t>(a.replications);
  std::vector<std::vector<SelectionResult>> results(settings.size() * reps);
  parallel_for(results.size(), a.threads, [&](std::size_t item) {
    const std::size_t s = item / reps;
    const Seed seed = derive_seed(base, item % reps);
    const SBMSample sample = sample_sbm(settings[s].n, params[s], seed);
    SelectorOptions options;
    options.k_max = a.kmax;
    options.penalty.epsilon = a.epsilon;
    options.penalty.cbic_lambda = a.cbic_lambda;
    options.detector.seed = seed;
    options.detector.kmeans_restarts = a.restarts;
    results[item] = select_k(sample.graph, methods, options);
  });

  const std::string pi_label =
      a.pi == "balanced" || a.pi == "unbalanced" ? a.pi : [&] {
        std::string s;
        for (const double p : pi) s += (s.empty() ? "" : ";") + format_double(p);
        return s;
      }();
  const std::vector<std::pair<std::string, Cell>> metadata = {
      {"scenario", a.scenario},
      {"seed", as_cell(base.value)},
      {"replications", static_cast<std::int64_t>(a.replications)},
      {"k_max", static_cast<std::int64_t>(a.kmax)},
      {"epsilon", a.epsilon},
      {"methods", join_methods(methods)}};
  const auto setting_cells = [&](const Setting& s) -> std::vector<Cell> {
    return {static_cast<std::int64_t>(s.n), static_cast<std::int64_t>(a.k0), pi_label, s.a, s.b,
            s.rho ? Cell{*s.rho} : Cell{std::string()}};
  };

  Table rows;
  rows.schema = "dnml-simulate/1";
  rows.metadata = metadata;
  rows.columns = {"setting", "n", "k0", "pi", "a", "b", "rho", "replication", "seed", "method",
                  "k_hat"};
  if (a.timings) {
    rows.columns.insert(rows.columns.end(), {"detection_s", "criterion_s"});
  }
  Table summary;
  summary.schema = "dnml-simulate-summary/1";
  summary.metadata = metadata;
  summary.columns = {"setting", "n", "k0", "pi", "a", "b", "rho", "method", "replications",
                     "mean_k_hat", "sd_k_hat", "frac_k0"};

  for (std::size_t s = 0; s < settings.size(); ++s) {
    const std::vector<Cell> common = setting_cells(settings[s]);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      double sum = 0.0;
      double sum_sq = 0.0;
      std::int64_t hits = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        const SelectionResult& res = results[s * reps + r][m];
        sum += res.k_hat;
        sum_sq += static_cast<double>(res.k_hat) * res.k_hat;
        hits += res.k_hat == a.k0;
      }
      const double mean = sum / static_cast<double>(reps);
      const double sd =
          reps > 1 ? std::sqrt(std::max(0.0, (sum_sq - reps * mean * mean) / (reps - 1))) : 0.0;
      std::vector<Cell> row = {static_cast<std::int64_t>(s)};
      row.insert(row.end(), common.begin(), common.end());
      row.insert(row.end(), {std::string(method_name(methods[m])),
                             static_cast<std::int64_t>(reps), mean, sd,
                             static_cast<double>(hits) / static_cast<double>(reps)});
      summary.rows.push_back(std::move(row));
    }
    for (std::size_t r = 0; r < reps; ++r) {
      for (const SelectionResult& res : results[s * reps + r]) {
        std::vector<Cell> row = {static_cast<std::int64_t>(s)};
        row.insert(row.end(), common.begin(), common.end());
        row.insert(row.end(), {static_cast<std::int64_t>(r), as_cell(derive_seed(base, r).value),
                               std::string(method_name(res.method)),
                               static_cast<std::int64_t>(res.k_hat)});
        if (a.timings) {
          row.insert(row.end(), {seconds(res.detection_ns), seconds(res.criterion_ns)});
        }
        rows.rows.push_back(std::move(row));
      }
    }
  }

  emit({rows}, a.json, a.output, out);
  if (!a.summary.empty()) {
    emit({summary}, a.json, a.summary, out);
  } else if (!a.output.empty()) {
    emit({summary}, a.json, "", out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<int> n_grid = {200, 400, 800};
  int kmax = kDefaultMaxCommunities;
  int k0 = 5;
  double a = 0.8;
  double b = 0.3;
  int repeats = 3;
  std::optional<std::uint64_t> seed;
  std::string output;
  bool json = false;
};

void add_bench(CLI::App& app, BenchArgs& a) {
  auto* cmd = app.add_subcommand("bench", "Time detection and criterion phases across n");
  cmd->add_option("--n-grid", a.n_grid, "Node counts")->delimiter(',')->capture_default_str();
  cmd->add_option("--kmax", a.kmax, "Largest candidate k")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--k0", a.k0, "Planted communities")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--a", a.a, "Within-community probability")->capture_default_str();
  cmd->add_option("--b", a.b, "Between-community probability")->capture_default_str();
  cmd->add_option("--repeats", a.repeats, "Timed runs per n (median reported)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "Base seed");
  cmd->add_option("-o,--output", a.output, "Timing table");
  cmd->add_flag("--json", a.json, "JSON instead of CSV");
}

double median(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const std::size_t h = x.size() / 2;
  return x.size() % 2 ? x[h] : 0.5 * (x[h - 1] + x[h]);
}

int run_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n_grid.empty()) throw UsageError("--n-grid is empty");
  for (const int n : a.n_grid) {
    if (n < a.kmax) {
      throw UsageError("n = " + std::to_string(n) + " is smaller than --kmax " +
                       std::to_string(a.kmax));
    }
  }
  check_probability(a.a, "--a");
  check_probability(a.b, "--b");
  const Seed base = resolve_seed(a.seed, err);
  const SBMParams params = SBMParams::planted(SBMParams::balanced(a.k0), a.a, a.b);

  Table table;
  table.schema = "dnml-bench/1";
  table.metadata = {{"seed", as_cell(base.value)},
                    {"k_max", static_cast<std::int64_t>(a.kmax)},
                    {"k0", static_cast<std::int64_t>(a.k0)},
                    {"a", a.a},
                    {"b", a.b},
                    {"repeats", static_cast<std::int64_t>(a.repeats)}};
  table.columns = {"n", "edges", "k_hat", "detection_s", "criterion_s", "criterion_per_k_s",
                   "criterion_ratio"};
  double previous = std::nan("");
  for (std::size_t i = 0; i < a.n_grid.size(); ++i) {
    const auto n = static_cast<std::size_t>(a.n_grid[i]);
    const SBMSample sample = sample_sbm(n, params, derive_seed(base, i));
    SelectorOptions options;
    options.k_max = a.kmax;
    options.detector.seed = base;
    std::vector<double> detection;
    std::vector<double> criterion;
    int k_hat = 0;
    for (int rep = 0; rep < a.repeats; ++rep) {
      const SelectionResult r = select_k(sample.graph, Method::kDnml, options);
      detection.push_back(seconds(r.detection_ns));
      criterion.push_back(seconds(r.criterion_ns));
      k_hat = r.k_hat;
    }
    const double crit = median(criterion);
    table.rows.push_back({static_cast<std::int64_t>(n),
                          static_cast<std::int64_t>(sample.graph.num_edges()),
                          static_cast<std::int64_t>(k_hat), median(detection), crit,
                          crit / a.kmax, crit / previous});
    previous = crit;
  }
  emit({table}, a.json, a.output, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Estimate the number of communities in a stochastic block model", "dnml"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dnml 1.0");
  EstimateArgs estimate;
  SimulateArgs simulate;
  BenchArgs bench;
  add_estimate(app, estimate);
  add_simulate(app, simulate);
  add_bench(app, bench);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("estimate")) return run_estimate(estimate, out, err);
    if (app.got_subcommand("simulate")) return run_simulate(simulate, out, err);
    return run_bench(bench, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace dnml::cli
