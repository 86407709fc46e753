#include "pipeline.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "tvnet/dataset.hpp"
#include "tvnet/diagnostics.hpp"
#include "tvnet/draws_io.hpp"
#include "tvnet/error.hpp"
#include "tvnet/gibbs.hpp"
#include "tvnet/network.hpp"
#include "tvnet/roc.hpp"
#include "tvnet/screening.hpp"
#include "tvnet/simulate.hpp"
#include "tvnet/text_io.hpp"
#include "tvnet/tune.hpp"

namespace tvnet::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string input;
  std::string output_dir = ".";
  std::string truth;
  double lambda = 20.0;
  double k = 1.0;
  std::size_t iterations = 10000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string screen_budget = "none";
  double phi = 0.05;
  std::vector<double> phi_grid{0.01, 0.02, 0.05, 0.1, 0.15, 0.2};
  std::vector<std::string> targets;
  std::optional<double> fixed_rho;
  std::vector<double> lambda_grid{0.01, 0.1, 1, 10, 20, 50};
  std::vector<double> k_grid{1, 5, 20};
  // simulate
  SimulationSpec sim;
};

ModelHyperparams hyperparams(const Options& o) {
  ModelHyperparams hp{o.lambda, o.k};
  hp.validate();
  return hp;
}

SamplerConfig sampler_config(const Options& o) {
  SamplerConfig cfg;
  cfg.iterations = o.iterations;
  cfg.burn_in = o.burn_in;
  cfg.thin = o.thin;
  cfg.seed = o.seed;
  cfg.fixed_rho = o.fixed_rho;
  cfg.validate();
  return cfg;
}

fs::path output_dir(const Options& o) {
  fs::path dir(o.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIoError, "cannot create output directory: " + ec.message(), "output-dir");
  return dir;
}

void require_input(const Options& o) {
  require(!o.input.empty(), ErrorKind::kValidationError, "--input is required", "input");
  require(fs::exists(o.input), ErrorKind::kIoError, "input does not exist: " + o.input, "input");
}

std::vector<std::size_t> resolve_targets(const Options& o, const std::vector<std::string>& nodes) {
  std::vector<std::size_t> out;
  if (o.targets.empty()) {
    for (std::size_t i = 0; i < nodes.size(); ++i) out.push_back(i);
    return out;
  }
  for (const auto& name : o.targets) {
    auto it = std::find(nodes.begin(), nodes.end(), name);
    require(it != nodes.end(), ErrorKind::kValidationError, "unknown target node: " + name, "targets");
    out.push_back(static_cast<std::size_t>(it - nodes.begin()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// nullopt: no screening; 0 stands for the automatic budget.
std::optional<std::size_t> parse_budget(const std::string& s) {
  if (s == "none") return std::nullopt;
  if (s == "auto") return 0;
  const long long v = text::parse_int(s, "screen-budget");
  require(v > 0, ErrorKind::kValidationError, "screen budget must be positive, 'auto' or 'none'",
          "screen-budget");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> predictors_for(const PseudoTimeDataset& ds, std::size_t target,
                                        std::optional<std::size_t> budget) {
  if (!budget) {
    std::vector<std::size_t> all;
    for (std::size_t j = 0; j < ds.num_nodes(); ++j)
      if (j != target) all.push_back(j);
    return all;
  }
  auto chosen = holp_screen(ds, target, *budget == 0 ? std::nullopt : budget);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

// Runs task(i) for i in [0, n) on `workers` threads. Returns the failure of
// each task, if any.
std::vector<std::exception_ptr> run_pool(std::size_t n, std::size_t workers,
                                         const std::function<void(std::size_t)>& task) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t count = std::max<std::size_t>(1, std::min(workers, n));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return errors;
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void write_nodes(const std::vector<std::string>& nodes, const fs::path& path) {
  std::ostringstream out;
  out << "index,name\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) out << i << ',' << nodes[i] << '\n';
  text::write_file_atomic(path, out.str());
}

std::vector<std::string> read_nodes(const fs::path& path) {
  require(fs::exists(path), ErrorKind::kIoError, "missing node list " + path.string(), "input");
  const auto lines = text::read_lines(path);
  require(!lines.empty() && text::trim(lines[0]) == "index,name", ErrorKind::kFormatError,
          "node list must start with 'index,name'", path.string());
  std::vector<std::string> nodes;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (text::trim(lines[r]).empty()) continue;
    const auto cells = text::split(lines[r], ',');
    require(cells.size() == 2, ErrorKind::kFormatError, "node list rows need two fields", path.string());
    require(text::parse_int(cells[0], "index") == static_cast<long long>(nodes.size()), ErrorKind::kFormatError,
            "node list indices must be 0, 1, ...", path.string());
    nodes.emplace_back(text::trim(cells[1]));
  }
  return nodes;
}

std::vector<fs::path> files_with_suffix(const fs::path& dir, const std::string& suffix) {
  require(fs::is_directory(dir), ErrorKind::kIoError, "missing directory " + dir.string(), "input");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LocalFitSummary> read_summaries(const fs::path& fit_dir) {
  std::vector<LocalFitSummary> out;
  for (const auto& f : files_with_suffix(fit_dir / "summaries", ".summary.csv")) out.push_back(load_summary(f));
  require(!out.empty(), ErrorKind::kValidationError, "no summaries found under " + fit_dir.string(), "input");
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.target < y.target; });
  return out;
}

// ---- commands --------------------------------------------------------------

int cmd_simulate(const Options& o, std::ostream& out) {
  SimulationSpec spec = o.sim;
  spec.seed = o.seed;
  spec.keep = spec.n_t;
  spec.validate();
  const auto dir = output_dir(o);
  const auto [ds, truth] = simulate_dataset(spec);
  save_dataset(ds, dir / "data.csv");
  save_ground_truth(truth, dir / "truth.csv");
  out << "simulated " << ds.num_samples() << " samples of " << ds.num_nodes() << " nodes over "
      << ds.num_times() << " times into " << dir.string() << '\n';
  return 0;
}

int cmd_screen(const Options& o, std::ostream& out) {
  require_input(o);
  const auto ds = standardize(load_dataset(o.input));
  auto budget = parse_budget(o.screen_budget == "none" ? "auto" : o.screen_budget);
  const auto targets = resolve_targets(o, ds.node_names());
  const auto dir = output_dir(o);
  std::ostringstream csv;
  csv << "target,rank,predictor,score\n";
  for (std::size_t target : targets) {
    const auto scores = holp_scores(ds, target);
    const auto chosen = holp_screen(ds, target, *budget == 0 ? std::nullopt : budget);
    for (std::size_t r = 0; r < chosen.size(); ++r) {
      csv << ds.node_names()[target] << ',' << r + 1 << ',' << ds.node_names()[chosen[r]] << ','
          << text::format_double(scores[chosen[r]]) << '\n';
    }
  }
  text::write_file_atomic(dir / "screen.csv", csv.str());
  out << "screened " << targets.size() << " targets into " << (dir / "screen.csv").string() << '\n';
  return 0;
}

int cmd_fit(const Options& o, std::ostream& out) {
  require_input(o);
  const auto hp = hyperparams(o);
  const auto cfg = sampler_config(o);
  require(o.workers >= 1, ErrorKind::kValidationError, "workers must be at least 1", "workers");
  require(cfg.retained() >= 2, ErrorKind::kValidationError, "fewer than two retained draws", "iterations");
  const auto budget = parse_budget(o.screen_budget);
  const auto ds = standardize(load_dataset(o.input));
  const auto targets = resolve_targets(o, ds.node_names());
  const auto dir = output_dir(o);
  fs::create_directories(dir / "draws");
  fs::create_directories(dir / "summaries");
  write_nodes(ds.node_names(), dir / "nodes.csv");

  const auto errors = run_pool(targets.size(), o.workers, [&](std::size_t i) {
    const std::size_t target = targets[i];
    const auto& name = ds.node_names()[target];
    const auto draws = gibbs_fit(ds, target, predictors_for(ds, target, budget), hp, cfg);
    save_draws(draws, dir / "draws" / (name + ".draws"));
    save_summary(summarize(draws), ds.node_names(), dir / "summaries" / (name + ".summary.csv"));
  });
  std::size_t failed = 0;
  for (const auto& e : errors) failed += e ? 1 : 0;
  out << "fitted " << targets.size() - failed << " of " << targets.size() << " targets into " << dir.string()
      << '\n';
  rethrow_first(errors);
  return 0;
}

int cmd_assemble(const Options& o, std::ostream& out) {
  require_input(o);
  require(std::isfinite(o.phi) && o.phi >= 0.0, ErrorKind::kValidationError, "phi must be non-negative", "phi");
  const fs::path fit_dir(o.input);
  const auto nodes = read_nodes(fit_dir / "nodes.csv");
  const auto summaries = read_summaries(fit_dir);
  const auto net = assemble_network(summaries, nodes, o.phi);
  const auto dir = output_dir(o);
  export_edges(net, dir / "edges.csv");
  out << net.edges.size() << " edges at phi=" << text::format_double(o.phi) << " written to "
      << (dir / "edges.csv").string() << '\n';
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  require_input(o);
  require(!o.phi_grid.empty(), ErrorKind::kValidationError, "phi grid is empty", "phi-grid");
  for (double phi : o.phi_grid)
    require(std::isfinite(phi) && phi >= 0.0, ErrorKind::kValidationError, "phi must be non-negative", "phi-grid");
  const fs::path fit_dir(o.input);
  const auto nodes = read_nodes(fit_dir / "nodes.csv");
  const auto summaries = read_summaries(fit_dir);
  const auto counts = sweep_threshold(summaries, nodes, o.phi_grid);
  std::ostringstream csv;
  csv << "phi,edges\n";
  for (std::size_t g = 0; g < counts.size(); ++g) csv << text::format_double(o.phi_grid[g]) << ',' << counts[g] << '\n';
  const auto dir = output_dir(o);
  text::write_file_atomic(dir / "sweep.csv", csv.str());
  out << csv.str();
  return 0;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
  require_input(o);
  require(!o.truth.empty(), ErrorKind::kValidationError, "--truth is required", "truth");
  const fs::path fit_dir(o.input);
  const auto nodes = read_nodes(fit_dir / "nodes.csv");
  const auto truth = load_ground_truth(o.truth);
  require(truth.node_names == nodes, ErrorKind::kValidationError, "truth and fit disagree on the node list",
          "truth");
  const auto summaries = read_summaries(fit_dir);
  const auto curve = roc_curve(truth, summaries);
  const double area = auc(curve);
  const auto dir = output_dir(o);
  std::ostringstream csv;
  csv << "fpr,tpr\n";
  for (const auto& pt : curve) csv << text::format_double(pt.fpr) << ',' << text::format_double(pt.tpr) << '\n';
  text::write_file_atomic(dir / "roc.csv", csv.str());
  text::write_file_atomic(dir / "auc.csv", "auc\n" + text::format_double(area) + "\n");
  out << "auc=" << text::format_double(area) << '\n';
  return 0;
}

void diagnose_series(std::ostringstream& csv, const std::string& target, const std::string& parameter,
                     const Eigen::VectorXd& series) {
  std::span<const double> chain(series.data(), static_cast<std::size_t>(series.size()));
  csv << target << ',' << parameter << ',';
  try {
    const auto g = geweke_test(chain);
    const auto h = heidelberger_test(chain);
    csv << text::format_double(g.z) << ',' << text::format_double(g.p) << ','
        << text::format_double(h.stationarity_p) << ',' << (h.stationary ? 1 : 0) << ','
        << (h.halfwidth_pass ? 1 : 0) << ",\n";
  } catch (const Error& e) {
    csv << "nan,nan,nan,0,0," << to_string(e.kind()) << '\n';
  }
}

int cmd_diagnose(const Options& o, std::ostream& out) {
  require_input(o);
  const fs::path fit_dir(o.input);
  std::ostringstream csv;
  csv << "target,parameter,geweke_z,geweke_p,heidel_p,stationary,halfwidth_pass,note\n";
  const auto files = files_with_suffix(fit_dir / "draws", ".draws");
  require(!files.empty(), ErrorKind::kValidationError, "no draw files found", "input");
  for (const auto& f : files) {
    const auto d = load_draws(f);
    const auto& name = d.meta.target_name;
    diagnose_series(csv, name, "a", d.a);
    diagnose_series(csv, name, "tau", d.tau);
    for (std::size_t j = 0; j < d.num_predictors(); ++j) {
      const auto& pred = d.meta.predictor_names[j];
      if (!d.meta.config.fixed_rho) diagnose_series(csv, name, "rho:" + pred, d.rho.col(static_cast<Eigen::Index>(j)));
      diagnose_series(csv, name, "nu:" + pred, d.nu.col(static_cast<Eigen::Index>(j)));
      for (std::size_t t = 0; t < d.meta.num_times; ++t)
        diagnose_series(csv, name, "b:" + std::to_string(t + 1) + ":" + pred, d.b_series(t, j));
    }
  }
  const auto dir = output_dir(o);
  text::write_file_atomic(dir / "diagnostics.csv", csv.str());
  out << "diagnostics for " << files.size() << " targets written to " << (dir / "diagnostics.csv").string() << '\n';
  return 0;
}

int cmd_tune(const Options& o, std::ostream& out) {
  require_input(o);
  // Short chains: a tenth of the production length.
  Options shortened = o;
  shortened.iterations = std::max<std::size_t>(o.iterations / 10, 2);
  shortened.burn_in = o.burn_in / 10;
  const auto cfg = sampler_config(shortened);
  const auto budget = parse_budget(o.screen_budget);
  const auto ds = standardize(load_dataset(o.input));
  const auto targets = resolve_targets(o, ds.node_names());
  PredictorSets sets;
  if (budget)
    for (std::size_t t : targets) sets.push_back(predictors_for(ds, t, budget));
  const auto result = grid_search(ds, targets, o.lambda_grid, o.k_grid, cfg, sets);
  std::ostringstream csv;
  csv << "lambda,k,target,mean_log_lik,failed\n";
  for (const auto& row : result.table) {
    csv << text::format_double(row.lambda) << ',' << text::format_double(row.k) << ','
        << ds.node_names()[row.target] << ',' << (row.failed ? "nan" : text::format_double(row.mean_log_lik))
        << ',' << (row.failed ? 1 : 0) << '\n';
  }
  const auto dir = output_dir(o);
  text::write_file_atomic(dir / "tune.csv", csv.str());
  text::write_file_atomic(dir / "tune_best.csv", "lambda,k,score\n" + text::format_double(result.best_lambda) + ',' +
                                                     text::format_double(result.best_k) + ',' +
                                                     text::format_double(result.best_score) + '\n');
  out << "best lambda=" << text::format_double(result.best_lambda) << " k=" << text::format_double(result.best_k)
      << '\n';
  return 0;
}

void report(std::ostream& err, const std::string& command, std::string_view kind, const std::string& field,
            const std::string& message) {
  nlohmann::json j;
  j["status"] = "error";
  j["command"] = command;
  j["kind"] = kind;
  j["field"] = field;
  j["message"] = message;
  err << j.dump() << '\n';
}

// Options shared by several commands.
void add_input(CLI::App* sub, Options& o) { sub->add_option("--input", o.input, "Input file or fit directory"); }
void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--output-dir", o.output_dir, "Directory for outputs")->capture_default_str();
}
void add_targets(CLI::App* sub, Options& o) {
  sub->add_option("--targets", o.targets, "Comma-separated target node names (default: all)")->delimiter(',');
}
void add_sampler(CLI::App* sub, Options& o) {
  sub->add_option("--lambda", o.lambda, "Laplace sparsity rate")->capture_default_str();
  sub->add_option("--k", o.k, "Rate of the correlation prior")->capture_default_str();
  sub->add_option("--iterations", o.iterations, "Total sweeps including burn-in")->capture_default_str();
  sub->add_option("--burn-in", o.burn_in, "Discarded leading sweeps")->capture_default_str();
  sub->add_option("--thin", o.thin, "Keep every n-th sweep")->capture_default_str();
  sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sub->add_option("--fixed-rho", o.fixed_rho, "Hold every lag-one correlation at this value");
  sub->add_option("--screen-budget", o.screen_budget, "Predictors per target: none, auto or a count")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Time-varying network inference from pseudo-time grouped data", "tvnet"};
  app.set_config("--config", "", "INI configuration file with one section per command");
  app.require_subcommand(1);
  app.fallthrough();

  auto* simulate = app.add_subcommand("simulate", "Simulate a dataset and its ground truth");
  add_output(simulate, o);
  simulate->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  simulate->add_option("--T", o.sim.T, "Number of pseudo-times")->capture_default_str();
  simulate->add_option("--n-t", o.sim.n_t, "Samples per time")->capture_default_str();
  simulate->add_option("--p-prime", o.sim.p_prime, "Nodes per archetype")->capture_default_str();
  simulate->add_option("--noise-sd", o.sim.noise_sd, "Noise standard deviation")->capture_default_str();
  simulate->add_option("--chain-length", o.sim.R, "Simulation chain length per time")->capture_default_str();
  simulate->add_option("--chain-thin", o.sim.thin, "Simulation chain thinning")->capture_default_str();
  simulate->add_option("--omega", o.sim.omega, "Dropout strength (no dropout when absent)");

  auto* screen = app.add_subcommand("screen", "Rank candidate predictors per target");
  add_input(screen, o);
  add_output(screen, o);
  add_targets(screen, o);
  screen->add_option("--screen-budget", o.screen_budget, "Predictors per target: auto or a count");

  auto* fit = app.add_subcommand("fit", "Sample the posterior of every target");
  add_input(fit, o);
  add_output(fit, o);
  add_targets(fit, o);
  add_sampler(fit, o);
  fit->add_option("--workers", o.workers, "Worker threads")->capture_default_str();

  auto* assemble = app.add_subcommand("assemble", "Build the thresholded network from fit summaries");
  add_input(assemble, o);
  add_output(assemble, o);
  assemble->add_option("--phi", o.phi, "Edge threshold")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep-threshold", "Edge counts over a grid of thresholds");
  add_input(sweep, o);
  add_output(sweep, o);
  sweep->add_option("--phi-grid", o.phi_grid, "Comma-separated thresholds")->delimiter(',');

  auto* evaluate = app.add_subcommand("evaluate", "ROC and AUC of a fit against ground truth");
  add_input(evaluate, o);
  add_output(evaluate, o);
  evaluate->add_option("--truth", o.truth, "Ground truth CSV written by simulate");

  auto* diagnose = app.add_subcommand("diagnose", "Geweke and Heidelberger-Welch tests of every chain");
  add_input(diagnose, o);
  add_output(diagnose, o);

  auto* tune = app.add_subcommand("tune", "Grid search over lambda and k with short chains");
  add_input(tune, o);
  add_output(tune, o);
  add_targets(tune, o);
  add_sampler(tune, o);
  tune->add_option("--lambda-grid", o.lambda_grid, "Comma-separated lambda values")->delimiter(',');
  tune->add_option("--k-grid", o.k_grid, "Comma-separated k values")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, args.empty() ? "" : args.front(), "usage-error", "", e.what());
    return 2;
  }

  const auto& chosen = app.get_subcommands();
  const std::string command = chosen.empty() ? "" : chosen.front()->get_name();
  try {
    if (command == "simulate") return cmd_simulate(o, out);
    if (command == "screen") return cmd_screen(o, out);
    if (command == "fit") return cmd_fit(o, out);
    if (command == "assemble") return cmd_assemble(o, out);
    if (command == "sweep-threshold") return cmd_sweep(o, out);
    if (command == "evaluate") return cmd_evaluate(o, out);
    if (command == "diagnose") return cmd_diagnose(o, out);
    if (command == "tune") return cmd_tune(o, out);
    report(err, command, "usage-error", "", "unknown command");
    return 2;
  } catch (const Error& e) {
    report(err, command, to_string(e.kind()), e.field(), e.what());
  } catch (const fs::filesystem_error& e) {
    report(err, command, to_string(ErrorKind::kIoError), e.path1().string(), e.what());
  } catch (const std::exception& e) {
    report(err, command, "internal-error", "", e.what());
  }
  return 1;
}

}  // namespace tvnet::cli
