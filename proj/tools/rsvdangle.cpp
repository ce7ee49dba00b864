// rsvdangle: generate test matrices, run bound-comparison experiments, the
// sample-size / power-iteration balance sweep, and standalone estimates.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsvdangle/balance.hpp"
#include "rsvdangle/config.hpp"
#include "rsvdangle/estimator.hpp"
#include "rsvdangle/harness.hpp"
#include "rsvdangle/matrix_market.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rsvdangle;

constexpr const char* kOutputEnv = "RSVDANGLE_OUTPUT_DIR";

// Flag beats environment beats config file.
fs::path resolve_output_dir(const std::optional<std::string>& flag, const std::string& configured) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kOutputEnv); env != nullptr && *env != '\0') return env;
  return configured;
}

// Whitespace-separated values; '#' starts a comment.
Spectrum read_spectrum(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw Error(path.string() + ":" + std::to_string(line_no) + ": not a number '" + token + "'");
      }
      values.push_back(v);
    }
  }
  if (values.empty()) throw Error(path.string() + ": no values");
  return Spectrum(std::move(values));
}

struct GenOptions {
  MatrixSpec spec;
  std::string out = "matrix.mtx";
};

void cmd_gen(const GenOptions& o) {
  if (is_loaded_data(o.spec)) throw Error("gen: generator must be synthetic");
  const PlantedMatrix pm = make_matrix(o.spec);
  const fs::path mtx = o.out;
  write_matrix_market(mtx, pm.a);
  fs::path meta = mtx;
  meta.replace_extension(".json");
  nlohmann::json doc;
  doc["schema_version"] = kConfigSchemaVersion;
  doc["generator"] = o.spec.generator;
  doc["descriptor"] = pm.descriptor;
  doc["rows"] = pm.a.rows();
  doc["cols"] = pm.a.cols();
  doc["declared_rank"] = pm.spectrum.declared_rank();
  doc["factors_computed"] = pm.factors_computed;
  doc["spectrum"] = std::vector<double>(pm.spectrum.values().begin(), pm.spectrum.values().end());
  std::ofstream out(meta);
  out << doc.dump(2) << '\n';
  if (!out) throw Error("cannot write " + meta.string());
  std::printf("wrote %s (%lld x %lld) and %s\n", mtx.string().c_str(),
              static_cast<long long>(pm.a.rows()), static_cast<long long>(pm.a.cols()),
              meta.string().c_str());
}

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> jobs;
  std::optional<std::string> output_dir;
};

void cmd_run(const RunOptions& o) {
  ExperimentConfig cfg = load_experiment_config(o.config);
  if (o.seed) cfg.base_seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  if (o.jobs) cfg.jobs = *o.jobs;
  const fs::path dir = resolve_output_dir(o.output_dir, cfg.output_dir);
  const ResultTable table = run_experiment(cfg);
  emit_experiment(cfg, table, dir);
  std::size_t flagged = 0;
  for (const auto& r : table) flagged += r.status != RowStatus::ok ? 1 : 0;
  std::printf("%zu rows (%zu with non-ok status) -> %s\n", table.size(), flagged,
              (dir / "results.csv").string().c_str());
}

struct BalanceOptions {
  std::string config;
  std::optional<double> gap;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int jobs = 1;
  std::optional<std::string> output_dir;
};

void cmd_balance(const BalanceOptions& o) {
  BalanceConfig cfg = o.config.empty() ? BalanceConfig{} : load_balance_config(o.config);
  if (o.gap) cfg.gap = *o.gap;
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) cfg.trials = *o.trials;
  cfg.validate();
  const fs::path dir = resolve_output_dir(o.output_dir, "results");
  const BalanceResult result = balance_sweep(cfg, o.jobs);
  emit_balance(cfg, result, dir);
  std::printf("q,l,phi,mean_largest_sine\n");
  for (const auto& row : result.rows) {
    std::printf("%d,%lld,%s,%s\n", row.q, static_cast<long long>(row.l),
                format_value(row.phi).c_str(), format_value(row.mean_largest()).c_str());
  }
  std::printf("argmin q = %d; wrote %s\n", result.argmin_q, (dir / "balance.csv").string().c_str());
}

struct EstimateOptions {
  std::string spectrum;
  Index k = 1;
  Index l = 2;
  int q = 0;
  std::string side = "left";
  int trials = 3;
  std::uint64_t seed = 0;
};

void cmd_estimate(const EstimateOptions& o) {
  const Spectrum s = read_spectrum(o.spectrum);
  const EstimateReport e = unbiased_estimate(s, o.k, o.l, o.q, o.trials, parse_side(o.side), o.seed);
  std::printf("i,estimate,min,max\n");
  for (std::size_t j = 0; j < e.mean.size(); ++j) {
    std::printf("%zu,%s,%s,%s\n", j + 1, format_value(e.mean[j]).c_str(),
                format_value(e.min_band[j]).c_str(), format_value(e.max_band[j]).c_str());
  }
  if (e.pinv_cutoff_applied) std::fprintf(stderr, "note: pseudo-inverse cutoff applied\n");
  if (e.below_precision) std::fprintf(stderr, "note: some estimates below 1e-14\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized SVD canonical-angle bounds and estimates"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "write a generated matrix (.mtx) and its descriptor (.json)");
  g->add_option("--generator", gen.spec.generator,
                "gaussian_slower | gaussian_faster | step | snn")
      ->required();
  g->add_option("--m", gen.spec.m, "rows")->capture_default_str();
  g->add_option("--n", gen.spec.n, "columns")->capture_default_str();
  g->add_option("--r", gen.spec.r, "rank (gaussian generators)")->capture_default_str();
  g->add_option("--r1", gen.spec.r1, "flat leading values / weighted SNN terms")->capture_default_str();
  g->add_option("--a", gen.spec.a, "SNN weight")->capture_default_str();
  g->add_option("--density", gen.spec.density, "SNN nonzero probability")->capture_default_str();
  g->add_option("--terms", gen.spec.terms, "SNN rank-one terms (0 = min(m, n))")->capture_default_str();
  g->add_option("--k", gen.spec.step_k, "step spectrum: leading values")->capture_default_str();
  g->add_option("--beta", gen.spec.beta, "step spectrum: tail size / k")->capture_default_str();
  g->add_option("--gap", gen.spec.gap, "step spectrum: sigma_1 / sigma_{k+1}")->capture_default_str();
  g->add_option("--seed", gen.spec.seed, "generator seed")->capture_default_str();
  g->add_option("-o,--out", gen.out, "output .mtx path")->capture_default_str();

  RunOptions run;
  auto* r = app.add_subcommand("run", "run an experiment config (JSON)");
  r->add_option("config", run.config, "experiment config file")->required()->check(CLI::ExistingFile);
  r->add_option("--seed", run.seed, "base rsvd seed");
  r->add_option("--trials", run.trials, "estimator trials");
  r->add_option("--jobs", run.jobs, "worker threads");
  r->add_option("--output-dir", run.output_dir,
                std::string("output directory (overrides ") + kOutputEnv + " and the config)");

  BalanceOptions bal;
  auto* b = app.add_subcommand("balance", "fixed-budget sweep over power iterations");
  b->add_option("config", bal.config, "balance config file (defaults built in)")
      ->check(CLI::ExistingFile);
  b->add_option("--gap", bal.gap, "sigma_1 / sigma_{k+1}");
  b->add_option("--seed", bal.seed, "seed of trial 0");
  b->add_option("--trials", bal.trials, "trials per q");
  b->add_option("--jobs", bal.jobs, "worker threads")->capture_default_str();
  b->add_option("--output-dir", bal.output_dir,
                std::string("output directory (overrides ") + kOutputEnv + ")");

  EstimateOptions est;
  auto* e = app.add_subcommand("estimate", "estimate canonical-angle sines from a spectrum file");
  e->add_option("spectrum", est.spectrum, "singular values, whitespace separated")
      ->required()
      ->check(CLI::ExistingFile);
  e->add_option("--k", est.k, "target rank")->required();
  e->add_option("--l", est.l, "sample size")->required();
  e->add_option("--q", est.q, "power iterations")->capture_default_str();
  e->add_option("--side", est.side, "left | right")->capture_default_str();
  e->add_option("--trials", est.trials, "Monte-Carlo trials")->capture_default_str();
  e->add_option("--seed", est.seed, "estimator seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  try {
    if (g->parsed()) cmd_gen(gen);
    if (r->parsed()) cmd_run(run);
    if (b->parsed()) cmd_balance(bal);
    if (e->parsed()) cmd_estimate(est);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "rsvdangle: %s\n", ex.what());
    return 1;
  }
  return 0;
}
