#include "rsvdangle/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "rsvdangle/angles.hpp"
#include "rsvdangle/estimator.hpp"
#include "rsvdangle/matrix_market.hpp"
#include "rsvdangle/random.hpp"
#include "rsvdangle/rsvd.hpp"

namespace rsvdangle {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunContext {
  const std::string& matrix;
  const GridPoint& point;
  std::uint64_t seed;
  ResultTable& rows;
};

void add_values(RunContext& ctx, Side side, std::string_view kind, SpectrumSource source,
                const std::vector<double>& values, const std::vector<double>* raw = nullptr) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    ResultRow row;
    row.matrix = ctx.matrix;
    row.side = side;
    row.k = ctx.point.k;
    row.l = ctx.point.l;
    row.q = ctx.point.q;
    row.seed = ctx.seed;
    row.i = static_cast<Index>(j + 1);
    row.kind = std::string(kind);
    row.source = source;
    row.value = values[j];
    row.status = raw != nullptr && (*raw)[j] > 1.0 ? RowStatus::trivial_bound : RowStatus::ok;
    ctx.rows.push_back(std::move(row));
  }
}

void add_report(RunContext& ctx, const BoundReport& report, std::string_view kind,
                SpectrumSource source) {
  add_values(ctx, report.side, kind, source, report.values, &report.raw);
}

void add_status(RunContext& ctx, Side side, std::string_view kind, SpectrumSource source,
                RowStatus status) {
  const std::size_t before = ctx.rows.size();
  add_values(ctx, side, kind, source, std::vector<double>(static_cast<std::size_t>(ctx.point.k), kNaN));
  for (std::size_t j = before; j < ctx.rows.size(); ++j) ctx.rows[j].status = status;
}

// Runs fn and converts the expected failure kinds into status rows.
template <typename Fn>
void guarded(RunContext& ctx, Side side, std::initializer_list<std::string_view> kinds,
             SpectrumSource source, Fn&& fn) {
  RowStatus status = RowStatus::ok;
  try {
    fn();
    return;
  } catch (const GapViolation&) {
    status = RowStatus::gap_violated;
  } catch (const TailTooShort&) {
    status = RowStatus::tail_short;
  } catch (const InvalidParams&) {
    status = RowStatus::invalid_params;
  }
  for (auto kind : kinds) add_status(ctx, side, kind, source, status);
}

std::size_t kind_index(const std::string& kind) {
  const auto& kinds = experiment_kinds();
  return static_cast<std::size_t>(std::find(kinds.begin(), kinds.end(), kind) - kinds.begin());
}

}  // namespace

Spectrum pad_spectrum(const Spectrum& approx, Index r) {
  const auto l = static_cast<Index>(approx.size());
  if (l < 1 || r < l) {
    throw Error("pad_spectrum requires 1 <= l <= r");
  }
  std::vector<double> values(approx.values().begin(), approx.values().end());
  values.resize(static_cast<std::size_t>(r), values.back());
  return Spectrum(std::move(values));
}

bool is_loaded_data(const MatrixSpec& spec) {
  return spec.generator == "mnist" || spec.generator == "file";
}

PlantedMatrix make_matrix(const MatrixSpec& spec) {
  const std::string& g = spec.generator;
  if (g == "gaussian_slower") {
    return gen_gaussian_decay(spec.m, spec.n, spectrum_slower(spec.r, spec.r1), spec.seed);
  }
  if (g == "gaussian_faster") {
    return gen_gaussian_decay(spec.m, spec.n, spectrum_faster(spec.r, spec.r1), spec.seed);
  }
  if (g == "step") {
    const Spectrum s = gen_step_spectrum(spec.step_k, spec.beta, spec.gap);
    const auto r = static_cast<Index>(s.size());
    return gen_gaussian_decay(r, r, s, spec.seed);
  }
  if (g == "snn") {
    return gen_snn(SnnParams{spec.m, spec.n, spec.r1, spec.a, spec.density, spec.terms}, spec.seed);
  }
  if (g == "mnist") {
    return from_data(load_mnist(spec.path, spec.n_samples, spec.seed),
                     "mnist path=" + spec.path + " n_samples=" + std::to_string(spec.n_samples) +
                         " seed=" + std::to_string(spec.seed));
  }
  if (g == "file") {
    return from_data(read_matrix_market(std::filesystem::path(spec.path)), "file path=" + spec.path);
  }
  throw Error("unknown generator '" + g + "'");
}

void ExperimentConfig::validate_against(const std::vector<PlantedMatrix>& built) const {
  if (matrices.empty()) throw Error("experiment config: no matrices");
  if (grid.empty()) throw Error("experiment config: empty grid");
  if (sides.empty()) throw Error("experiment config: no sides");
  if (trials < 1 || seeds < 1 || jobs < 1) {
    throw Error("experiment config: trials, seeds and jobs must be >= 1");
  }
  std::set<std::string> names;
  for (const auto& m : matrices) {
    if (m.name.empty() || !names.insert(m.name).second) {
      throw Error("experiment config: matrix names must be unique and nonempty");
    }
  }
  for (const auto& mat : built) {
    const Index cap = std::min(mat.a.rows(), mat.a.cols());
    for (const auto& p : grid) {
      if (!(1 <= p.k && p.k < p.l && p.l <= cap) || p.q < 0) {
        throw Error("experiment config: grid point (k=" + std::to_string(p.k) + ", l=" +
                    std::to_string(p.l) + ", q=" + std::to_string(p.q) +
                    ") needs 1 <= k < l <= min(m, n) = " + std::to_string(cap) + " and q >= 0");
      }
    }
  }
}

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{
      "true_sine",
      "true_sine_k",
      "space_agnostic_upper",
      "space_agnostic_lower",
      "saibaba_upper",
      "posterior_residual",
      "posterior_gap_l",
      "posterior_gap_l_anglewise",
      "posterior_gap_k",
      "posterior_gap_k_anglewise",
      "estimate",
      "estimate_min",
      "estimate_max",
  };
  return kinds;
}

ResultTable run_single(const PlantedMatrix& matrix, const MatrixSpec& spec, const GridPoint& point,
                       std::uint64_t seed, const ExperimentConfig& cfg) {
  ResultTable rows;
  RunContext ctx{spec.name, point, seed, rows};
  const Index k = point.k;
  const Index l = point.l;
  const int q = point.q;
  const DenseMatrix& a = matrix.a;

  const DenseMatrix omega = gaussian_sketch(a.cols(), l, seed);
  const RsvdOutput out = rsvd(a, SketchConfig{k, l, q, seed}, omega);
  const Eigen::MatrixXd& u_hat = out.factors.u.values();
  const Eigen::MatrixXd& v_hat = out.factors.v.values();

  const bool loaded = is_loaded_data(spec);
  const Index r_pad = std::max<Index>(
      l, loaded ? std::min(a.rows(), a.cols()) : static_cast<Index>(matrix.spectrum.declared_rank()));
  const Spectrum padded = pad_spectrum(Spectrum(out.factors.sigma), r_pad);
  const std::pair<SpectrumSource, const Spectrum*> sources[] = {
      {SpectrumSource::true_spectrum, &matrix.spectrum}, {SpectrumSource::padded, &padded}};

  const ResidualStats stats = residual_blocks(a, out, k, cfg.norm_method, 50, seed);

  // Sketch blocks in the true right singular basis, for the comparator bound.
  std::optional<std::pair<DenseMatrix, DenseMatrix>> omega_blocks;
  const Index r_true = std::min<Index>(matrix.factors.v.cols(),
                                       static_cast<Index>(matrix.spectrum.declared_rank()));
  if (!loaded && r_true > k) {
    const Eigen::MatrixXd& v = matrix.factors.v.values();
    omega_blocks.emplace(DenseMatrix(v.leftCols(k).transpose() * omega.values()),
                         DenseMatrix(v.middleCols(k, r_true - k).transpose() * omega.values()));
  }

  for (const Side side : cfg.sides) {
    const bool left = side == Side::left;
    const Eigen::MatrixXd& hat = left ? u_hat : v_hat;
    const Eigen::MatrixXd truth = (left ? matrix.factors.u : matrix.factors.v).values().leftCols(k);
    add_values(ctx, side, "true_sine", SpectrumSource::true_spectrum,
               detail::sines_orthonormal(hat, truth));
    add_values(ctx, side, "true_sine_k", SpectrumSource::true_spectrum,
               detail::sines_orthonormal(hat.leftCols(k), truth));

    const Spectrum residual = residual_spectrum(a, left ? out.factors.u : out.factors.v, side);

    for (const auto& [source, spectrum] : sources) {
      const Spectrum& s = *spectrum;
      guarded(ctx, side, {"space_agnostic_upper"}, source, [&] {
        add_report(ctx, space_agnostic_upper(s, k, l, q, side, cfg.upper), "space_agnostic_upper",
                   source);
      });
      guarded(ctx, side, {"space_agnostic_lower"}, source, [&] {
        add_report(ctx, space_agnostic_lower(s, k, l, q, side, cfg.lower), "space_agnostic_lower",
                   source);
      });
      if (omega_blocks) {
        add_report(ctx, saibaba_upper(s, omega_blocks->first, omega_blocks->second, k, q, side),
                   "saibaba_upper", source);
      } else {
        add_status(ctx, side, "saibaba_upper", source, RowStatus::skipped);
      }
      add_report(ctx, posterior_residual_bound(residual, s, k, side), "posterior_residual", source);
      guarded(ctx, side,
              {"posterior_gap_l", "posterior_gap_l_anglewise", "posterior_gap_k",
               "posterior_gap_k_anglewise"},
              source, [&] {
                for (const auto& report : posterior_gap_bounds(stats, s, k)) {
                  if (report.side == side) {
                    add_report(ctx, report, to_string(report.kind), source);
                  }
                }
              });
      guarded(ctx, side, {"estimate", "estimate_min", "estimate_max"}, source, [&] {
        const EstimateReport est = unbiased_estimate(s, k, l, q, cfg.trials, side, seed);
        add_values(ctx, side, "estimate", source, est.mean);
        add_values(ctx, side, "estimate_min", source, est.min_band);
        add_values(ctx, side, "estimate_max", source, est.max_band);
      });
    }
  }
  return rows;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, jobs));
  if (threads <= 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
  std::vector<std::optional<PlantedMatrix>> slots(cfg.matrices.size());
  parallel_for(slots.size(), cfg.jobs, [&](std::size_t i) { slots[i] = make_matrix(cfg.matrices[i]); });
  std::vector<PlantedMatrix> built;
  built.reserve(slots.size());
  for (auto& s : slots) built.push_back(std::move(*s));
  return run_experiment(cfg, built);
}

ResultTable run_experiment(const ExperimentConfig& cfg, const std::vector<PlantedMatrix>& built) {
  if (built.size() != cfg.matrices.size()) {
    throw Error("run_experiment: built matrices do not match the config");
  }
  cfg.validate_against(built);
  struct Task {
    std::size_t matrix;
    std::size_t point;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t m = 0; m < built.size(); ++m) {
    for (std::size_t p = 0; p < cfg.grid.size(); ++p) {
      for (int s = 0; s < cfg.seeds; ++s) {
        tasks.push_back({m, p, cfg.base_seed + static_cast<std::uint64_t>(s)});
      }
    }
  }
  std::vector<ResultTable> parts(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    parts[t] = run_single(built[task.matrix], cfg.matrices[task.matrix], cfg.grid[task.point],
                          task.seed, cfg);
  });

  std::map<std::string, std::size_t> matrix_order;
  for (std::size_t m = 0; m < cfg.matrices.size(); ++m) matrix_order[cfg.matrices[m].name] = m;
  ResultTable table;
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(table));
  }
  auto key = [&](const ResultRow& r) {
    return std::make_tuple(matrix_order.at(r.matrix), r.side, r.k, r.l, r.q, r.seed, r.i,
                           kind_index(r.kind), r.source);
  };
  std::stable_sort(table.begin(), table.end(),
                   [&](const ResultRow& x, const ResultRow& y) { return key(x) < key(y); });
  return table;
}

void emit_experiment(const ExperimentConfig& cfg, const ResultTable& table,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  emit_csv(table, dir / "results.csv");
  for (const auto& m : cfg.matrices) {
    for (const Side side : cfg.sides) {
      for (const auto& p : cfg.grid) {
        const std::string file = m.name + "_" + std::string(to_string(side)) + "_k" +
                                 std::to_string(p.k) + "_l" + std::to_string(p.l) + "_q" +
                                 std::to_string(p.q) + ".svg";
        emit_svg(experiment_panel(table, m.name, side, p.k, p.l, p.q), dir / file);
      }
    }
  }
}

}  // namespace rsvdangle
