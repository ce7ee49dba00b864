// Acceptance gate: one PASS/FAIL line per criterion. `--criterion N` runs a
// single criterion; without arguments all of them run in order.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "rsvdangle/angles.hpp"
#include "rsvdangle/balance.hpp"
#include "rsvdangle/estimator.hpp"
#include "rsvdangle/harness.hpp"
#include "rsvdangle/random.hpp"
#include "rsvdangle/rsvd.hpp"

namespace {

using namespace rsvdangle;

// Computed sines are accurate to about this much; bounds are compared with it.
constexpr double kSlack = 1e-10;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

int jobs() { return static_cast<int>(std::max(1U, std::thread::hardware_concurrency())); }

MatrixSpec gaussian_preset(const std::string& name, const std::string& generator, Index size = 500) {
  MatrixSpec m;
  m.name = name;
  m.generator = generator;
  m.m = size;
  m.n = size;
  m.r = size;
  m.r1 = 20;
  m.seed = 1;
  return m;
}

MatrixSpec snn_preset(const std::string& name, double a) {
  MatrixSpec m;
  m.name = name;
  m.generator = "snn";
  m.m = 500;
  m.n = 500;
  m.r1 = 20;
  m.a = a;
  m.seed = 1;
  return m;
}

std::vector<MatrixSpec> all_presets() {
  return {snn_preset("snn_a1", 1.0), snn_preset("snn_a100", 100.0),
          gaussian_preset("gaussian_slower", "gaussian_slower"),
          gaussian_preset("gaussian_faster", "gaussian_faster")};
}

ExperimentConfig sweep(std::vector<MatrixSpec> matrices, std::vector<Index> ls) {
  ExperimentConfig cfg;
  cfg.matrices = std::move(matrices);
  for (const Index l : ls) {
    for (const int q : {0, 1}) cfg.grid.push_back({50, l, q});
  }
  cfg.seeds = 10;
  cfg.jobs = jobs();
  return cfg;
}

// Rows of one run position: (matrix, side, k, l, q, seed, i).
using Position = std::tuple<std::string, Side, Index, Index, int, std::uint64_t, Index>;

class RowIndex {
 public:
  explicit RowIndex(ResultTable table) : table_(std::move(table)) {
    for (const auto& r : table_) {
      rows_[{r.matrix, r.side, r.k, r.l, r.q, r.seed, r.i}][{r.kind, r.source}] = &r;
    }
  }
  const ResultRow* get(const Position& p, const std::string& kind,
                       SpectrumSource source = SpectrumSource::true_spectrum) const {
    const auto it = rows_.at(p).find({kind, source});
    return it == rows_.at(p).end() ? nullptr : it->second;
  }
  std::vector<Position> positions() const {
    std::vector<Position> out;
    for (const auto& [p, _] : rows_) out.push_back(p);
    return out;
  }

 private:
  ResultTable table_;
  std::map<Position, std::map<std::pair<std::string, SpectrumSource>, const ResultRow*>> rows_;
};

bool evaluable(const ResultRow* r) {
  return r != nullptr && (r->status == RowStatus::ok || r->status == RowStatus::trivial_bound);
}

struct Rate {
  std::size_t hold = 0;
  std::size_t total = 0;
  std::size_t excluded = 0;
  double rate() const { return total == 0 ? 0.0 : static_cast<double>(hold) / static_cast<double>(total); }
};

// Per matrix: fraction of positions where pred(bound, sine) holds.
std::map<std::string, Rate> rates(const RowIndex& idx, const std::string& kind,
                                  const std::string& truth, SpectrumSource source,
                                  const std::function<bool(double, double)>& pred) {
  std::map<std::string, Rate> out;
  for (const auto& p : idx.positions()) {
    const ResultRow* b = idx.get(p, kind, source);
    const ResultRow* t = idx.get(p, truth);
    Rate& r = out[std::get<0>(p)];
    if (!evaluable(b)) {
      ++r.excluded;
      continue;
    }
    ++r.total;
    if (pred(b->value, t->value)) ++r.hold;
  }
  return out;
}

bool upper(double bound, double sine) { return bound + kSlack >= sine; }
bool lower(double bound, double sine) { return bound <= sine + kSlack; }

std::string describe(const std::map<std::string, Rate>& rs) {
  std::string s;
  for (const auto& [m, r] : rs) {
    s += format(" %s=%zu/%zu(%.4f,excluded %zu)", m.c_str(), r.hold, r.total, r.rate(), r.excluded);
  }
  return s;
}

bool all_at_least(const std::map<std::string, Rate>& rs, double threshold) {
  return !rs.empty() && std::all_of(rs.begin(), rs.end(), [&](const auto& kv) {
    return kv.second.total > 0 && kv.second.rate() >= threshold;
  });
}

Verdict criterion1() {
  const RowIndex idx(run_experiment(sweep(all_presets(), {80, 200})));
  const std::pair<const char*, const char*> checks[] = {
      {"posterior_residual", "true_sine"},
      {"posterior_gap_l", "true_sine"},
      {"posterior_gap_l_anglewise", "true_sine"},
      {"posterior_gap_k", "true_sine_k"},
      {"posterior_gap_k_anglewise", "true_sine_k"},
  };
  std::size_t violations = 0, compared = 0, gap_violated = 0;
  std::string worst;
  double worst_excess = 0.0;
  for (const auto& p : idx.positions()) {
    for (const auto& [kind, truth] : checks) {
      const ResultRow* b = idx.get(p, kind);
      if (b->status == RowStatus::gap_violated) {
        ++gap_violated;
        continue;
      }
      const double sine = idx.get(p, truth)->value;
      ++compared;
      if (!upper(b->value, sine)) {
        ++violations;
        if (sine - b->value > worst_excess) {
          worst_excess = sine - b->value;
          worst = format(" worst: %s %s %s l=%lld q=%d seed=%llu i=%lld bound=%.3e sine=%.3e",
                         kind, std::get<0>(p).c_str(), std::string(to_string(std::get<1>(p))).c_str(),
                         static_cast<long long>(std::get<3>(p)), std::get<4>(p),
                         static_cast<unsigned long long>(std::get<5>(p)),
                         static_cast<long long>(std::get<6>(p)), b->value, sine);
        }
      }
    }
  }
  return {violations == 0 && compared > 0,
          format("%zu comparisons, %zu violations, %zu gap_violated rows excluded%s", compared,
                 violations, gap_violated, worst.c_str())};
}

Verdict criterion2() {
  const RowIndex idx(run_experiment(sweep(all_presets(), {80})));
  const auto rs =
      rates(idx, "space_agnostic_upper", "true_sine", SpectrumSource::true_spectrum, upper);
  return {all_at_least(rs, 0.99), "upper >= sine, need >= 0.99:" + describe(rs)};
}

Verdict criterion3() {
  ExperimentConfig cfg = sweep(all_presets(), {200});
  cfg.lower = DistortionParams::lower_default();
  const auto rs = rates(RowIndex(run_experiment(cfg)), "space_agnostic_lower", "true_sine",
                        SpectrumSource::true_spectrum, lower);
  Verdict v{all_at_least(rs, 0.95), "lower <= sine, need >= 0.95:" + describe(rs)};

  // Same protocol on 1000 x 1000 presets where eps2 = 2 sqrt(l / (r - k)) < 1.
  ExperimentConfig big = sweep({gaussian_preset("gaussian_slower_1000", "gaussian_slower", 1000),
                                gaussian_preset("gaussian_faster_1000", "gaussian_faster", 1000)},
                               {200});
  big.seeds = 3;
  big.sides = {Side::left};
  const auto diag = rates(RowIndex(run_experiment(big)), "space_agnostic_lower", "true_sine",
                          SpectrumSource::true_spectrum, lower);
  v.detail += "; diagnostic at 1000x1000:" + describe(diag);
  return v;
}

Verdict criterion4() {
  ExperimentConfig cfg = sweep({gaussian_preset("gaussian_slower", "gaussian_slower")}, {200});
  const RowIndex idx(run_experiment(cfg));
  std::size_t hold = 0, total = 0;
  for (const auto& p : idx.positions()) {
    const ResultRow* ours = idx.get(p, "space_agnostic_upper");
    const ResultRow* theirs = idx.get(p, "saibaba_upper");
    if (!evaluable(ours) || !evaluable(theirs)) continue;
    ++total;
    if (ours->value <= theirs->value) ++hold;
  }
  const double rate = total == 0 ? 0.0 : static_cast<double>(hold) / static_cast<double>(total);
  return {total > 0 && rate >= 0.95,
          format("space_agnostic_upper <= saibaba_upper in %zu/%zu (%.4f), need >= 0.95", hold,
                 total, rate)};
}

// Per-index z scores of the estimator mean against the empirical mean of
// true sines over n rsvd runs.
std::vector<double> unbiasedness_z(int n, std::uint64_t rsvd_seed0, std::uint64_t estimator_seed) {
  const Index k = 10, l = 25;
  const int q = 1;
  const Spectrum s = spectrum_slower(200, 20);
  const PlantedMatrix pm = gen_gaussian_decay(200, 200, s, 2024);
  const Eigen::MatrixXd uk = pm.factors.u.values().leftCols(k);
  Eigen::MatrixXd empirical(n, k);
  parallel_for(static_cast<std::size_t>(n), jobs(), [&](std::size_t t) {
    const RsvdOutput out = rsvd(pm.a, SketchConfig{k, l, q, rsvd_seed0 + t});
    const auto sines = detail::sines_orthonormal(out.factors.u.values(), uk);
    for (Index j = 0; j < k; ++j) {
      empirical(static_cast<Index>(t), j) = sines[static_cast<std::size_t>(j)];
    }
  });
  const EstimateReport est = unbiased_estimate(s, k, l, q, n, Side::left, estimator_seed);
  std::vector<double> z;
  for (Index j = 0; j < k; ++j) {
    const auto a = empirical.col(j);
    const auto b = est.per_trial.col(j);
    const double ma = a.mean(), mb = b.mean();
    const double va = (a.array() - ma).square().sum() / (n - 1);
    const double vb = (b.array() - mb).square().sum() / (n - 1);
    z.push_back((mb - ma) / std::sqrt(va / n + vb / n));
  }
  return z;
}

Verdict criterion5() {
  const auto z = unbiasedness_z(500, 10000, 2025);
  int agree = 0;
  std::string zs;
  for (double v : z) {
    if (std::abs(v) <= 2.0) ++agree;
    zs += format(" %.2f", v);
  }
  Verdict v{agree * 10 >= 9 * static_cast<int>(z.size()),
            format("%d/%zu indices within 2 SE, need >= 90%%; z =", agree, z.size()) + zs};
  // Ten times the sample, fresh seeds: separates bias from sampling noise.
  double worst = 0.0;
  for (double x : unbiasedness_z(5000, 100000, 2026)) worst = std::max(worst, std::abs(x));
  v.detail += format("; diagnostic N=5000 max |z| = %.2f", worst);
  return v;
}

Verdict criterion6() {
  ExperimentConfig cfg;
  MatrixSpec a = gaussian_preset("a", "gaussian_slower", 200);
  MatrixSpec b = a;
  b.name = "b";
  b.seed = 99;
  cfg.matrices = {a, b};
  cfg.grid = {{10, 30, 0}, {10, 30, 1}};
  cfg.trials = 5;
  cfg.jobs = jobs();
  const ResultTable table = run_experiment(cfg);
  const std::vector<std::string> kinds{"space_agnostic_upper", "space_agnostic_lower", "estimate",
                                       "estimate_min", "estimate_max"};
  std::map<std::tuple<Side, Index, int, Index, std::string>, std::vector<double>> values;
  std::size_t compared = 0, mismatched = 0;
  for (const auto& r : table) {
    if (r.source != SpectrumSource::true_spectrum ||
        std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end()) {
      continue;
    }
    values[{r.side, r.l, r.q, r.i, r.kind}].push_back(r.value);
  }
  for (const auto& [key, v] : values) {
    if (v.size() != 2) {
      ++mismatched;
      continue;
    }
    ++compared;
    // Bitwise identity; NaN status rows compare by representation too.
    if (std::memcmp(&v[0], &v[1], sizeof(double)) != 0) ++mismatched;
  }
  // Also direct calls on two spectra built from different subspace seeds.
  const PlantedMatrix pa = make_matrix(a), pb = make_matrix(b);
  const bool same_spectrum = pa.spectrum == pb.spectrum;
  const bool different_subspace = !(pa.factors.u.values() == pb.factors.u.values());
  const auto ea = unbiased_estimate(pa.spectrum, 10, 30, 1, 5, Side::right, 3);
  const auto eb = unbiased_estimate(pb.spectrum, 10, 30, 1, 5, Side::right, 3);
  const bool direct = ea.per_trial == eb.per_trial && ea.mean == eb.mean;
  return {mismatched == 0 && compared > 0 && same_spectrum && different_subspace && direct,
          format("%zu spectrum-only quantities compared bitwise, %zu mismatches; direct estimator "
                 "identical=%d, subspaces differ=%d",
                 compared, mismatched, direct ? 1 : 0, different_subspace ? 1 : 0)};
}

Verdict criterion7() {
  bool pass = true;
  std::string detail;
  for (const double gap : {1.01, 1.5}) {
    BalanceConfig cfg;
    cfg.gap = gap;
    cfg.trials = 5;
    const BalanceResult r = balance_sweep(cfg, jobs());
    const int q_max = max_feasible_q(cfg);
    const int expected = gap < 1.2 ? 0 : q_max;
    const int opposite = r.argmin_q == 0 ? q_max : 0;
    const double at_argmin = r.rows[static_cast<std::size_t>(r.argmin_q)].mean_largest();
    const double at_opposite = r.rows[static_cast<std::size_t>(opposite)].mean_largest();
    const bool ok = r.argmin_q == expected && at_argmin <= at_opposite;
    pass = pass && ok;
    detail += format(" gap=%.2f: argmin q=%d (expected %d), mean largest sine %.5f at q=%d vs "
                     "%.5f at q=%d;",
                     gap, r.argmin_q, expected, at_argmin, r.argmin_q, at_opposite, opposite);
  }
  return {pass, detail};
}

Verdict criterion8() {
  std::size_t failures = 0;
  double worst_svd = 0, worst_rsvd = 0, worst_pyth = 0;
  std::size_t interlace_fail = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const CounterRng rng = CounterRng(t).split(77);
    const auto rows = static_cast<Index>(1 + rng.bits(0) % 200);
    const auto cols = static_cast<Index>(1 + rng.bits(1) % 150);
    const DenseMatrix a(gaussian_matrix(rng.split(1), rows, cols));
    const SvdFactors f = svd_full(a);
    const double rel = (f.reconstruct().values() - a.values()).norm() / a.frobenius_norm();
    worst_svd = std::max(worst_svd, rel);

    // Low-rank matrix with l equal to its rank.
    const Index rank = std::max<Index>(1, std::min(rows, cols) / 3);
    const DenseMatrix low(gaussian_matrix(rng.split(2), rows, rank) *
                          gaussian_matrix(rng.split(3), rank, cols));
    const RsvdOutput out = rsvd(low, SketchConfig{rank, rank, static_cast<int>(t % 3), t});
    worst_rsvd = std::max(worst_rsvd, (out.factors.reconstruct().values() - low.values()).norm() /
                                          low.frobenius_norm());

    // Interlacing of rsvd values and of a column-deleted submatrix.
    const auto s = singular_values(a);
    const auto sl = singular_values(low);
    for (std::size_t i = 0; i < out.factors.sigma.size(); ++i) {
      if (out.factors.sigma[i] > sl[i] * (1 + 1e-12) + 1e-12) ++interlace_fail;
    }
    if (cols > 1) {
      const auto sub = singular_values(a.left_cols(cols - 1));
      for (std::size_t i = 0; i < sub.size(); ++i) {
        if (sub[i] > s[i] * (1 + 1e-12) + 1e-13) ++interlace_fail;
        if (i + 1 < s.size() && sub[i] < s[i + 1] * (1 - 1e-12) - 1e-13) ++interlace_fail;
      }
    }

    // sin^2 + cos^2 = 1 between random subspaces.
    if (rows >= 2) {
      const Index lb = std::max<Index>(1, rows / 2), ls = std::max<Index>(1, lb / 2);
      const DenseMatrix big(gaussian_matrix(rng.split(4), rows, lb));
      const DenseMatrix small(gaussian_matrix(rng.split(5), rows, ls));
      const auto sines = canonical_sines(big, small).sines;
      auto cosines = canonical_cosines(big, small);
      for (std::size_t i = 0; i < sines.size(); ++i) {
        worst_pyth = std::max(worst_pyth, std::abs(sines[i] * sines[i] + cosines[i] * cosines[i] - 1));
      }
    }
  }
  if (worst_svd > 1e-10) ++failures;
  if (worst_rsvd > 1e-10) ++failures;
  if (worst_pyth > 1e-8) ++failures;
  if (interlace_fail > 0) ++failures;
  return {failures == 0,
          format("100 matrices: svd rel err %.2e, rsvd(l = rank) rel err %.2e, |sin^2+cos^2-1| "
                 "%.2e, interlacing failures %zu",
                 worst_svd, worst_rsvd, worst_pyth, interlace_fail)};
}

Verdict criterion9() {
  const RowIndex idx(
      run_experiment(sweep({gaussian_preset("gaussian_faster", "gaussian_faster")}, {80})));
  std::size_t dominated = 0, total = 0;
  for (const auto& p : idx.positions()) {
    const ResultRow* padded = idx.get(p, "space_agnostic_upper", SpectrumSource::padded);
    const ResultRow* truth = idx.get(p, "space_agnostic_upper");
    if (!evaluable(padded) || !evaluable(truth)) continue;
    ++total;
    if (padded->value + kSlack >= truth->value) ++dominated;
  }
  const auto rt = rates(idx, "space_agnostic_upper", "true_sine", SpectrumSource::true_spectrum, upper);
  const auto rp = rates(idx, "space_agnostic_upper", "true_sine", SpectrumSource::padded, upper);
  const bool pass = total > 0 && dominated == total && all_at_least(rt, 0.99) && all_at_least(rp, 0.99);
  return {pass, format("padded >= true in %zu/%zu;", dominated, total) + " true-spectrum" +
                    describe(rt) + "; padded" + describe(rp)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3,
                                                       criterion4, criterion5, criterion6,
                                                       criterion7, criterion8, criterion9};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty()) {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
  }
  bool all = true;
  for (const int c : selected) {
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "no criterion %d\n", c);
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[static_cast<std::size_t>(c - 1)]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", c, v.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
