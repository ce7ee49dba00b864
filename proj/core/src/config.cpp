#include "rsvdangle/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rsvdangle {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw Error(where + ": expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!keys.contains(key)) throw Error(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& target) {
  if (obj.contains(key)) target = obj.at(key).get<T>();
}

void check_schema(const json& doc) {
  if (!doc.contains("schema_version")) throw Error("config: missing schema_version");
  const int version = doc.at("schema_version").get<int>();
  if (version != kConfigSchemaVersion) {
    throw Error("config: unsupported schema_version " + std::to_string(version));
  }
}

MatrixSpec parse_matrix(const json& j) {
  reject_unknown(j,
                 {"name", "generator", "m", "n", "r", "r1", "a", "density", "terms", "k", "beta",
                  "gap", "path", "n_samples", "seed"},
                 "matrix");
  MatrixSpec m;
  read(j, "name", m.name);
  read(j, "generator", m.generator);
  read(j, "m", m.m);
  read(j, "n", m.n);
  read(j, "r", m.r);
  read(j, "r1", m.r1);
  read(j, "a", m.a);
  read(j, "density", m.density);
  read(j, "terms", m.terms);
  read(j, "k", m.step_k);
  read(j, "beta", m.beta);
  read(j, "gap", m.gap);
  read(j, "path", m.path);
  read(j, "n_samples", m.n_samples);
  read(j, "seed", m.seed);
  if (m.name.empty()) m.name = m.generator;
  return m;
}

DistortionParams parse_distortion(const json& j, DistortionParams dp) {
  reject_unknown(j, {"c1", "c2", "eps2_basis", "eps1", "eps2"}, "distortion");
  read(j, "c1", dp.c1);
  read(j, "c2", dp.c2);
  if (j.contains("eps2_basis")) {
    const auto basis = j.at("eps2_basis").get<std::string>();
    if (basis == "tail_count") {
      dp.eps2_basis = Eps2Basis::tail_count;
    } else if (basis == "tail_spread") {
      dp.eps2_basis = Eps2Basis::tail_spread;
    } else {
      throw Error("distortion: eps2_basis must be tail_count or tail_spread");
    }
  }
  if (j.contains("eps1")) dp.eps1 = j.at("eps1").get<double>();
  if (j.contains("eps2")) dp.eps2 = j.at("eps2").get<double>();
  return dp;
}

std::vector<GridPoint> parse_grid(const json& j) {
  std::vector<GridPoint> grid;
  if (j.is_array()) {
    for (const auto& p : j) {
      reject_unknown(p, {"k", "l", "q"}, "grid point");
      grid.push_back({p.at("k").get<Index>(), p.at("l").get<Index>(), p.at("q").get<int>()});
    }
    return grid;
  }
  reject_unknown(j, {"k", "l", "q"}, "grid");
  for (const auto k : j.at("k").get<std::vector<Index>>()) {
    for (const auto l : j.at("l").get<std::vector<Index>>()) {
      for (const auto q : j.at("q").get<std::vector<int>>()) grid.push_back({k, l, q});
    }
  }
  return grid;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  const json doc = parse_text(json_text);
  try {
    reject_unknown(doc,
                   {"schema_version", "matrices", "grid", "sides", "trials", "seeds", "base_seed",
                    "upper", "lower", "norm_method", "jobs", "output_dir"},
                   "experiment config");
    check_schema(doc);
    ExperimentConfig cfg;
    for (const auto& m : doc.at("matrices")) cfg.matrices.push_back(parse_matrix(m));
    cfg.grid = parse_grid(doc.at("grid"));
    if (doc.contains("sides")) {
      cfg.sides.clear();
      for (const auto& s : doc.at("sides")) cfg.sides.push_back(parse_side(s.get<std::string>()));
    }
    read(doc, "trials", cfg.trials);
    read(doc, "seeds", cfg.seeds);
    read(doc, "base_seed", cfg.base_seed);
    if (doc.contains("upper")) cfg.upper = parse_distortion(doc.at("upper"), cfg.upper);
    if (doc.contains("lower")) cfg.lower = parse_distortion(doc.at("lower"), cfg.lower);
    if (doc.contains("norm_method")) {
      const auto method = doc.at("norm_method").get<std::string>();
      if (method == "exact") {
        cfg.norm_method = NormMethod::exact;
      } else if (method == "power") {
        cfg.norm_method = NormMethod::power;
      } else {
        throw Error("experiment config: norm_method must be exact or power");
      }
    }
    read(doc, "jobs", cfg.jobs);
    read(doc, "output_dir", cfg.output_dir);
    return cfg;
  } catch (const json::exception& e) {
    throw Error(std::string("experiment config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  try {
    return parse_experiment_config(slurp(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

BalanceConfig parse_balance_config(const std::string& json_text) {
  const json doc = parse_text(json_text);
  try {
    reject_unknown(doc,
                   {"schema_version", "k", "alpha", "beta", "gamma", "gap", "trials", "seed"},
                   "balance config");
    check_schema(doc);
    BalanceConfig cfg;
    read(doc, "k", cfg.k);
    read(doc, "alpha", cfg.alpha);
    read(doc, "beta", cfg.beta);
    read(doc, "gamma", cfg.gamma);
    read(doc, "gap", cfg.gap);
    read(doc, "trials", cfg.trials);
    read(doc, "seed", cfg.seed);
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw Error(std::string("balance config: ") + e.what());
  }
}

BalanceConfig load_balance_config(const std::filesystem::path& path) {
  try {
    return parse_balance_config(slurp(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace rsvdangle
