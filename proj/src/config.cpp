#include "hhed/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "hhed/error.hpp"

namespace hhed {

ModelSpec chain_model(int sites, double t0, double u0, double g0, double omega) {
  if (sites < 1) throw Error(ErrorCode::ValidationError, "model.sites: must be positive");
  RealMatrix t = RealMatrix::Zero(sites, sites);
  for (int x = 0; x + 1 < sites; ++x) t(x, x + 1) = t(x + 1, x) = t0;
  std::vector<std::string> names;
  for (int x = 0; x < sites; ++x) names.push_back(std::to_string(x));
  return build_model(names, std::nullopt, t, u0 * RealMatrix::Identity(sites, sites),
                     g0 * RealMatrix::Identity(sites, sites), omega);
}

ModelSpec star_model(int sites, double t0, double u0, double g0, double omega) {
  if (sites < 2) throw Error(ErrorCode::ValidationError, "model.sites: a star needs at least 2 sites");
  RealMatrix t = RealMatrix::Zero(sites, sites);
  for (int x = 1; x < sites; ++x) t(0, x) = t(x, 0) = t0;
  std::vector<std::string> names{"center"};
  for (int x = 1; x < sites; ++x) names.push_back("leaf" + std::to_string(x));
  // Color the leaves A so the majority sublattice is A.
  std::vector<Sublattice> sub(static_cast<std::size_t>(sites), Sublattice::A);
  sub[0] = Sublattice::B;
  return build_model(names, sub, t, u0 * RealMatrix::Identity(sites, sites), g0 * RealMatrix::Identity(sites, sites),
                     omega);
}

ModelSpec lieb_cell_model(int rx, int ry, double t0, double u0, double g0, double omega) {
  if (rx < 1 || ry < 1) throw Error(ErrorCode::ValidationError, "model.cells: need at least one cell per direction");
  std::vector<std::pair<int, int>> pos;
  std::vector<std::string> names;
  std::vector<Sublattice> sub;
  const auto add = [&](int x, int y, const std::string& kind, Sublattice s) {
    pos.emplace_back(x, y);
    names.push_back(kind + "(" + std::to_string(x) + "," + std::to_string(y) + ")");
    sub.push_back(s);
  };
  for (int j = 0; j < ry; ++j) {
    for (int i = 0; i < rx; ++i) add(2 * i, 2 * j, "Cu", Sublattice::A);
  }
  for (int j = 0; j < ry; ++j) {
    for (int i = 0; i < rx; ++i) {
      add(2 * i + 1, 2 * j, "Ox", Sublattice::B);
      add(2 * i, 2 * j + 1, "Oy", Sublattice::B);
    }
  }
  const auto n = static_cast<Eigen::Index>(pos.size());
  RealMatrix t = RealMatrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto [xa, ya] = pos[static_cast<std::size_t>(a)];
      const auto [xb, yb] = pos[static_cast<std::size_t>(b)];
      if (std::abs(xa - xb) + std::abs(ya - yb) == 1) t(a, b) = t0;
    }
  }
  return build_model(names, sub, t, u0 * RealMatrix::Identity(n, n), g0 * RealMatrix::Identity(n, n), omega);
}

FourierModel ring_fourier(int sites, double u0, double g0, double omega) {
  if (sites < 2 || sites % 2 != 0) throw Error(ErrorCode::ValidationError, "model.sites: a ring needs an even number of sites");
  FourierCouplingSpec spec;
  spec.dimension = 1;
  spec.linear_size = sites / 2;
  spec.G.assign(static_cast<std::size_t>(sites), g0);
  spec.U.assign(static_cast<std::size_t>(sites), u0);
  return fourier_model(spec, omega);
}

ModelSpec torus_model(const FourierModel& fourier, double t0) {
  const auto& lattice = fourier.lattice;
  const auto n = static_cast<Eigen::Index>(lattice.size());
  RealMatrix t = RealMatrix::Zero(n, n);
  for (const auto& [x, y] : lattice.bonds()) {
    t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = t0;
    t(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = t0;
  }
  std::vector<std::string> names;
  for (std::size_t x = 0; x < lattice.size(); ++x) names.push_back(lattice.site_name(x));
  return build_model(names, lattice.sublattices(), t, fourier.U, fourier.g, fourier.omega);
}

ModelSpec ring_model(int sites, double t0, double u0, double g0, double omega) {
  return torus_model(ring_fourier(sites, u0, g0, omega), t0);
}

namespace {

std::string where(const YAML::Node& n) {
  const auto m = n.Mark();
  if (m.is_null()) return "";
  return " (line " + std::to_string(m.line + 1) + ", column " + std::to_string(m.column + 1) + ")";
}

[[noreturn]] void invalid(const YAML::Node& n, const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::ValidationError, field + ": " + msg + where(n));
}

template <class T>
T scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) invalid(n, field, "expected a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::BadConversion&) {
    invalid(n, field, "cannot convert '" + n.Scalar() + "'");
  }
}

template <class T>
std::vector<T> list(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) invalid(n, field, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(scalar<T>(n[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

RealMatrix matrix(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence() || n.size() == 0) invalid(n, field, "expected a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(n.size());
  RealMatrix m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto row = list<double>(n[static_cast<std::size_t>(i)], field + "[" + std::to_string(i) + "]");
    if (static_cast<Eigen::Index>(row.size()) != rows) {
      invalid(n[static_cast<std::size_t>(i)], field, "matrix must be square, row " + std::to_string(i) + " has " +
                                                         std::to_string(row.size()) + " entries");
    }
    for (Eigen::Index j = 0; j < rows; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

void allow_keys(const YAML::Node& n, const std::string& section, std::initializer_list<const char*> keys) {
  if (!n.IsMap()) invalid(n, section, "expected a mapping");
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      invalid(kv.first, section + "." + key, "unknown key");
    }
  }
}

template <class T>
void require_increasing(const std::vector<T>& v, const YAML::Node& n, const std::string& field) {
  if (v.empty()) invalid(n, field, "must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) invalid(n, field, "must be strictly increasing");
  }
}

double number_or(const YAML::Node& parent, const char* key, double fallback, const std::string& section) {
  return parent[key] ? scalar<double>(parent[key], section + "." + key) : fallback;
}

/// Samples given either as one constant or one value per mesh point.
std::vector<double> samples(const YAML::Node& n, const std::string& field, std::size_t count) {
  if (n.IsScalar()) return std::vector<double>(count, scalar<double>(n, field));
  auto v = list<double>(n, field);
  if (v.size() != count) {
    invalid(n, field, "expected " + std::to_string(count) + " samples, got " + std::to_string(v.size()));
  }
  return v;
}

template <class F>
auto model_errors(const YAML::Node& n, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid(n, "model", e.what());
  }
}

void parse_model(const YAML::Node& node, RunConfig& cfg) {
  if (!node) throw Error(ErrorCode::ValidationError, "model: section required");
  allow_keys(node, "model",
             {"preset", "sites", "cells", "t0", "U0", "g0", "omega", "t", "U", "g", "names", "sublattice", "fourier"});
  const int styles = (node["preset"] ? 1 : 0) + (node["t"] ? 1 : 0) + (node["fourier"] ? 1 : 0);
  if (styles != 1) invalid(node, "model", "exactly one of preset, t (explicit matrices) or fourier is required");
  if (!node["omega"]) throw Error(ErrorCode::ValidationError, "omega required");
  const double omega = scalar<double>(node["omega"], "model.omega");
  if (!(omega > 0.0)) invalid(node["omega"], "model.omega", "must be positive");
  const double t0 = number_or(node, "t0", -1.0, "model");
  const double u0 = number_or(node, "U0", 0.0, "model");
  const double g0 = number_or(node, "g0", 0.0, "model");

  if (node["preset"]) {
    auto name = scalar<std::string>(node["preset"], "model.preset");
    cfg.model_label = name;
    int sites = 0;
    if (name == "star4") name = "star", sites = 4;
    if (name == "ring4") name = "ring", sites = 4;
    if (name == "dimer") name = "chain", sites = 2;
    if (node["sites"]) {
      const int given = scalar<int>(node["sites"], "model.sites");
      if (sites != 0 && given != sites) invalid(node["sites"], "model.sites", "conflicts with preset " + cfg.model_label);
      sites = given;
    }
    if (name == "chain") {
      cfg.model = model_errors(node, [&] { return chain_model(sites ? sites : 4, t0, u0, g0, omega); });
    } else if (name == "star") {
      cfg.model = model_errors(node, [&] { return star_model(sites ? sites : 4, t0, u0, g0, omega); });
    } else if (name == "ring") {
      cfg.fourier = model_errors(node, [&] { return ring_fourier(sites ? sites : 4, u0, g0, omega); });
      cfg.model = model_errors(node, [&] { return torus_model(*cfg.fourier, t0); });
    } else if (name == "lieb-cell") {
      std::vector<int> cells{1, 2};
      if (node["cells"]) cells = list<int>(node["cells"], "model.cells");
      if (cells.size() != 2) invalid(node["cells"], "model.cells", "expected [rx, ry]");
      cfg.model = model_errors(node, [&] { return lieb_cell_model(cells[0], cells[1], t0, u0, g0, omega); });
    } else {
      invalid(node["preset"], "model.preset", "unknown preset '" + name + "'");
    }
    return;
  }

  if (node["fourier"]) {
    const auto f = node["fourier"];
    allow_keys(f, "model.fourier", {"dimension", "linear_size", "G", "U", "primitive_vectors"});
    FourierCouplingSpec spec;
    if (!f["dimension"] || !f["linear_size"]) invalid(f, "model.fourier", "dimension and linear_size required");
    spec.dimension = scalar<int>(f["dimension"], "model.fourier.dimension");
    spec.linear_size = scalar<int>(f["linear_size"], "model.fourier.linear_size");
    if (spec.dimension < 1 || spec.dimension > 3) invalid(f["dimension"], "model.fourier.dimension", "must be 1, 2 or 3");
    if (spec.linear_size < 1) invalid(f["linear_size"], "model.fourier.linear_size", "must be positive");
    std::size_t count = 1;
    for (int j = 0; j < spec.dimension; ++j) count *= static_cast<std::size_t>(2 * spec.linear_size);
    if (!f["G"] || !f["U"]) invalid(f, "model.fourier", "G and U required");
    spec.G = samples(f["G"], "model.fourier.G", count);
    spec.U = samples(f["U"], "model.fourier.U", count);
    if (f["primitive_vectors"]) {
      const auto pv = f["primitive_vectors"];
      if (!pv.IsSequence()) invalid(pv, "model.fourier.primitive_vectors", "expected a list of vectors");
      for (std::size_t i = 0; i < pv.size(); ++i) {
        spec.primitive_vectors.push_back(list<double>(pv[i], "model.fourier.primitive_vectors[" + std::to_string(i) + "]"));
      }
    }
    cfg.model_label = "fourier";
    cfg.fourier = model_errors(f, [&] { return fourier_model(spec, omega); });
    cfg.model = model_errors(f, [&] { return torus_model(*cfg.fourier, t0); });
    return;
  }

  const RealMatrix t = matrix(node["t"], "model.t");
  const auto n = t.rows();
  const RealMatrix u = node["U"] ? matrix(node["U"], "model.U") : RealMatrix::Zero(n, n);
  const RealMatrix g = node["g"] ? matrix(node["g"], "model.g") : RealMatrix::Zero(n, n);
  std::vector<std::string> names;
  if (node["names"]) {
    names = list<std::string>(node["names"], "model.names");
    if (static_cast<Eigen::Index>(names.size()) != n) invalid(node["names"], "model.names", "one name per site required");
  } else {
    for (Eigen::Index x = 0; x < n; ++x) names.push_back(std::to_string(x));
  }
  std::optional<std::vector<Sublattice>> sub;
  if (node["sublattice"]) {
    sub.emplace();
    for (const auto& s : list<std::string>(node["sublattice"], "model.sublattice")) {
      if (s != "A" && s != "B") invalid(node["sublattice"], "model.sublattice", "entries must be A or B");
      sub->push_back(s == "A" ? Sublattice::A : Sublattice::B);
    }
  }
  cfg.model_label = "explicit";
  cfg.model = model_errors(node, [&] { return build_model(names, sub, t, u, g, omega); });
}

void parse_run(const YAML::Node& node, RunConfig& cfg) {
  if (!node) return;
  allow_keys(node, "run", {"sectors", "cutoffs", "theta", "U0_grid", "k_mesh", "checks", "dense_max_dim"});
  if (node["sectors"]) {
    const auto ms = list<double>(node["sectors"], "run.sectors");
    if (ms.empty()) invalid(node["sectors"], "run.sectors", "must not be empty");
    cfg.sectors_two_m.clear();
    for (const double m : ms) {
      const double two = 2.0 * m;
      if (two != std::round(two)) invalid(node["sectors"], "run.sectors", "M must be a multiple of 1/2");
      const int two_m = static_cast<int>(two);
      if (std::abs(two_m) > static_cast<int>(cfg.model.size()) || (two_m + static_cast<int>(cfg.model.size())) % 2 != 0) {
        invalid(node["sectors"], "run.sectors", "M=" + std::to_string(m) + " is not a half-filling sector");
      }
      cfg.sectors_two_m.push_back(two_m);
    }
  }
  if (node["cutoffs"]) {
    cfg.cutoffs = list<int>(node["cutoffs"], "run.cutoffs");
    require_increasing(cfg.cutoffs, node["cutoffs"], "run.cutoffs");
    if (cfg.cutoffs.front() < 0) invalid(node["cutoffs"], "run.cutoffs", "must be nonnegative");
  }
  if (node["theta"]) {
    cfg.thetas = list<double>(node["theta"], "run.theta");
    require_increasing(cfg.thetas, node["theta"], "run.theta");
    if (cfg.thetas.front() < 1.0) invalid(node["theta"], "run.theta", "values must be >= 1");
  }
  if (node["U0_grid"]) {
    cfg.u0_grid = list<double>(node["U0_grid"], "run.U0_grid");
    require_increasing(cfg.u0_grid, node["U0_grid"], "run.U0_grid");
    if (cfg.u0_grid.front() < 0.0) invalid(node["U0_grid"], "run.U0_grid", "values must be nonnegative");
  }
  if (node["k_mesh"]) {
    const auto k = node["k_mesh"];
    if (!(k.IsScalar() && k.Scalar() == "all")) {
      const auto ks = list<int>(k, "run.k_mesh");
      const std::size_t size = cfg.fourier ? cfg.fourier->lattice.size() : 0;
      for (const int i : ks) {
        if (i < 0 || static_cast<std::size_t>(i) >= size) invalid(k, "run.k_mesh", "mesh index out of range");
        cfg.k_mesh.push_back(static_cast<std::size_t>(i));
      }
    }
  }
  if (node["checks"]) {
    cfg.checks = list<std::string>(node["checks"], "run.checks");
    for (const auto& c : cfg.checks) {
      if (std::find(kCheckNames.begin(), kCheckNames.end(), c) == kCheckNames.end()) {
        invalid(node["checks"], "run.checks", "unknown check '" + c + "'");
      }
    }
  }
  if (node["dense_max_dim"]) {
    const int d = scalar<int>(node["dense_max_dim"], "run.dense_max_dim");
    if (d < 0) invalid(node["dense_max_dim"], "run.dense_max_dim", "must be nonnegative");
    cfg.solver.dense_max_dim = static_cast<std::size_t>(d);
  }
}

void parse_output(const YAML::Node& node, RunConfig& cfg) {
  if (!node) return;
  allow_keys(node, "output", {"directory", "formats"});
  if (node["directory"]) cfg.output_dir = scalar<std::string>(node["directory"], "output.directory");
  if (node["formats"]) {
    cfg.formats = list<std::string>(node["formats"], "output.formats");
    for (const auto& f : cfg.formats) {
      if (f != "json" && f != "csv" && f != "text") invalid(node["formats"], "output.formats", "unknown format '" + f + "'");
    }
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(e.mark.line + 1) + ", column " +
                                           std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw Error(ErrorCode::ParseError, "line 1, column 1: top level must be a mapping");
  allow_keys(root, "config", {"model", "run", "output"});
  RunConfig cfg;
  parse_model(root["model"], cfg);
  parse_run(root["run"], cfg);
  parse_output(root["output"], cfg);
  if (cfg.checks.empty()) {
    cfg.checks = {"conditions", "uniqueness", "total-spin", "sign-pattern", "lro", "heisenberg"};
    if (cfg.fourier) cfg.checks.push_back("susceptibility");
    if (root["run"] && root["run"]["theta"]) cfg.checks.push_back("adiabatic");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hhed
