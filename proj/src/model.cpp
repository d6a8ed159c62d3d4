#include "hhed/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

#include "hhed/error.hpp"

namespace hhed {

std::size_t ModelSpec::count(Sublattice s) const {
  return static_cast<std::size_t>(std::count(sublattice.begin(), sublattice.end(), s));
}

double ModelSpec::expected_total_spin() const {
  const auto a = static_cast<double>(count(Sublattice::A));
  const auto b = static_cast<double>(count(Sublattice::B));
  return 0.5 * std::abs(b - a);
}

namespace {

void require_square(const RealMatrix& m, std::size_t n, const char* name) {
  if (m.rows() != static_cast<Eigen::Index>(n) || m.cols() != static_cast<Eigen::Index>(n)) {
    throw Error(ErrorCode::ShapeMismatch, std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
  }
}

void require_symmetric(const RealMatrix& m, const char* name) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) {
        throw Error(ErrorCode::AsymmetricMatrix, std::string(name) + "(" + std::to_string(i) + "," +
                                                     std::to_string(j) + ") != " + name + "(" + std::to_string(j) +
                                                     "," + std::to_string(i) + ")");
      }
    }
  }
}

}  // namespace

bool is_connected(const RealMatrix& t) {
  const auto n = static_cast<std::size_t>(t.rows());
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop();
    for (std::size_t y = 0; y < n; ++y) {
      if (!seen[y] && t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) != 0.0) {
        seen[y] = 1;
        ++reached;
        queue.push(y);
      }
    }
  }
  return reached == n;
}

std::vector<Sublattice> check_bipartition(const RealMatrix& t, std::optional<std::span<const Sublattice>> proposed,
                                          bool require_connected) {
  const auto n = static_cast<std::size_t>(t.rows());
  if (t.cols() != t.rows()) throw Error(ErrorCode::ShapeMismatch, "t must be square");
  for (std::size_t x = 0; x < n; ++x) {
    if (t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) != 0.0) {
      throw Error(ErrorCode::SameSublatticeHopping, "t has a nonzero diagonal entry at site " + std::to_string(x));
    }
  }

  if (proposed) {
    if (proposed->size() != n) throw Error(ErrorCode::ShapeMismatch, "sublattice map has wrong length");
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        if (t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) != 0.0 && (*proposed)[x] == (*proposed)[y]) {
          throw Error(ErrorCode::SameSublatticeHopping,
                      "bond (" + std::to_string(x) + "," + std::to_string(y) + ") joins sites of one sublattice");
        }
      }
    }
    if (require_connected && !is_connected(t)) throw Error(ErrorCode::DisconnectedLattice, "bond graph is not connected");
    return {proposed->begin(), proposed->end()};
  }

  std::vector<int> color(n, -1);
  std::size_t components = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (color[start] != -1) continue;
    ++components;
    color[start] = 0;
    std::queue<std::size_t> queue;
    queue.push(start);
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop();
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x || t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) == 0.0) continue;
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          queue.push(y);
        } else if (color[y] == color[x]) {
          throw Error(ErrorCode::OddCycle, "bond graph contains an odd cycle through sites " + std::to_string(x) +
                                               " and " + std::to_string(y));
        }
      }
    }
  }
  if (require_connected && components > 1) throw Error(ErrorCode::DisconnectedLattice, "bond graph is not connected");

  std::vector<Sublattice> out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = color[x] == 0 ? Sublattice::A : Sublattice::B;
  return out;
}

ModelSpec build_model(std::vector<std::string> sites, std::optional<std::vector<Sublattice>> sublattice, RealMatrix t,
                      RealMatrix U, RealMatrix g, double omega) {
  const std::size_t n = sites.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "model needs at least one site");
  if (std::set<std::string>(sites.begin(), sites.end()).size() != n) {
    throw Error(ErrorCode::InvalidArgument, "site identifiers must be unique");
  }
  require_square(t, n, "t");
  require_square(U, n, "U");
  require_square(g, n, "g");
  require_symmetric(t, "t");
  require_symmetric(U, "U");
  require_symmetric(g, "g");
  if (!(omega > 0.0)) throw Error(ErrorCode::NonPositiveOmega, "omega must be positive");

  auto colors = sublattice ? check_bipartition(t, std::span<const Sublattice>(*sublattice), true)
                           : check_bipartition(t, std::nullopt, true);

  return ModelSpec{std::move(sites), std::move(colors), std::move(t), std::move(U), std::move(g), omega};
}

SumRuleReport check_phonon_sum_rule(const RealMatrix& g, double tol) {
  SumRuleReport report;
  report.column_sums = g.colwise().sum().transpose();
  report.holds = true;
  if (report.column_sums.size() > 0) {
    const double ref = report.column_sums(0);
    for (Eigen::Index y = 1; y < report.column_sums.size(); ++y) {
      if (std::abs(report.column_sums(y) - ref) > tol) report.holds = false;
    }
  }
  return report;
}

RealMatrix effective_interaction(const RealMatrix& U, const RealMatrix& g, double omega) {
  RealMatrix out = U - (2.0 / omega) * (g * g.transpose());
  // g g^T is symmetric in exact arithmetic; pin it bitwise.
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < out.cols(); ++j) out(j, i) = out(i, j);
  }
  return out;
}

RealMatrix effective_interaction(const ModelSpec& model) { return effective_interaction(model.U, model.g, model.omega); }

std::string to_string(DefinitenessClass c) {
  switch (c) {
    case DefinitenessClass::PositiveDefinite: return "PD";
    case DefinitenessClass::PositiveSemidefinite: return "PSD";
    case DefinitenessClass::Indefinite: return "Indefinite";
  }
  return "?";
}

Definiteness definiteness(const RealMatrix& m) {
  Definiteness d;
  if (m.size() == 0) return d;
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  d.min_eigenvalue = ev.minCoeff();
  const double spectral_norm = ev.cwiseAbs().maxCoeff();
  d.tolerance = kDefinitenessTol * std::max(1.0, spectral_norm);
  if (d.min_eigenvalue > d.tolerance) {
    d.classification = DefinitenessClass::PositiveDefinite;
  } else if (std::abs(d.min_eigenvalue) <= d.tolerance) {
    d.classification = DefinitenessClass::PositiveSemidefinite;
  } else {
    d.classification = DefinitenessClass::Indefinite;
  }
  return d;
}

// ---------------------------------------------------------------------------

TorusLattice::TorusLattice(int dimension, int linear_size) : dimension_(dimension), linear_size_(linear_size) {
  if (dimension < 1 || dimension > 3) throw Error(ErrorCode::InvalidArgument, "dimension must be 1, 2 or 3");
  if (linear_size < 1) throw Error(ErrorCode::InvalidArgument, "linear size L must be >= 1");
  const int side = 2 * linear_size;
  std::size_t total = 1;
  for (int j = 0; j < dimension; ++j) total *= static_cast<std::size_t>(side);
  coords_.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    std::array<int, 3> c{0, 0, 0};
    for (int j = 0; j < dimension; ++j) {
      c[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(side)) - linear_size + 1;
      rest /= static_cast<std::size_t>(side);
    }
    coords_[i] = c;
  }
}

int TorusLattice::wrap(int n) const {
  const int side = 2 * linear_size_;
  int v = ((n + linear_size_ - 1) % side + side) % side;
  return v - linear_size_ + 1;
}

std::size_t TorusLattice::index_of(std::array<int, 3> c) const {
  const int side = 2 * linear_size_;
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int j = 0; j < dimension_; ++j) {
    const int w = wrap(c[static_cast<std::size_t>(j)]);
    idx += static_cast<std::size_t>(w + linear_size_ - 1) * stride;
    stride *= static_cast<std::size_t>(side);
  }
  return idx;
}

std::size_t TorusLattice::negate(std::size_t k) const {
  auto c = coords_[k];
  for (auto& v : c) v = -v;
  return index_of(c);
}

double TorusLattice::phase(std::size_t k, std::size_t x) const {
  long dotp = 0;
  for (int j = 0; j < dimension_; ++j) {
    dotp += static_cast<long>(coords_[k][static_cast<std::size_t>(j)]) * coords_[x][static_cast<std::size_t>(j)];
  }
  const long side = 2L * linear_size_;
  dotp %= side;
  return 2.0 * std::numbers::pi * static_cast<double>(dotp) / static_cast<double>(side);
}

std::vector<std::pair<std::size_t, std::size_t>> TorusLattice::bonds() const {
  std::set<std::pair<std::size_t, std::size_t>> unique;
  for (std::size_t x = 0; x < size(); ++x) {
    for (int j = 0; j < dimension_; ++j) {
      auto c = coords_[x];
      c[static_cast<std::size_t>(j)] += 1;
      const auto y = index_of(c);
      if (y != x) unique.insert({std::min(x, y), std::max(x, y)});
    }
  }
  return {unique.begin(), unique.end()};
}

std::vector<Sublattice> TorusLattice::sublattices() const {
  std::vector<Sublattice> out(size());
  for (std::size_t x = 0; x < size(); ++x) {
    int s = 0;
    for (int j = 0; j < dimension_; ++j) s += coords_[x][static_cast<std::size_t>(j)];
    out[x] = (s % 2 == 0) ? Sublattice::A : Sublattice::B;
  }
  return out;
}

std::string TorusLattice::site_name(std::size_t x) const {
  std::string s = "(";
  for (int j = 0; j < dimension_; ++j) {
    if (j) s += ",";
    s += std::to_string(coords_[x][static_cast<std::size_t>(j)]);
  }
  return s + ")";
}

std::vector<double> FourierModel::wave_vector(const FourierCouplingSpec& spec, std::size_t k) const {
  const int d = lattice.dimension();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d);
  if (!spec.primitive_vectors.empty()) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        a(i, j) = spec.primitive_vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
    }
  }
  // Rows of b satisfy a_i . b_j = 2 pi delta_ij.
  const Eigen::MatrixXd b = 2.0 * std::numbers::pi * a.inverse().transpose();
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  const auto& l = lattice.coords(k);
  for (int j = 0; j < d; ++j) {
    for (int c = 0; c < d; ++c) {
      out[static_cast<std::size_t>(c)] +=
          l[static_cast<std::size_t>(j)] * b(j, c) / (2.0 * lattice.linear_size());
    }
  }
  return out;
}

FourierModel fourier_model(const FourierCouplingSpec& spec, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::NonPositiveOmega, "omega must be positive");
  TorusLattice lattice(spec.dimension, spec.linear_size);
  const std::size_t n = lattice.size();
  if (spec.G.size() != n || spec.U.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "G and U need one sample per mesh point (" + std::to_string(n) + ")");
  }
  if (!spec.primitive_vectors.empty()) {
    if (spec.primitive_vectors.size() != static_cast<std::size_t>(spec.dimension)) {
      throw Error(ErrorCode::ShapeMismatch, "need one primitive vector per dimension");
    }
    for (const auto& a : spec.primitive_vectors) {
      if (a.size() != static_cast<std::size_t>(spec.dimension)) {
        throw Error(ErrorCode::ShapeMismatch, "primitive vector has wrong length");
      }
    }
  }

  FourierModel out{lattice, RealMatrix(n, n), RealMatrix(n, n), {}, omega, 0.0};
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::complex<double> gs = 0.0, us = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const auto e = std::polar(1.0, lattice.phase(k, x) - lattice.phase(k, y));
        gs += spec.G[k] * e;
        us += spec.U[k] * e;
      }
      gs *= inv_n;
      us *= inv_n;
      out.imaginary_residue = std::max({out.imaginary_residue, std::abs(gs.imag()), std::abs(us.imag())});
      out.g(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = gs.real();
      out.U(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = us.real();
    }
  }
  if (out.imaginary_residue > kFourierTol) {
    throw Error(ErrorCode::NonRealResult, "imaginary residue " + std::to_string(out.imaginary_residue) +
                                              " exceeds tolerance; G(k) and U(k) must be even in k");
  }
  // Round-off can leave the transforms asymmetric in the last bit, and leaves
  // ~1e-17 residue where the exact coupling vanishes; snap both.
  out.g = 0.5 * (out.g + out.g.transpose()).eval();
  out.U = 0.5 * (out.U + out.U.transpose()).eval();
  const auto snap = [](RealMatrix& m, const std::vector<double>& samples) {
    double scale = 0.0;
    for (double v : samples) scale = std::max(scale, std::abs(v));
    m = m.unaryExpr([cut = 1e-14 * scale](double v) { return std::abs(v) <= cut ? 0.0 : v; });
  };
  snap(out.g, spec.G);
  snap(out.U, spec.U);

  out.u_eff_k.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.u_eff_k[k] = spec.U[k] - (2.0 / omega) * spec.G[k] * spec.G[k];
  return out;
}

std::vector<std::complex<double>> fourier_symbol(const TorusLattice& lattice, const RealMatrix& m) {
  const std::size_t n = lattice.size();
  const std::size_t origin = lattice.index_of({0, 0, 0});
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      s += m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(origin)) * std::polar(1.0, -lattice.phase(k, x));
    }
    out[k] = s;
  }
  return out;
}

}  // namespace hhed
