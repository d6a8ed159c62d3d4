#include "hhed/ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hhed/error.hpp"

namespace hhed {

int preceding_modes(const FermionConfig& c, int site, Spin spin) {
  const std::uint32_t below = (1u << site) - 1u;
  if (spin == Spin::Up) return std::popcount(c.up & below);
  return std::popcount(c.up) + std::popcount(c.dn & below);
}

int occupation(const FermionConfig& c, int site) {
  return static_cast<int>((c.up >> site) & 1u) + static_cast<int>((c.dn >> site) & 1u);
}

std::optional<SignedConfig> annihilate(const FermionConfig& c, int site, Spin spin) {
  const std::uint32_t bit = 1u << site;
  if (!(c.word(spin) & bit)) return std::nullopt;
  const int sign = (preceding_modes(c, site, spin) % 2) ? -1 : 1;
  FermionConfig out = c;
  (spin == Spin::Up ? out.up : out.dn) &= ~bit;
  return SignedConfig{out, sign};
}

std::optional<SignedConfig> create(const FermionConfig& c, int site, Spin spin) {
  const std::uint32_t bit = 1u << site;
  if (c.word(spin) & bit) return std::nullopt;
  const int sign = (preceding_modes(c, site, spin) % 2) ? -1 : 1;
  FermionConfig out = c;
  (spin == Spin::Up ? out.up : out.dn) |= bit;
  return SignedConfig{out, sign};
}

std::optional<SignedConfig> hop(const FermionConfig& c, int to, int from, Spin spin) {
  const auto a = annihilate(c, from, spin);
  if (!a) return std::nullopt;
  const auto b = create(a->config, to, spin);
  if (!b) return std::nullopt;
  return SignedConfig{b->config, a->sign * b->sign};
}

namespace {

void require_same_phonons(const SectorBasis& from, const SectorBasis& to) {
  if (from.n_sites() != to.n_sites() || from.n_ph_max() != to.n_ph_max()) {
    throw Error(ErrorCode::SectorMismatch, "bases differ in site count or phonon cutoff");
  }
}

std::size_t target_fermion(const SectorBasis& to, const FermionConfig& c) {
  const auto idx = to.find_fermion(c);
  if (idx == SectorBasis::npos) throw Error(ErrorCode::SectorMismatch, "target configuration outside the codomain basis");
  return idx;
}

/// Lifts a fermion-space map (list of (target, source, amplitude)) to fermion x phonon.
SparseOperator lift_fermion_map(const SectorBasis& from, const SectorBasis& to,
                                const std::vector<std::tuple<std::size_t, std::size_t, Complex>>& fmap) {
  std::vector<Triplet> t;
  const std::size_t np = from.phonon_count();
  t.reserve(fmap.size() * np);
  for (const auto& [ft, fs, amp] : fmap) {
    for (std::size_t p = 0; p < np; ++p) t.push_back({to.index(ft, p), from.index(fs, p), amp});
  }
  return SparseOperator::from_triplets(to.dimension(), from.dimension(), std::move(t));
}

SparseOperator diagonal_from_fermions(const SectorBasis& basis, const std::vector<Complex>& per_fermion) {
  std::vector<Triplet> t;
  t.reserve(basis.dimension());
  for (std::size_t f = 0; f < basis.fermion_count(); ++f) {
    if (per_fermion[f] == Complex(0.0)) continue;
    for (std::size_t p = 0; p < basis.phonon_count(); ++p) {
      const auto i = basis.index(f, p);
      t.push_back({i, i, per_fermion[f]});
    }
  }
  return SparseOperator::from_triplets(basis.dimension(), basis.dimension(), std::move(t));
}

double coulomb_energy(const ModelSpec& model, const FermionConfig& c) {
  const int n = static_cast<int>(model.size());
  double e = 0.0;
  for (int x = 0; x < n; ++x) {
    const int qx = occupation(c, x) - 1;
    if (qx == 0) continue;
    for (int y = 0; y < n; ++y) {
      const int qy = occupation(c, y) - 1;
      if (qy == 0) continue;
      e += 0.5 * model.U(x, y) * qx * qy;
    }
  }
  return e;
}

/// Electron part of H: hopping (off-diagonal in fermions) plus diagonal Coulomb.
void append_hubbard(const ModelSpec& model, const SectorBasis& basis, std::vector<Triplet>& t) {
  const int n = static_cast<int>(model.size());
  const std::size_t np = basis.phonon_count();
  for (std::size_t f = 0; f < basis.fermion_count(); ++f) {
    const auto& c = basis.fermion(f);
    const double diag = coulomb_energy(model, c);
    if (diag != 0.0) {
      for (std::size_t p = 0; p < np; ++p) t.push_back({basis.index(f, p), basis.index(f, p), diag});
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        const double txy = model.t(x, y);
        if (txy == 0.0) continue;
        for (Spin s : {Spin::Up, Spin::Down}) {
          const auto r = hop(c, x, y, s);
          if (!r) continue;
          const auto ft = target_fermion(basis, r->config);
          for (std::size_t p = 0; p < np; ++p) t.push_back({basis.index(ft, p), basis.index(f, p), txy * r->sign});
        }
      }
    }
  }
}

void require_model_fits(const ModelSpec& model, const SectorBasis& basis) {
  if (static_cast<int>(model.size()) != basis.n_sites()) {
    throw Error(ErrorCode::SectorMismatch, "model and basis differ in site count");
  }
}

}  // namespace

SparseOperator annihilator(int site, Spin spin, const SectorBasis& from, const SectorBasis& to) {
  require_same_phonons(from, to);
  std::vector<std::tuple<std::size_t, std::size_t, Complex>> fmap;
  for (std::size_t f = 0; f < from.fermion_count(); ++f) {
    const auto r = annihilate(from.fermion(f), site, spin);
    if (!r) continue;
    fmap.emplace_back(target_fermion(to, r->config), f, static_cast<double>(r->sign));
  }
  return lift_fermion_map(from, to, fmap);
}

SparseOperator creator(int site, Spin spin, const SectorBasis& from, const SectorBasis& to) {
  require_same_phonons(from, to);
  std::vector<std::tuple<std::size_t, std::size_t, Complex>> fmap;
  for (std::size_t f = 0; f < from.fermion_count(); ++f) {
    const auto r = create(from.fermion(f), site, spin);
    if (!r) continue;
    fmap.emplace_back(target_fermion(to, r->config), f, static_cast<double>(r->sign));
  }
  return lift_fermion_map(from, to, fmap);
}

SparseOperator phonon_annihilator(int site, const SectorBasis& basis) {
  std::vector<Triplet> t;
  for (std::size_t f = 0; f < basis.fermion_count(); ++f) {
    for (std::size_t p = 0; p < basis.phonon_count(); ++p) {
      const auto q = basis.phonon_lowered(p, site);
      if (q == SectorBasis::npos) continue;
      t.push_back({basis.index(f, q), basis.index(f, p), std::sqrt(static_cast<double>(basis.phonon(p)[site]))});
    }
  }
  return SparseOperator::from_triplets(basis.dimension(), basis.dimension(), std::move(t));
}

SparseOperator phonon_creator(int site, const SectorBasis& basis) { return phonon_annihilator(site, basis).adjoint(); }

SparseOperator electron_number(const SectorBasis& basis) {
  std::vector<Complex> d(basis.fermion_count());
  for (std::size_t f = 0; f < d.size(); ++f) {
    const auto& c = basis.fermion(f);
    d[f] = static_cast<double>(std::popcount(c.up) + std::popcount(c.dn));
  }
  return diagonal_from_fermions(basis, d);
}

SparseOperator phonon_number(const SectorBasis& basis) {
  std::vector<Triplet> t;
  for (std::size_t f = 0; f < basis.fermion_count(); ++f) {
    for (std::size_t p = 0; p < basis.phonon_count(); ++p) {
      if (basis.phonon_total(p) == 0) continue;
      const auto i = basis.index(f, p);
      t.push_back({i, i, static_cast<double>(basis.phonon_total(p))});
    }
  }
  return SparseOperator::from_triplets(basis.dimension(), basis.dimension(), std::move(t));
}

SparseOperator assemble_hh_hamiltonian(const ModelSpec& model, const SectorBasis& basis) {
  require_model_fits(model, basis);
  const int n = static_cast<int>(model.size());
  std::vector<Triplet> t;
  t.reserve(basis.dimension() * static_cast<std::size_t>(4 * n + 1));
  append_hubbard(model, basis, t);

  const std::size_t np = basis.phonon_count();
  std::vector<double> q(static_cast<std::size_t>(n));
  for (std::size_t f = 0; f < basis.fermion_count(); ++f) {
    const auto& c = basis.fermion(f);
    // Q_y = sum_x g_xy n_x couples to (b_y + b^dag_y).
    for (int y = 0; y < n; ++y) {
      double s = 0.0;
      for (int x = 0; x < n; ++x) s += model.g(x, y) * occupation(c, x);
      q[static_cast<std::size_t>(y)] = s;
    }
    for (std::size_t p = 0; p < np; ++p) {
      const auto col = basis.index(f, p);
      if (basis.phonon_total(p) != 0) t.push_back({col, col, model.omega * basis.phonon_total(p)});
      for (int y = 0; y < n; ++y) {
        const double qy = q[static_cast<std::size_t>(y)];
        if (qy == 0.0) continue;
        const int occ = basis.phonon(p)[y];
        if (const auto lo = basis.phonon_lowered(p, y); lo != SectorBasis::npos) {
          t.push_back({basis.index(f, lo), col, qy * std::sqrt(static_cast<double>(occ))});
        }
        if (const auto hi = basis.phonon_raised(p, y); hi != SectorBasis::npos) {
          t.push_back({basis.index(f, hi), col, qy * std::sqrt(static_cast<double>(occ + 1))});
        }
      }
    }
  }
  auto h = SparseOperator::from_triplets(basis.dimension(), basis.dimension(), std::move(t));
  h.mark_hermitian();
  return h;
}

SparseOperator assemble_hubbard(const ModelSpec& model, const SectorBasis& basis) {
  require_model_fits(model, basis);
  std::vector<Triplet> t;
  append_hubbard(model, basis, t);
  auto h = SparseOperator::from_triplets(basis.dimension(), basis.dimension(), std::move(t));
  h.mark_hermitian();
  return h;
}

SparseOperator assemble_standard_coulomb(const ModelSpec& model, const SectorBasis& basis) {
  require_model_fits(model, basis);
  const int n = static_cast<int>(model.size());
  std::vector<Complex> d(basis.fermion_count());
  for (std::size_t f = 0; f < d.size(); ++f) {
    const auto& c = basis.fermion(f);
    double e = 0.0;
    for (int x = 0; x < n; ++x) {
      e += model.U(x, x) * static_cast<double>(((c.up >> x) & 1u) * ((c.dn >> x) & 1u));
      for (int y = 0; y < n; ++y) {
        if (y != x) e += 0.5 * model.U(x, y) * occupation(c, x) * occupation(c, y);
      }
    }
    d[f] = e;
  }
  return diagonal_from_fermions(basis, d);
}

RealMatrix heisenberg_couplings(const ModelSpec& model) { return 2.0 * model.t.cwiseProduct(model.t); }

SparseOperator assemble_heisenberg(const RealMatrix& J, int n_sites) {
  if (J.rows() != n_sites || J.cols() != n_sites) throw Error(ErrorCode::ShapeMismatch, "J must be n x n");
  if (n_sites > 20) throw Error(ErrorCode::DimensionTooLarge, "spin space too large");
  for (int x = 0; x < n_sites; ++x) {
    for (int y = 0; y < n_sites; ++y) {
      if (J(x, y) != J(y, x) || J(x, y) < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "J must be symmetric and nonnegative");
      }
    }
  }
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<Triplet> t;
  for (std::size_t s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int x = 0; x < n_sites; ++x) {
      for (int y = 0; y < n_sites; ++y) {
        const double j = J(x, y);
        if (j == 0.0) continue;
        if (x == y) {
          diag += j * (0.75 - 0.25);
          continue;
        }
        const bool ux = (s >> x) & 1u;
        const bool uy = (s >> y) & 1u;
        diag += j * ((ux == uy ? 0.25 : -0.25) - 0.25);
        if (ux != uy) {
          // ½ (S+_x S-_y + S-_x S+_y) swaps antiparallel spins.
          const std::size_t flipped = s ^ ((std::size_t{1} << x) | (std::size_t{1} << y));
          t.push_back({flipped, s, 0.5 * j});
        }
      }
    }
    if (diag != 0.0) t.push_back({s, s, diag});
  }
  auto h = SparseOperator::from_triplets(dim, dim, std::move(t));
  h.mark_hermitian();
  return h;
}

SparseOperator heisenberg_magnetization(int n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<Complex> d(dim);
  for (std::size_t s = 0; s < dim; ++s) d[s] = 0.5 * (2.0 * std::popcount(s) - n_sites);
  return SparseOperator::diagonal(d);
}

SparseOperator heisenberg_spin_squared(int n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<Triplet> t;
  for (std::size_t s = 0; s < dim; ++s) {
    for (int x = 0; x < n_sites; ++x) {
      for (int y = 0; y < n_sites; ++y) {
        const bool ux = (s >> x) & 1u;
        const bool uy = (s >> y) & 1u;
        if (x == y) {
          t.push_back({s, s, 0.75});
          continue;
        }
        t.push_back({s, s, ux == uy ? 0.25 : -0.25});
        if (ux != uy) t.push_back({s ^ ((std::size_t{1} << x) | (std::size_t{1} << y)), s, 0.5});
      }
    }
  }
  auto op = SparseOperator::from_triplets(dim, dim, std::move(t));
  op.mark_hermitian();
  return op;
}

namespace {

SparseOperator spin_flip(const SectorBasis& from, const SectorBasis& to, std::span<const double> weights, Spin dst) {
  require_same_phonons(from, to);
  if (weights.size() != static_cast<std::size_t>(from.n_sites())) {
    throw Error(ErrorCode::ShapeMismatch, "one weight per site required");
  }
  const Spin src = dst == Spin::Up ? Spin::Down : Spin::Up;
  std::vector<std::tuple<std::size_t, std::size_t, Complex>> fmap;
  for (std::size_t f = 0; f < from.fermion_count(); ++f) {
    for (int x = 0; x < from.n_sites(); ++x) {
      const double w = weights[static_cast<std::size_t>(x)];
      if (w == 0.0) continue;
      const auto a = annihilate(from.fermion(f), x, src);
      if (!a) continue;
      const auto b = create(a->config, x, dst);
      if (!b) continue;
      fmap.emplace_back(target_fermion(to, b->config), f, w * a->sign * b->sign);
    }
  }
  return lift_fermion_map(from, to, fmap);
}

}  // namespace

SparseOperator spin_raiser(const SectorBasis& from, const SectorBasis& to, std::span<const double> weights) {
  return spin_flip(from, to, weights, Spin::Up);
}

SparseOperator spin_lowerer(const SectorBasis& from, const SectorBasis& to, std::span<const double> weights) {
  return spin_flip(from, to, weights, Spin::Down);
}

std::optional<SectorBasis> adjacent_sector(const SectorBasis& basis, int delta) {
  if (!basis.key()) return basis;
  SectorKey key = *basis.key();
  key.two_m += 2 * delta;
  const int n_up = key.n_up();
  const int n_dn = key.n_dn();
  if (n_up < 0 || n_dn < 0 || n_up > basis.n_sites() || n_dn > basis.n_sites()) return std::nullopt;
  return SectorBasis::sector(basis.n_sites(), key);
}

SpinOperators spin_operators(const SectorBasis& basis) {
  std::vector<Complex> s3(basis.fermion_count());
  for (std::size_t f = 0; f < s3.size(); ++f) {
    const auto& c = basis.fermion(f);
    s3[f] = 0.5 * (std::popcount(c.up) - std::popcount(c.dn));
  }
  SpinOperators ops{diagonal_from_fermions(basis, s3), adjacent_sector(basis, +1), std::nullopt,
                    adjacent_sector(basis, -1), std::nullopt, SparseOperator{}};
  ops.s3.mark_hermitian();

  const std::vector<double> ones(static_cast<std::size_t>(basis.n_sites()), 1.0);
  SparseOperator total = multiply(ops.s3, ops.s3);
  if (ops.raised) {
    ops.s_plus = spin_raiser(basis, *ops.raised, ones);
    total = add(total, multiply(ops.s_plus->adjoint(), *ops.s_plus), 1.0, 0.5);
  }
  if (ops.lowered) {
    ops.s_minus = spin_lowerer(basis, *ops.lowered, ones);
    total = add(total, multiply(ops.s_minus->adjoint(), *ops.s_minus), 1.0, 0.5);
  }
  ops.s_total_sq = std::move(total);
  ops.s_total_sq.mark_hermitian();
  return ops;
}

SparseOperator staggered_spin_raiser(const SectorBasis& from, const SectorBasis& to,
                                     std::span<const Sublattice> sublattice, RaiserKind kind) {
  if (sublattice.size() != static_cast<std::size_t>(from.n_sites())) {
    throw Error(ErrorCode::ShapeMismatch, "sublattice map has wrong length");
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(from.n_sites()));
  std::vector<double> w(sublattice.size());
  for (std::size_t x = 0; x < w.size(); ++x) {
    const double gamma = (kind == RaiserKind::Uniform || sublattice[x] == Sublattice::A) ? 1.0 : -1.0;
    w[x] = norm * gamma;
  }
  return spin_raiser(from, to, w);
}

RealMatrix spin_flip_correlations(const SectorBasis& basis, const Eigen::VectorXcd& psi) {
  const int n = basis.n_sites();
  RealMatrix c = RealMatrix::Zero(n, n);
  const auto lowered = adjacent_sector(basis, -1);
  if (!lowered) return c;
  std::vector<Eigen::VectorXcd> images;
  images.reserve(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y) {
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    w[static_cast<std::size_t>(y)] = 1.0;
    images.push_back(spin_lowerer(basis, *lowered, w) * psi);
  }
  double max_abs = 0.0;
  double max_imag = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const Complex v = images[static_cast<std::size_t>(x)].dot(images[static_cast<std::size_t>(y)]);
      c(x, y) = v.real();
      max_abs = std::max(max_abs, std::abs(v));
      max_imag = std::max(max_imag, std::abs(v.imag()));
    }
  }
  if (max_imag > 1e-10 * std::max(1.0, max_abs)) {
    throw Error(ErrorCode::NonRealResult, "spin-flip correlations have an imaginary part");
  }
  return c;
}

SparseOperator charge_operator(int site, const SectorBasis& basis) {
  std::vector<Complex> d(basis.fermion_count());
  for (std::size_t f = 0; f < d.size(); ++f) d[f] = static_cast<double>(occupation(basis.fermion(f), site) - 1);
  auto op = diagonal_from_fermions(basis, d);
  op.mark_hermitian();
  return op;
}

SparseOperator charge_mode(const SectorBasis& basis, std::span<const Complex> phases) {
  if (phases.size() != static_cast<std::size_t>(basis.n_sites())) {
    throw Error(ErrorCode::ShapeMismatch, "one phase per site required");
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(basis.n_sites()));
  std::vector<Complex> d(basis.fermion_count());
  for (std::size_t f = 0; f < d.size(); ++f) {
    Complex s = 0.0;
    for (int x = 0; x < basis.n_sites(); ++x) {
      const int q = occupation(basis.fermion(f), x) - 1;
      if (q != 0) s += phases[static_cast<std::size_t>(x)] * static_cast<double>(q);
    }
    d[f] = norm * s;
  }
  return diagonal_from_fermions(basis, d);
}

SparseOperator lang_firsov_generator(const ModelSpec& model, const SectorBasis& basis, double theta) {
  require_model_fits(model, basis);
  if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be positive");
  const int n = static_cast<int>(model.size());
  const double pref = 1.0 / (theta * model.omega);
  std::vector<Triplet> t;
  for (std::size_t f = 0; f < basis.fermion_count(); ++f) {
    const auto& c = basis.fermion(f);
    for (int y = 0; y < n; ++y) {
      double qy = 0.0;
      for (int x = 0; x < n; ++x) qy += model.g(x, y) * occupation(c, x);
      if (qy == 0.0) continue;
      for (std::size_t p = 0; p < basis.phonon_count(); ++p) {
        const int occ = basis.phonon(p)[y];
        const auto col = basis.index(f, p);
        if (const auto hi = basis.phonon_raised(p, y); hi != SectorBasis::npos) {
          t.push_back({basis.index(f, hi), col, pref * qy * std::sqrt(static_cast<double>(occ + 1))});
        }
        if (const auto lo = basis.phonon_lowered(p, y); lo != SectorBasis::npos) {
          t.push_back({basis.index(f, lo), col, -pref * qy * std::sqrt(static_cast<double>(occ))});
        }
      }
    }
  }
  return SparseOperator::from_triplets(basis.dimension(), basis.dimension(), std::move(t));
}

Eigen::MatrixXd lang_firsov_unitary(const SparseOperator& generator) {
  if (generator.rows() > kDenseExpMaxDim) {
    throw Error(ErrorCode::DimensionTooLarge, "dense exponential limited to dimension " + std::to_string(kDenseExpMaxDim));
  }
  const Eigen::MatrixXd l = generator.to_dense().real();
  return l.exp();
}

Eigen::VectorXcd lang_firsov_apply(const SparseOperator& generator, const Eigen::VectorXcd& psi) {
  std::vector<double> column_sums(generator.cols(), 0.0);
  for (const auto& e : generator.entries()) column_sums[e.col] += std::abs(e.value);
  const double norm1 = column_sums.empty() ? 0.0 : *std::max_element(column_sums.begin(), column_sums.end());
  const int steps = std::max(1, static_cast<int>(std::ceil(norm1)));
  Eigen::VectorXcd out = psi;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXcd term = out;
    for (int k = 1; k < 200; ++k) {
      term = (generator * term) / (static_cast<double>(k) * steps);
      out += term;
      if (term.norm() <= 1e-17 * out.norm()) break;
    }
  }
  return out;
}

Eigen::MatrixXcd lang_firsov_transform(const SparseOperator& hamiltonian, const SparseOperator& generator) {
  const Eigen::MatrixXd e = lang_firsov_unitary(generator);
  // exp(-L) = exp(L)^T for antisymmetric L.
  return e.cast<Complex>() * hamiltonian.to_dense() * e.transpose().cast<Complex>();
}

}  // namespace hhed
