#include <algorithm>
#include <cmath>

#include "hhed/error.hpp"
#include "hhed/ops.hpp"
#include "hhed/solve.hpp"

namespace hhed {

double spin_squared_expectation(const SectorBasis& basis, const Eigen::VectorXcd& psi) {
  if (static_cast<std::size_t>(psi.size()) != basis.dimension()) {
    throw Error(ErrorCode::ShapeMismatch, "state does not match basis");
  }
  if (!basis.key()) {
    const auto ops = spin_operators(basis);
    return psi.dot(ops.s_total_sq * psi).real() / psi.squaredNorm();
  }
  const double m = 0.5 * basis.key()->two_m;
  const std::vector<double> ones(static_cast<std::size_t>(basis.n_sites()), 1.0);
  double value = m * m * psi.squaredNorm();
  if (const auto up = adjacent_sector(basis, +1)) value += 0.5 * (spin_raiser(basis, *up, ones) * psi).squaredNorm();
  if (const auto dn = adjacent_sector(basis, -1)) value += 0.5 * (spin_lowerer(basis, *dn, ones) * psi).squaredNorm();
  return value / psi.squaredNorm();
}

namespace {

SweepPoint make_point(double parameter, const SectorBasis& basis, const SpectrumResult& spec) {
  SweepPoint p;
  p.parameter = parameter;
  p.dimension = basis.dimension();
  p.e0 = spec.eigenvalues.front();
  p.e1 = spec.eigenvalues.size() > 1 ? spec.eigenvalues[1] : spec.eigenvalues.front();
  p.gap = spec.gap;
  p.degeneracy = spec.degeneracy;
  p.spin_sq = spin_squared_expectation(basis, spec.eigenvectors.front());
  return p;
}

void finish(SweepResult& r) {
  if (r.points.size() < 2) {
    r.converged = false;
    return;
  }
  const auto& a = r.points[r.points.size() - 2];
  const auto& b = r.points.back();
  r.energy_change = std::max(std::abs(b.e0 - a.e0), std::abs(b.e1 - a.e1));
  r.observable_change = 0.0;
  for (std::size_t i = 0; i < b.observables.size() && i < a.observables.size(); ++i) {
    r.observable_change = std::max(r.observable_change, std::abs(b.observables[i].second - a.observables[i].second));
  }
  r.converged = r.energy_change <= r.energy_tol && r.observable_change <= r.observable_tol;
}

template <class T>
void require_increasing(std::span<const T> grid, const char* what) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, std::string(what) + " grid must be strictly increasing");
  }
}

}  // namespace

SweepResult cutoff_sweep(const ModelSpec& model, int n_el, int two_m, std::span<const int> cutoffs,
                         const ObservableFn& observables, const SolverOptions& options) {
  require_increasing(cutoffs, "cutoff");
  if (cutoffs.front() < 0) throw Error(ErrorCode::InvalidArgument, "cutoff must be nonnegative");
  SweepResult r;
  r.parameter = "n_ph_max";
  for (const int c : cutoffs) {
    const auto basis = SectorBasis::sector(static_cast<int>(model.size()), {n_el, two_m, c});
    const auto h = assemble_hh_hamiltonian(model, basis);
    const auto spec = ground_spectrum(h, 2, options);
    auto p = make_point(c, basis, spec);
    if (observables) p.observables = observables(SweepContext{model, basis, h, spec});
    r.points.push_back(std::move(p));
  }
  finish(r);
  return r;
}

SweepResult theta_sweep(const ModelSpec& model, int n_el, int two_m, int cutoff, std::span<const double> thetas,
                        const SolverOptions& options) {
  require_increasing(thetas, "theta");
  if (thetas.front() < 1.0) throw Error(ErrorCode::InvalidArgument, "theta grid must start at or above 1");
  const int n = static_cast<int>(model.size());

  const auto electrons = SectorBasis::sector(n, {n_el, two_m, 0});
  const auto hubbard = ground_spectrum(assemble_hubbard(model, electrons), 2, options);
  const Eigen::VectorXcd& reference = hubbard.eigenvectors.front();

  SweepResult r;
  r.parameter = "theta";
  r.reference_energy = hubbard.ground_energy();
  const auto basis = SectorBasis::sector(n, {n_el, two_m, cutoff});
  for (const double theta : thetas) {
    ModelSpec scaled_model = model;
    scaled_model.omega = theta * model.omega;
    const auto h = assemble_hh_hamiltonian(scaled_model, basis);
    const auto spec = ground_spectrum(h, 2, options);
    auto p = make_point(theta, basis, spec);

    const Eigen::VectorXcd frame = lang_firsov_apply(lang_firsov_generator(model, basis, theta), spec.eigenvectors.front());
    Complex overlap = 0.0;
    for (std::size_t f = 0; f < basis.fermion_count(); ++f) {
      overlap += std::conj(reference(static_cast<Eigen::Index>(f))) * frame(static_cast<Eigen::Index>(basis.index(f, 0)));
    }
    p.overlap = std::abs(overlap);
    r.points.push_back(std::move(p));
  }
  finish(r);
  return r;
}

}  // namespace hhed
