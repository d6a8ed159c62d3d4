#include "hhed/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hhed/error.hpp"

namespace hhed {

std::string to_string(SolverKind kind) { return kind == SolverKind::Dense ? "dense" : "lanczos"; }

namespace {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
std::span<const S> cspan(const Vec<S>& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
template <class S>
std::span<S> mspan(Vec<S>& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

template <class S>
void apply(const CsrMatrix<S>& a, const Vec<S>& x, Vec<S>& y) {
  y.resize(static_cast<Eigen::Index>(a.rows));
  kernels::parallel::spmv(a, cspan(x), mspan(y));
}

template <class S>
S dot(const Vec<S>& x, const Vec<S>& y) {
  return kernels::parallel::dot(cspan(x), cspan(y));
}

template <class S>
double norm(const Vec<S>& x) {
  return kernels::parallel::norm(cspan(x));
}

template <class S>
void axpy(S alpha, const Vec<S>& x, Vec<S>& y) {
  kernels::parallel::axpy(alpha, cspan(x), mspan(y));
}

/// Two passes of classical Gram-Schmidt against one or two sets of orthonormal vectors.
template <class S>
void orthogonalize(Vec<S>& w, const std::vector<Vec<S>>& basis, const std::vector<Vec<S>>& more = {}) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) axpy<S>(-dot(q, w), q, w);
    for (const auto& q : more) axpy<S>(-dot(q, w), q, w);
  }
}

template <class S>
Vec<S> to_scalar(const Eigen::VectorXcd& v) {
  if constexpr (std::is_same_v<S, double>) {
    return v.real();
  } else {
    return v;
  }
}

template <class S>
Eigen::VectorXcd to_complex(const Vec<S>& v) {
  return v.template cast<Complex>();
}

struct RitzPair {
  double value = 0.0;
  double residual = 0.0;
};

/// Lowest eigenpair of A restricted to the orthogonal complement of `locked`.
template <class S>
RitzPair lanczos_lowest(const CsrMatrix<S>& a, const std::vector<Vec<S>>& locked, Vec<S> start, double abs_tol,
                        std::size_t max_krylov, std::size_t budget, std::size_t& matvecs, Vec<S>& out) {
  const auto n = static_cast<Eigen::Index>(a.rows);
  const std::size_t room = a.rows - locked.size();
  std::vector<Vec<S>> v;
  std::vector<double> alpha, beta;
  Vec<S> w(n), x(n), ax(n);

  for (;;) {
    orthogonalize(start, locked);
    const double sn = norm(start);
    if (sn == 0.0) throw Error(ErrorCode::NoConvergence, "Lanczos start vector lies in the locked space");
    start /= sn;

    v.clear();
    alpha.clear();
    beta.clear();
    v.push_back(start);
    double scale = 0.0;

    for (std::size_t j = 0;; ++j) {
      apply(a, v[j], w);
      if (++matvecs > budget) throw Error(ErrorCode::NoConvergence, "Lanczos iteration cap reached");
      alpha.push_back(std::real(dot(v[j], w)));
      orthogonalize(w, locked, v);
      const double b = norm(w);
      beta.push_back(b);
      scale = std::max({scale, std::abs(alpha.back()), b});

      const auto m = static_cast<Eigen::Index>(alpha.size());
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const Eigen::VectorXd s = tri.eigenvectors().col(0);
      const double estimate = b * std::abs(s(m - 1));
      const bool exhausted = b <= 1e-13 * scale || j + 1 >= room;
      const bool full = j + 1 >= max_krylov;

      if (estimate <= 0.5 * abs_tol || exhausted || full) {
        x.setZero(n);
        for (Eigen::Index i = 0; i < m; ++i) axpy<S>(static_cast<S>(s(i)), v[static_cast<std::size_t>(i)], x);
        orthogonalize(x, locked);
        x /= norm(x);
        apply(a, x, ax);
        ++matvecs;
        const double rq = std::real(dot(x, ax));
        axpy<S>(static_cast<S>(-rq), x, ax);
        const double residual = norm(ax);
        if (residual <= abs_tol || (exhausted && residual <= 1e3 * abs_tol + 1e-13 * scale)) {
          out = x;
          return {rq, residual};
        }
        if (full || exhausted) {
          start = x;
          break;
        }
      }
      v.push_back(w / b);
    }
  }
}

template <class S>
Vec<S> start_vector(std::size_t run, Eigen::Index n, std::mt19937_64& rng) {
  Vec<S> v(n);
  if (run == 0) {
    v.setOnes();
  } else {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      if constexpr (std::is_same_v<S, double>) {
        v(i) = dist(rng);
      } else {
        const double re = dist(rng);
        const double im = dist(rng);
        v(i) = Complex(re, im);
      }
    }
  }
  return v / norm(v);
}

int count_degenerate(const std::vector<double>& sorted, double tol) {
  int d = 0;
  for (double e : sorted) {
    if (e - sorted.front() <= tol) ++d;
  }
  return d;
}

template <class S>
SpectrumResult lanczos_spectrum(const CsrMatrix<S>& a, std::size_t n_eig, const SolverOptions& opt, double hmax) {
  const auto n = static_cast<Eigen::Index>(a.rows);
  const double abs_tol = opt.residual_tol * hmax;
  const std::size_t budget = std::max<std::size_t>(10 * a.rows, 100);
  const std::size_t wanted = std::min<std::size_t>(n_eig + 1, a.rows);
  std::mt19937_64 rng(opt.seed);

  std::vector<Vec<S>> locked;
  std::vector<double> values, residuals;
  std::size_t matvecs = 0;
  std::size_t run = 0;
  while (locked.size() < a.rows) {
    if (locked.size() >= wanted) {
      auto sorted = values;
      std::sort(sorted.begin(), sorted.end());
      if (static_cast<std::size_t>(count_degenerate(sorted, opt.degeneracy_tol)) < sorted.size()) break;
    }
    Vec<S> start = start_vector<S>(run++, n, rng);
    {
      Vec<S> probe = start;
      orthogonalize(probe, locked);
      if (norm(probe) < 1e-8) start = start_vector<S>(run++, n, rng);
    }
    Vec<S> x;
    const auto pair = lanczos_lowest(a, locked, start, abs_tol, opt.max_krylov, budget, matvecs, x);
    locked.push_back(std::move(x));
    values.push_back(pair.value);
    residuals.push_back(pair.residual);
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });

  SpectrumResult r;
  r.solver = SolverKind::Lanczos;
  r.matvecs = matvecs;
  for (auto i : order) {
    r.eigenvalues.push_back(values[i]);
    r.eigenvectors.push_back(to_complex(locked[i]));
    r.residual_norms.push_back(residuals[i]);
  }
  return r;
}

template <class Matrix>
SpectrumResult dense_spectrum(const Matrix& m, std::size_t n_eig, const SolverOptions& opt) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "dense eigensolver failed");
  const auto& ev = es.eigenvalues();
  std::vector<double> all(ev.data(), ev.data() + ev.size());
  const int degeneracy = count_degenerate(all, opt.degeneracy_tol);
  const std::size_t keep = std::min<std::size_t>(all.size(), std::max<std::size_t>(n_eig, degeneracy));

  SpectrumResult r;
  r.solver = SolverKind::Dense;
  for (std::size_t i = 0; i < keep; ++i) {
    r.eigenvalues.push_back(all[i]);
    r.eigenvectors.push_back(es.eigenvectors().col(static_cast<Eigen::Index>(i)).template cast<Complex>());
  }
  r.degeneracy = degeneracy;
  return r;
}

}  // namespace

SpectrumResult ground_spectrum(const SparseOperator& h, std::size_t n_eigenvalues, const SolverOptions& options) {
  if (!h.is_square()) throw Error(ErrorCode::NotHermitian, "operator is not square");
  if (h.rows() == 0) throw Error(ErrorCode::InvalidArgument, "empty operator");
  if (!h.hermitian() && !(h.hermiticity_defect() <= kHermitianTol * h.max_abs())) {
    throw Error(ErrorCode::NotHermitian, "operator is not Hermitian");
  }
  n_eigenvalues = std::max<std::size_t>(n_eigenvalues, 1);
  const double hmax = h.max_abs();
  const bool real = h.is_real();
  const SolverKind kind = options.force.value_or(h.rows() <= options.dense_max_dim ? SolverKind::Dense
                                                                                     : SolverKind::Lanczos);

  SpectrumResult r;
  if (kind == SolverKind::Dense) {
    if (real) {
      r = dense_spectrum(Eigen::MatrixXd(h.to_dense().real()), n_eigenvalues, options);
    } else {
      r = dense_spectrum(h.to_dense(), n_eigenvalues, options);
    }
  } else {
    r = real ? lanczos_spectrum(h.real_csr(), n_eigenvalues, options, hmax)
             : lanczos_spectrum(h.csr(), n_eigenvalues, options, hmax);
    r.degeneracy = count_degenerate(r.eigenvalues, options.degeneracy_tol);
  }

  if (r.residual_norms.empty()) {
    for (const auto& v : r.eigenvectors) {
      const std::size_t i = r.residual_norms.size();
      r.residual_norms.push_back((h * v - r.eigenvalues[i] * v).norm());
    }
  }
  r.gap = r.eigenvalues.size() > 1 ? r.eigenvalues[1] - r.eigenvalues[0] : std::numeric_limits<double>::infinity();
  return r;
}

// ---------------------------------------------------------------------------

namespace {

template <class S>
Vec<S> deflated_cg(const CsrMatrix<S>& a, double e0, const std::vector<Vec<S>>& ground, const Vec<S>& v, double tol) {
  const auto n = static_cast<Eigen::Index>(a.rows);
  Vec<S> x = Vec<S>::Zero(n);
  const double vnorm = norm(v);
  if (vnorm == 0.0) return x;

  Vec<S> b = v;
  orthogonalize(b, ground);
  const auto shifted = [&](const Vec<S>& in, Vec<S>& out) {
    apply(a, in, out);
    axpy<S>(static_cast<S>(-e0), in, out);
    orthogonalize(out, ground);
  };

  const std::size_t max_iter = std::max<std::size_t>(10 * a.rows, 200);
  Vec<S> r(n), p(n), ap(n), res(n);
  std::size_t iterations = 0;
  // Conjugate gradients with iterative refinement on the true residual.
  for (int refine = 0; refine < 8; ++refine) {
    shifted(x, res);
    r = b - res;
    orthogonalize(r, ground);
    double rr = std::real(dot(r, r));
    if (std::sqrt(rr) <= tol * vnorm) return x;
    p = r;
    while (std::sqrt(rr) > 0.25 * tol * vnorm) {
      if (++iterations > max_iter) throw Error(ErrorCode::NoConvergence, "deflated resolvent: CG iteration cap");
      shifted(p, ap);
      const double pap = std::real(dot(p, ap));
      if (!(pap > 0.0)) throw Error(ErrorCode::NoConvergence, "deflated operator is not positive on the complement");
      const double step = rr / pap;
      axpy<S>(static_cast<S>(step), p, x);
      axpy<S>(static_cast<S>(-step), ap, r);
      orthogonalize(x, ground);
      orthogonalize(r, ground);
      const double rr_new = std::real(dot(r, r));
      p = r + (rr_new / rr) * p;
      orthogonalize(p, ground);
      rr = rr_new;
    }
  }
  shifted(x, res);
  if ((b - res).norm() > tol * vnorm) throw Error(ErrorCode::NoConvergence, "deflated resolvent: residual too large");
  return x;
}

}  // namespace

Eigen::VectorXcd deflated_resolvent_apply(const SparseOperator& h, double e0, std::span<const Eigen::VectorXcd> ground,
                                          const Eigen::VectorXcd& v, double tol) {
  if (!h.is_square() || static_cast<std::size_t>(v.size()) != h.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "resolvent: vector size mismatch");
  }
  // Re-orthonormalize the ground space so the projector is exact to round-off.
  std::vector<Eigen::VectorXcd> q;
  for (const auto& g : ground) {
    Eigen::VectorXcd u = g;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& p : q) u -= p.dot(u) * p;
    }
    const double un = u.norm();
    if (un > 1e-8) q.push_back(u / un);
  }

  const bool real_ground = std::all_of(q.begin(), q.end(), [](const Eigen::VectorXcd& g) { return g.imag().isZero(0.0); });
  if (h.is_real() && real_ground) {
    const auto a = h.real_csr();
    std::vector<Eigen::VectorXd> qr;
    for (const auto& g : q) qr.push_back(g.real());
    // Solve real and imaginary parts separately; each meets the bound on its own norm.
    const Eigen::VectorXd xr = deflated_cg<double>(a, e0, qr, v.real(), tol);
    const Eigen::VectorXd xi = deflated_cg<double>(a, e0, qr, v.imag(), tol);
    Eigen::VectorXcd x(v.size());
    x.real() = xr;
    x.imag() = xi;
    return x;
  }
  return deflated_cg<Complex>(h.csr(), e0, q, v, tol);
}

}  // namespace hhed
