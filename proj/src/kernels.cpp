#include "hhed/kernels.hpp"

#include <cassert>
#include <cmath>

#include <omp.h>

namespace hhed::kernels {

namespace {

template <class Scalar>
Scalar conj_mul(Scalar a, Scalar b) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return a * b;
  } else {
    return std::conj(a) * b;
  }
}

template <class Scalar>
double abs2(Scalar a) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return a * a;
  } else {
    return std::norm(a);
  }
}

}  // namespace

namespace serial {

template <class Scalar>
void spmv(const CsrMatrix<Scalar>& a, std::span<const Scalar> x, std::span<Scalar> y) {
  assert(x.size() == a.cols && y.size() == a.rows);
  for (std::size_t r = 0; r < a.rows; ++r) {
    Scalar acc{};
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.val[k] * x[a.col[k]];
    y[r] = acc;
  }
}

template <class Scalar>
Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
  assert(x.size() == y.size());
  Scalar acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += conj_mul(x[i], y[i]);
  return acc;
}

template <class Scalar>
void axpy(Scalar alpha, std::span<const Scalar> x, std::span<Scalar> y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

template <class Scalar>
double norm(std::span<const Scalar> x) {
  double acc = 0.0;
  for (const auto& v : x) acc += abs2(v);
  return std::sqrt(acc);
}

}  // namespace serial

namespace parallel {

template <class Scalar>
void spmv(const CsrMatrix<Scalar>& a, std::span<const Scalar> x, std::span<Scalar> y) {
  assert(x.size() == a.cols && y.size() == a.rows);
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    Scalar acc{};
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) acc += a.val[k] * x[a.col[k]];
    y[r] = acc;
  }
}

template <class Scalar>
Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const auto blocks = static_cast<std::ptrdiff_t>((n + kReductionBlock - 1) / kReductionBlock);
  std::vector<Scalar> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    Scalar acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += conj_mul(x[i], y[i]);
    partial[b] = acc;
  }
  Scalar total{};
  for (const auto& p : partial) total += p;
  return total;
}

template <class Scalar>
void axpy(Scalar alpha, std::span<const Scalar> x, std::span<Scalar> y) {
  assert(x.size() == y.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <class Scalar>
double norm(std::span<const Scalar> x) {
  const std::size_t n = x.size();
  const auto blocks = static_cast<std::ptrdiff_t>((n + kReductionBlock - 1) / kReductionBlock);
  std::vector<double> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += abs2(x[i]);
    partial[b] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return std::sqrt(total);
}

}  // namespace parallel

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

#define HHED_INSTANTIATE(S)                                                              \
  template void serial::spmv<S>(const CsrMatrix<S>&, std::span<const S>, std::span<S>);  \
  template S serial::dot<S>(std::span<const S>, std::span<const S>);                     \
  template void serial::axpy<S>(S, std::span<const S>, std::span<S>);                    \
  template double serial::norm<S>(std::span<const S>);                                   \
  template void parallel::spmv<S>(const CsrMatrix<S>&, std::span<const S>, std::span<S>); \
  template S parallel::dot<S>(std::span<const S>, std::span<const S>);                   \
  template void parallel::axpy<S>(S, std::span<const S>, std::span<S>);                  \
  template double parallel::norm<S>(std::span<const S>);

HHED_INSTANTIATE(double)
HHED_INSTANTIATE(Complex)

#undef HHED_INSTANTIATE

}  // namespace hhed::kernels
