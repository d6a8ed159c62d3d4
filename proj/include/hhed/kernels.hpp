#pragma once
// Inner loops shared by the eigensolvers: sparse matrix-vector products and
// vector reductions. Every kernel exists twice: a plain serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`.
//
// The parallel reductions sum fixed-size blocks and then combine the block
// partials in index order, so their result does not depend on the number of
// threads. The parallel spmv computes each row sequentially and is therefore
// bitwise identical to the serial one.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hhed {

using Complex = std::complex<double>;

/// Compressed sparse row storage. Column indices within a row are sorted.
template <class Scalar>
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> col;
  std::vector<Scalar> val;

  std::size_t nnz() const { return val.size(); }
};

namespace kernels {

inline constexpr std::size_t kReductionBlock = 2048;

namespace serial {

template <class Scalar>
void spmv(const CsrMatrix<Scalar>& a, std::span<const Scalar> x, std::span<Scalar> y);

/// conj(x) . y
template <class Scalar>
Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y);

/// y += alpha * x
template <class Scalar>
void axpy(Scalar alpha, std::span<const Scalar> x, std::span<Scalar> y);

template <class Scalar>
double norm(std::span<const Scalar> x);

}  // namespace serial

namespace parallel {

template <class Scalar>
void spmv(const CsrMatrix<Scalar>& a, std::span<const Scalar> x, std::span<Scalar> y);

template <class Scalar>
Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y);

template <class Scalar>
void axpy(Scalar alpha, std::span<const Scalar> x, std::span<Scalar> y);

template <class Scalar>
double norm(std::span<const Scalar> x);

}  // namespace parallel

/// Number of OpenMP threads currently in use for parallel regions.
int thread_count();
void set_thread_count(int n);

}  // namespace kernels
}  // namespace hhed
