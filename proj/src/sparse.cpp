#include "hhed/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hhed/error.hpp"

namespace hhed {

SparseOperator SparseOperator::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries) {
  if (cols > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::DimensionTooLarge, "operator column count exceeds 32-bit index range");
  }
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw Error(ErrorCode::ShapeMismatch, "triplet index out of range");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseOperator op;
  op.csr_.rows = rows;
  op.csr_.cols = cols;
  op.csr_.row_ptr.assign(rows + 1, 0);
  op.csr_.col.reserve(entries.size());
  op.csr_.val.reserve(entries.size());

  std::size_t i = 0;
  while (i < entries.size()) {
    const std::size_t r = entries[i].row;
    const std::size_t c = entries[i].col;
    Complex sum = 0.0;
    while (i < entries.size() && entries[i].row == r && entries[i].col == c) sum += entries[i++].value;
    if (sum == Complex(0.0)) continue;
    op.csr_.col.push_back(static_cast<std::uint32_t>(c));
    op.csr_.val.push_back(sum);
    ++op.csr_.row_ptr[r + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) op.csr_.row_ptr[r + 1] += op.csr_.row_ptr[r];
  return op;
}

SparseOperator SparseOperator::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  auto op = from_triplets(n, n, std::move(t));
  op.hermitian_ = true;
  return op;
}

SparseOperator SparseOperator::zero(std::size_t rows, std::size_t cols) { return from_triplets(rows, cols, {}); }

SparseOperator SparseOperator::diagonal(std::span<const Complex> diag) {
  std::vector<Triplet> t;
  t.reserve(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) t.push_back({i, i, diag[i]});
  return from_triplets(diag.size(), diag.size(), std::move(t));
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& v : csr_.val) m = std::max(m, std::abs(v));
  return m;
}

bool SparseOperator::is_real() const {
  return std::all_of(csr_.val.begin(), csr_.val.end(), [](const Complex& v) { return v.imag() == 0.0; });
}

CsrMatrix<double> SparseOperator::real_csr() const {
  if (!is_real()) throw Error(ErrorCode::InvalidArgument, "operator has complex entries");
  CsrMatrix<double> out;
  out.rows = csr_.rows;
  out.cols = csr_.cols;
  out.row_ptr = csr_.row_ptr;
  out.col = csr_.col;
  out.val.resize(csr_.val.size());
  std::transform(csr_.val.begin(), csr_.val.end(), out.val.begin(), [](const Complex& v) { return v.real(); });
  return out;
}

Complex SparseOperator::at(std::size_t row, std::size_t col) const {
  const auto first = csr_.col.begin() + static_cast<std::ptrdiff_t>(csr_.row_ptr[row]);
  const auto last = csr_.col.begin() + static_cast<std::ptrdiff_t>(csr_.row_ptr[row + 1]);
  const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(col));
  if (it == last || *it != col) return 0.0;
  return csr_.val[static_cast<std::size_t>(it - csr_.col.begin())];
}

std::vector<Triplet> SparseOperator::entries() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < csr_.rows; ++r) {
    for (std::size_t k = csr_.row_ptr[r]; k < csr_.row_ptr[r + 1]; ++k) out.push_back({r, csr_.col[k], csr_.val[k]});
  }
  return out;
}

SparseOperator SparseOperator::adjoint() const {
  auto t = entries();
  for (auto& e : t) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  auto op = from_triplets(cols(), rows(), std::move(t));
  op.hermitian_ = hermitian_;
  return op;
}

double SparseOperator::hermiticity_defect() const {
  if (!is_square()) return std::numeric_limits<double>::infinity();
  double defect = 0.0;
  for (std::size_t r = 0; r < csr_.rows; ++r) {
    for (std::size_t k = csr_.row_ptr[r]; k < csr_.row_ptr[r + 1]; ++k) {
      defect = std::max(defect, std::abs(csr_.val[k] - std::conj(at(csr_.col[k], r))));
    }
  }
  return defect;
}

void SparseOperator::mark_hermitian() {
  const double defect = hermiticity_defect();
  if (!(defect <= kHermitianTol * max_abs())) {
    throw Error(ErrorCode::NotHermitian, "Hermitian defect " + std::to_string(defect));
  }
  hermitian_ = true;
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
  for (std::size_t r = 0; r < csr_.rows; ++r) {
    for (std::size_t k = csr_.row_ptr[r]; k < csr_.row_ptr[r + 1]; ++k) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(csr_.col[k])) = csr_.val[k];
    }
  }
  return m;
}

void SparseOperator::apply(std::span<const Complex> x, std::span<Complex> y) const {
  if (x.size() != cols() || y.size() != rows()) throw Error(ErrorCode::ShapeMismatch, "apply: vector size mismatch");
  kernels::parallel::spmv(csr_, x, y);
}

Eigen::VectorXcd SparseOperator::operator*(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y(static_cast<Eigen::Index>(rows()));
  apply({x.data(), static_cast<std::size_t>(x.size())}, {y.data(), static_cast<std::size_t>(y.size())});
  return y;
}

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "multiply: inner dimensions differ");
  const auto& A = a.csr();
  const auto& B = b.csr();
  std::vector<Triplet> out;
  std::vector<Complex> acc(b.cols(), 0.0);
  std::vector<char> used(b.cols(), 0);
  std::vector<std::size_t> pattern;
  for (std::size_t r = 0; r < A.rows; ++r) {
    pattern.clear();
    for (std::size_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) {
      const std::size_t mid = A.col[k];
      for (std::size_t l = B.row_ptr[mid]; l < B.row_ptr[mid + 1]; ++l) {
        const std::size_t c = B.col[l];
        if (!used[c]) {
          used[c] = 1;
          pattern.push_back(c);
        }
        acc[c] += A.val[k] * B.val[l];
      }
    }
    for (std::size_t c : pattern) {
      out.push_back({r, c, acc[c]});
      acc[c] = 0.0;
      used[c] = 0;
    }
  }
  return SparseOperator::from_triplets(a.rows(), b.cols(), std::move(out));
}

SparseOperator add(const SparseOperator& a, const SparseOperator& b, Complex alpha, Complex beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "add: shapes differ");
  auto t = a.entries();
  for (auto& e : t) e.value *= alpha;
  for (auto e : b.entries()) {
    e.value *= beta;
    t.push_back(e);
  }
  return SparseOperator::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseOperator scaled(const SparseOperator& a, Complex alpha) {
  auto t = a.entries();
  for (auto& e : t) e.value *= alpha;
  return SparseOperator::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return add(multiply(a, b), multiply(b, a), 1.0, -1.0);
}

SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) {
  return add(multiply(a, b), multiply(b, a));
}

}  // namespace hhed
