#include "core/linalg.hpp"

#include "core/errors.hpp"

namespace qes {

Polynomial characteristic_polynomial(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  const Field& f = m.field();
  if (n == 0) return Polynomial::constant(f.one());

  std::vector<Polynomial> a(n * n);
  auto at = [&](std::size_t i, std::size_t j) -> Polynomial& { return a[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      at(i, j) = Polynomial({-m(i, j), i == j ? f.one() : f.zero()});

  Polynomial previous = Polynomial::constant(f.one());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Polynomial pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const Polynomial numerator = pivot * at(i, j) - at(i, k) * at(k, j);
        auto [quotient, remainder] = numerator.divmod(previous);
        if (f.is_exact() && !remainder.is_zero()) {
          throw Error(ErrorCode::NumericalFailure, "inexact Bareiss division");
        }
        at(i, j) = std::move(quotient);
      }
    }
    previous = pivot;
  }
  return at(n - 1, n - 1);
}

std::vector<std::vector<Scalar>> kernel_basis(const Matrix& m) {
  const Field& f = m.field();
  if (!f.is_exact()) throw Error(ErrorCode::InvalidArgument, "kernel_basis needs an exact field");
  Matrix r = m;
  const std::size_t rows = r.rows();
  const std::size_t cols = r.cols();

  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && r(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(r(p, j), r(row, j));
    const Scalar inv = r(row, c).inv();
    for (std::size_t j = 0; j < cols; ++j) r(row, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || r(i, c).is_zero()) continue;
      const Scalar factor = r(i, c);
      for (std::size_t j = 0; j < cols; ++j) r(i, j) -= factor * r(row, j);
    }
    pivot_cols.push_back(c);
    ++row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, f.zero());
    v[free] = f.one();
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qes
