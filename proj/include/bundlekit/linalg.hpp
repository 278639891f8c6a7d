#ifndef BUNDLEKIT_LINALG_HPP
#define BUNDLEKIT_LINALG_HPP

#include <optional>
#include <vector>

#include "field.hpp"

namespace bundlekit {

template <class Field>
using DenseMatrix = std::vector<std::vector<typename Field::Elem>>;

/// Reduced row echelon form in place; returns the pivot columns.
template <class Field>
std::vector<int> rref(const Field& f, DenseMatrix<Field>& m, int ncols)
{
  std::vector<int> pivots;
  int row = 0;
  const int nrows = static_cast<int>(m.size());
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int piv = -1;
    for (int r = row; r < nrows; ++r)
      if (!f.is_zero(m[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    auto inv = f.inv(m[row][col]);
    for (int c = col; c < static_cast<int>(m[row].size()); ++c) m[row][c] = f.mul(m[row][c], inv);
    for (int r = 0; r < nrows; ++r) {
      if (r == row || f.is_zero(m[r][col])) continue;
      auto factor = m[r][col];
      for (int c = col; c < static_cast<int>(m[r].size()); ++c)
        if (!f.is_zero(m[row][c])) m[r][c] = f.sub(m[r][c], f.mul(factor, m[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Field>
int rank(const Field& f, DenseMatrix<Field> m)
{
  if (m.empty()) return 0;
  const int ncols = static_cast<int>(m[0].size());
  // forward elimination only
  int row = 0;
  const int nrows = static_cast<int>(m.size());
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int piv = -1;
    for (int r = row; r < nrows; ++r)
      if (!f.is_zero(m[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    auto inv = f.inv(m[row][col]);
    for (int r = row + 1; r < nrows; ++r) {
      if (f.is_zero(m[r][col])) continue;
      auto factor = f.mul(m[r][col], inv);
      for (int c = col; c < ncols; ++c)
        if (!f.is_zero(m[row][c])) m[r][c] = f.sub(m[r][c], f.mul(factor, m[row][c]));
    }
    ++row;
  }
  return row;
}

/// Basis of {v : m v = 0}.
template <class Field>
std::vector<std::vector<typename Field::Elem>> nullspace(const Field& f, DenseMatrix<Field> m, int ncols)
{
  auto pivots = rref(f, m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename Field::Elem>> basis;
  for (int free_col = 0; free_col < ncols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<typename Field::Elem> v(ncols, f.zero());
    v[free_col] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m[r][free_col]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of m x = b, or nullopt if the system is inconsistent.
template <class Field>
std::optional<std::vector<typename Field::Elem>> solve(const Field& f, DenseMatrix<Field> m,
                                                        const std::vector<typename Field::Elem>& b, int ncols)
{
  for (std::size_t r = 0; r < m.size(); ++r) m[r].push_back(b[r]);
  auto pivots = rref(f, m, ncols + 1);
  if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
  std::vector<typename Field::Elem> x(ncols, f.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][ncols];
  return x;
}

} // namespace bundlekit

#endif // BUNDLEKIT_LINALG_HPP
