#include "adjforge/linear_solve.hpp"

#include <algorithm>

#include "adjforge/error.hpp"

namespace adjforge {

LinearSolution solve_linear(std::vector<std::vector<Coefficient>> a, std::vector<Coefficient> b) {
  if (a.size() != b.size())
    throw ArgumentError("linear system has mismatched right-hand side");
  const std::size_t rows = a.size();
  const std::size_t n = rows ? a[0].size() : 0;
  for (const auto &r : a)
    if (r.size() != n)
      throw ArgumentError("linear system rows differ in length");
  std::vector<std::ptrdiff_t> pivot_row(n, -1);
  std::size_t next_row = 0;
  for (std::size_t col = n; col-- > 0 && next_row < rows;) {
    std::size_t r = next_row;
    while (r < rows && a[r][col].is_zero())
      ++r;
    if (r == rows)
      continue;
    std::swap(a[r], a[next_row]);
    std::swap(b[r], b[next_row]);
    const Coefficient inv = a[next_row][col].inverse();
    for (auto &x : a[next_row])
      x *= inv;
    b[next_row] *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == next_row || a[k][col].is_zero())
        continue;
      const Coefficient f = a[k][col];
      for (std::size_t j = 0; j < n; ++j)
        if (!a[next_row][j].is_zero())
          a[k][j] -= f * a[next_row][j];
      b[k] -= f * b[next_row];
    }
    pivot_row[col] = static_cast<std::ptrdiff_t>(next_row);
    ++next_row;
  }
  LinearSolution sol;
  for (std::size_t k = next_row; k < rows; ++k)
    if (!b[k].is_zero())
      sol.consistent = false;
  for (std::size_t j = 0; j < n; ++j)
    if (pivot_row[j] < 0)
      sol.free.push_back(j);
  sol.constant.assign(n, Coefficient());
  sol.in_terms_of_free.assign(n, std::vector<Coefficient>(sol.free.size()));
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row[j] < 0) {
      auto pos = std::find(sol.free.begin(), sol.free.end(), j) - sol.free.begin();
      sol.in_terms_of_free[j][static_cast<std::size_t>(pos)] = Coefficient(1);
      continue;
    }
    const auto &row = a[static_cast<std::size_t>(pivot_row[j])];
    sol.constant[j] = b[static_cast<std::size_t>(pivot_row[j])];
    for (std::size_t f = 0; f < sol.free.size(); ++f)
      sol.in_terms_of_free[j][f] = -row[sol.free[f]];
  }
  return sol;
}

} // namespace adjforge
