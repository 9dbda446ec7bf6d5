#include "smcc/linalg.hpp"

namespace smcc {

int exact_rank(RatMatrix a) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) a.row(pivot).swap(a.row(rank));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (a(r, col) == 0) continue;
      Rational factor = a(r, col) / a(rank, col);
      for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= factor * a(rank, c);
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::optional<RatVector> solve_square(RatMatrix a, RatVector rhs) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || rhs.size() != n) return std::nullopt;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = col; r < n; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      std::swap(rhs(pivot), rhs(col));
    }
    Rational inv = a(col, col);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Rational factor = a(r, col) / inv;
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
      rhs(r) -= factor * rhs(col);
    }
  }
  RatVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = rhs(i) / a(i, i);
  return x;
}

}  // namespace smcc
