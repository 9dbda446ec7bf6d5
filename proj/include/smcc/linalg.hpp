#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <optional>

#include "smcc/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace smcc {

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Rank over the rationals, by fraction-exact Gaussian elimination.
int exact_rank(RatMatrix a);

/// Unique solution of a square system, or nullopt when the matrix is
/// singular. Exact; pivots are never compared against a tolerance.
std::optional<RatVector> solve_square(RatMatrix a, RatVector rhs);

}  // namespace smcc
