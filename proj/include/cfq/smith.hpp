/**
 * @file smith.hpp
 *
 * Dense integer matrices over arbitrary-precision integers and the Smith
 * normal form with unimodular transforms, plus the congruence normal form
 * of skew-symmetric matrices (hyperbolic block diagonalization).
 */
#ifndef CFQ_SMITH_HPP
#define CFQ_SMITH_HPP

#include <gmpxx.h>

#include <vector>

namespace cfq {

using Int = mpz_class;

/// Row-major dense matrix of arbitrary-precision integers.
class IntMat {
public:
  IntMat() = default;
  IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}
  static IntMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Int& operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  IntMat operator*(const IntMat& o) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const = default;

  std::vector<Int> col(int c) const;
  std::vector<Int> apply(const std::vector<Int>& x) const;  ///< matrix * vector

  void swapRows(int i, int j);
  void swapCols(int i, int j);
  void addRow(int dst, int src, const Int& k);  ///< row dst += k * row src
  void addCol(int dst, int src, const Int& k);
  void negateRow(int i);
  void negateCol(int i);

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// U * A * V = D with U, V unimodular and D in Smith normal form
/// (diagonal, nonnegative, each divisor divides the next).
struct SmithResult {
  IntMat U, D, V;
  int rank = 0;                     ///< number of nonzero diagonal entries
  std::vector<Int> divisors;        ///< the nonzero diagonal entries
};

SmithResult smithNormalForm(const IntMat& A);

/// P^T * A * P = block-diag([0 d1; -d1 0], ..., [0 dm; -dm 0], 0) for a
/// skew-symmetric A, with P unimodular and d1 | d2 | ... | dm positive.
struct SkewNormalResult {
  IntMat P;
  std::vector<Int> blockDivisors;  ///< d1..dm
};

SkewNormalResult skewNormalForm(const IntMat& A);

/// Solve A x = b over the integers.  Returns false when no integral
/// solution exists; otherwise stores one solution in x.
bool solveIntegral(const IntMat& A, const std::vector<Int>& b, std::vector<Int>& x);

}  // namespace cfq

#endif
