#pragma once

#include <vector>

#include "rational.hpp"

namespace ntu {

using RatVector = std::vector<Rational>;

RatVector ratVectorOf(const std::vector<long long>& v);
bool isZeroVector(const RatVector& v);
Rational dot(const RatVector& a, const RatVector& b);
RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scale(const Rational& s, const RatVector& v);
/// -1 / 0 / +1 for lexicographic comparison.
int lexCompare(const RatVector& a, const RatVector& b);
Rational maxNorm(const RatVector& v);
std::string vecStr(const RatVector& v);

/// Dense row-major rational matrix.
class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RatMatrix identity(size_t n);
  static RatMatrix fromInt(const std::vector<std::vector<long long>>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  RatVector row(size_t i) const;
  RatVector col(size_t j) const;
  void setRow(size_t i, const RatVector& v);
  void setCol(size_t j, const RatVector& v);
  RatMatrix transpose() const;
  RatVector apply(const RatVector& x) const;  // A * x
  RatMatrix submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const;
  RatMatrix selectCols(const std::vector<size_t>& cols) const;
  bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  size_t rows_, cols_;
  std::vector<Rational> a_;
};

/// Exact rank by Gaussian elimination.
int rank(const RatMatrix& m);

/// Basis of {x : Mx = 0}; size is cols - rank. Deterministic: reduced
/// row echelon construction with unit entries at the free columns.
std::vector<RatVector> kernelBasis(const RatMatrix& m);

/// Exact determinant; throws ValidationError on non-square input.
Rational determinant(const RatMatrix& m);

/// Solves Ax = b for square nonsingular A; returns empty vector when A is
/// singular or the system is inconsistent.
bool solveLinear(const RatMatrix& a, const RatVector& b, RatVector& out);

/// Indices of a lexicographically-first maximal independent column set.
std::vector<size_t> greedyColumnBasis(const RatMatrix& m);

}  // namespace ntu
