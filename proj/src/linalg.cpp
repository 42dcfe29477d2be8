#include "linalg.hpp"

#include <sstream>

namespace ntu {

RatVector ratVectorOf(const std::vector<long long>& v) {
  RatVector r;
  r.reserve(v.size());
  for (long long x : v) r.emplace_back(x);
  return r;
}

bool isZeroVector(const RatVector& v) {
  for (const auto& x : v)
    if (!x.isZero()) return false;
  return true;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw ValidationError("dot: dimension mismatch");
  Rational s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVector add(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw ValidationError("add: dimension mismatch");
  RatVector r(a);
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw ValidationError("sub: dimension mismatch");
  RatVector r(a);
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

RatVector scale(const Rational& s, const RatVector& v) {
  RatVector r(v);
  for (auto& x : r) x *= s;
  return r;
}

int lexCompare(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw ValidationError("lexCompare: dimension mismatch");
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

Rational maxNorm(const RatVector& v) {
  Rational m;
  for (const auto& x : v) {
    Rational a = x.abs();
    if (a > m) m = a;
  }
  return m;
}

std::string vecStr(const RatVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].str();
  }
  os << ")";
  return os.str();
}

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

RatMatrix RatMatrix::fromInt(const std::vector<std::vector<long long>>& rows) {
  size_t r = rows.size();
  size_t c = r ? rows[0].size() : 0;
  RatMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ValidationError("fromInt: ragged rows");
    for (size_t j = 0; j < c; ++j) m.at(i, j) = Rational(rows[i][j]);
  }
  return m;
}

RatVector RatMatrix::row(size_t i) const {
  RatVector v(cols_);
  for (size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

RatVector RatMatrix::col(size_t j) const {
  RatVector v(rows_);
  for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void RatMatrix::setRow(size_t i, const RatVector& v) {
  if (v.size() != cols_) throw ValidationError("setRow: dimension mismatch");
  for (size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

void RatMatrix::setCol(size_t j, const RatVector& v) {
  if (v.size() != rows_) throw ValidationError("setCol: dimension mismatch");
  for (size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatVector RatMatrix::apply(const RatVector& x) const {
  if (x.size() != cols_) throw ValidationError("apply: dimension mismatch");
  RatVector r(rows_);
  for (size_t i = 0; i < rows_; ++i) {
    Rational s;
    for (size_t j = 0; j < cols_; ++j) s += at(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

RatMatrix RatMatrix::submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
  RatMatrix m(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
  return m;
}

RatMatrix RatMatrix::selectCols(const std::vector<size_t>& cols) const {
  RatMatrix m(rows_, cols.size());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(i, cols[j]);
  return m;
}

namespace {

// Reduced row echelon form, in place. Returns pivot column per pivot row.
std::vector<size_t> rref(RatMatrix& m) {
  std::vector<size_t> pivots;
  size_t pr = 0;
  for (size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
    size_t sel = pr;
    while (sel < m.rows() && m.at(sel, c).isZero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pr)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(pr, j));
    Rational inv = Rational(1) / m.at(pr, c);
    for (size_t j = 0; j < m.cols(); ++j) m.at(pr, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == pr || m.at(i, c).isZero()) continue;
      Rational f = m.at(i, c);
      for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(pr, j);
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

}  // namespace

int rank(const RatMatrix& m) {
  RatMatrix w = m;
  return static_cast<int>(rref(w).size());
}

std::vector<RatVector> kernelBasis(const RatMatrix& m) {
  RatMatrix w = m;
  std::vector<size_t> pivots = rref(w);
  std::vector<bool> isPivot(m.cols(), false);
  for (size_t c : pivots) isPivot[c] = true;
  std::vector<RatVector> basis;
  for (size_t c = 0; c < m.cols(); ++c) {
    if (isPivot[c]) continue;
    RatVector v(m.cols());
    v[c] = Rational(1);
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w.at(i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant: non-square input");
  size_t n = m.rows();
  RatMatrix w = m;
  Rational det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t sel = c;
    while (sel < n && w.at(sel, c).isZero()) ++sel;
    if (sel == n) return Rational(0);
    if (sel != c) {
      for (size_t j = 0; j < n; ++j) std::swap(w.at(sel, j), w.at(c, j));
      det = -det;
    }
    det *= w.at(c, c);
    Rational inv = Rational(1) / w.at(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (w.at(i, c).isZero()) continue;
      Rational f = w.at(i, c) * inv;
      for (size_t j = c; j < n; ++j) w.at(i, j) -= f * w.at(c, j);
    }
  }
  return det;
}

bool solveLinear(const RatMatrix& a, const RatVector& b, RatVector& out) {
  if (a.rows() != b.size()) throw ValidationError("solveLinear: dimension mismatch");
  RatMatrix w(a.rows(), a.cols() + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) w.at(i, j) = a.at(i, j);
    w.at(i, a.cols()) = b[i];
  }
  std::vector<size_t> pivots = rref(w);
  // Inconsistent if a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == a.cols()) return false;
  out.assign(a.cols(), Rational());
  for (size_t i = 0; i < pivots.size(); ++i) out[pivots[i]] = w.at(i, a.cols());
  return true;
}

std::vector<size_t> greedyColumnBasis(const RatMatrix& m) {
  std::vector<size_t> basis;
  RatMatrix acc(m.rows(), 0);
  int r = 0;
  for (size_t j = 0; j < m.cols(); ++j) {
    std::vector<size_t> cand = basis;
    cand.push_back(j);
    RatMatrix sub = m.selectCols(cand);
    if (rank(sub) == static_cast<int>(cand.size())) {
      basis.push_back(j);
      ++r;
    }
    if (static_cast<size_t>(r) == m.rows()) break;
  }
  return basis;
}

}  // namespace ntu
