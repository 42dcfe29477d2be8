#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace ntu {

inline constexpr int kDefaultCircuitCap = 18;
inline constexpr int kTuSizeCap = 8;

/// Small dense integer matrix, used for weight rows.
struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<long long> a;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}
  static IntMatrix fromRows(const std::vector<std::vector<long long>>& rws);

  long long& at(size_t i, size_t j) { return a[i * cols + j]; }
  long long at(size_t i, size_t j) const { return a[i * cols + j]; }
  std::vector<long long> row(size_t i) const;
  IntMatrix selectCols(const std::vector<size_t>& cols) const;
  bool isZero() const;
  bool operator==(const IntMatrix& o) const = default;
};

/// An ordered multiset of rational column vectors with stable labels.
struct Configuration {
  size_t ambient = 0;
  std::vector<std::string> labels;
  std::vector<RatVector> cols;

  Configuration() = default;
  Configuration(size_t m) : ambient(m) {}

  size_t size() const { return cols.size(); }
  void push(const std::string& label, RatVector v);
  size_t indexOf(const std::string& label) const;
  RatMatrix matrix() const;
  Configuration select(const std::vector<size_t>& idx) const;
  /// All columns integral (fits the fast integer kernel path).
  bool isIntegral() const;
};

/// Support-minimal reduced integer kernel vector, indexed by column position.
struct Circuit {
  std::vector<long long> coeff;

  uint32_t supportMask() const;
  int supportSize() const;
  Circuit negated() const;
  bool operator==(const Circuit& o) const = default;
};

std::vector<long long> applyInt(const IntMatrix& w, const std::vector<long long>& x);
long long maxAbs(const std::vector<long long>& v);

/// Repeated exact rank queries on column subsets of one configuration,
/// with an integer fraction-free fast path.
class RankScanner {
 public:
  explicit RankScanner(const Configuration& cfg);
  int subRank(const std::vector<size_t>& idx) const;

 private:
  const Configuration& a_;
  bool integral_;
  std::vector<std::vector<long long>> intCols_;  // [col][row]
};

/// Reduced integer form of a rational vector: clear denominators, divide by
/// the gcd, first nonzero entry positive. Throws on the zero vector.
std::vector<long long> primitiveInteger(const RatVector& v);

/// All circuits of the configuration, one representative per +- pair followed
/// by its negation, in deterministic (support size, support lex) order.
/// Throws CapExceeded when size() > supportCap.
std::vector<Circuit> circuits(const Configuration& a, int supportCap = kDefaultCircuitCap);

/// First circuit using column `col`, in the same enumeration order, sign
/// normalized so the coefficient at `col` is positive. nullopt if none.
std::optional<Circuit> firstCircuitThrough(const Configuration& a, size_t col,
                                           int supportCap = kDefaultCircuitCap);

/// Brute-force total unimodularity test; min(ambient, size) must be at most
/// kTuSizeCap. Entries outside {-1,0,1} fail immediately.
bool isTotallyUnimodular(const Configuration& a);

/// Circuit-side test that [A; w'] is totally Delta-modular: max over circuits
/// (x,y) of [A | I] of |w'x| <= delta. Requires A totally unimodular.
bool isTotallyDeltaModularStacked(const Configuration& a, const std::vector<long long>& w,
                                  long long delta, int supportCap = kDefaultCircuitCap);

/// Exact max of ||W c||_inf over all circuits of A; 0 when A has no circuits.
long long maxCircuitWeight(const Configuration& a, const IntMatrix& w,
                           int supportCap = kDefaultCircuitCap);

struct ConformalTerm {
  Circuit circuit;
  Rational lambda;  // > 0
};

/// Writes xPrime = x + sum lambda_j c_j with pairwise conformal circuits,
/// at most dim(P) terms, integer lambdas for integer endpoints over regular
/// configurations. Requires Ax = AxPrime and both points within bounds.
std::vector<ConformalTerm> conformalDecompose(const Configuration& a, const RatVector& x,
                                              const RatVector& xPrime,
                                              const std::vector<ExtendedBound>& lo,
                                              const std::vector<ExtendedBound>& hi);

struct Standardized {
  RatMatrix d;                    // r x (n - r)
  std::vector<size_t> colOrder;   // original index per standardized position
  std::vector<size_t> basis;      // original indices forming the identity block
};

/// Row-reduces to a configuration linearly equivalent to [D | I_r] up to the
/// returned column permutation; kernel is preserved.
Standardized standardize(const Configuration& a);

/// Builds the dual configuration [I_{n-r} | -D'] (labels carried over in
/// standardized order).
Configuration dualConfiguration(const Configuration& a);

/// Circuits of the dual configuration, re-indexed to the original columns.
std::vector<Circuit> cocircuits(const Configuration& a, int supportCap = kDefaultCircuitCap);

/// Weight vector equivalent to w (same value on all circuits) vanishing on
/// the given basis columns.
std::vector<long long> zeroOnBasis(const Configuration& a, const std::vector<size_t>& basisIdx,
                                   const std::vector<long long>& w);

/// True iff all circuits crossing the root column carry one weight vector.
/// Requires a 2-connected configuration (checked unless assumeTwoConnected).
bool isTame(const Configuration& a, const IntMatrix& w, size_t rootCol,
            bool assumeTwoConnected = false, int supportCap = kDefaultCircuitCap);

}  // namespace ntu
