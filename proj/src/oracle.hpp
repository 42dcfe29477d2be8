#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace ntu::oracle {

/// Enumeration budgets. Exceeding one raises CapExceeded; never truncate
/// silently.
struct BruteBudget {
  long long maxPoints = 10'000'000;
  long long maxSubmatrices = 20'000'000;
};

struct BruteResult {
  bool feasible = false;
  long long value = 0;
  std::vector<long long> x;  // lexicographically smallest optimal point
};

/// Ground-truth IP solve by full lattice enumeration over the box, in
/// ascending lexicographic order. All data integer.
BruteResult bruteIp(const std::vector<long long>& p,
                    const std::vector<std::vector<long long>>& a, const std::vector<long long>& b,
                    const std::vector<std::vector<long long>>& w, const std::vector<long long>& d,
                    const std::vector<long long>& lo, const std::vector<long long>& hi,
                    const BruteBudget& budget = {});

/// Visits every optimal point of the same IP (ascending lex order).
/// Returns false when infeasible.
bool bruteIpOptima(const std::vector<long long>& p,
                   const std::vector<std::vector<long long>>& a, const std::vector<long long>& b,
                   const std::vector<std::vector<long long>>& w, const std::vector<long long>& d,
                   const std::vector<long long>& lo, const std::vector<long long>& hi,
                   const BruteBudget& budget,
                   const std::function<void(const std::vector<long long>&)>& visit);

/// Exact max |det| over all square submatrices, by cofactor expansion over
/// column-major subset enumeration.
long long maxAbsSubdeterminant(const std::vector<std::vector<long long>>& m, int sizeCap = 8,
                               const BruteBudget& budget = {});

/// Ground truth for the vertex-potential problem: maximize p'y subject to
/// lo_e <= y(tail) - y(head) <= hi_e per edge and W y = d, over integer
/// potentials up to a uniform shift (y[0] is pinned to 0; valid when each
/// row of p and W sums to zero and the graph is weakly connected).
struct McippBrute {
  bool feasible = false;
  long long value = 0;
  std::vector<long long> y;
};
McippBrute bruteMcipp(size_t nVertices, const std::vector<std::array<long long, 4>>& edges,
                      const std::vector<long long>& p,
                      const std::vector<std::vector<long long>>& w,
                      const std::vector<long long>& d, const BruteBudget& budget = {});

/// Visits every optimum of the same potential problem (y[0] = 0 slice).
bool bruteMcippOptima(size_t nVertices, const std::vector<std::array<long long, 4>>& edges,
                      const std::vector<long long>& p,
                      const std::vector<std::vector<long long>>& w,
                      const std::vector<long long>& d, const BruteBudget& budget,
                      const std::function<void(const std::vector<long long>&)>& visit);

}  // namespace ntu::oracle
