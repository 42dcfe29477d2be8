#pragma once

#include <random>

#include "instance.hpp"

namespace ntu {

struct GenOptions {
  std::string kind = "mcicp";
  uint64_t seed = 1;
  long long k = 1;
  long long delta = 1;
  size_t nVars = 5;   // ip_general / ip_equality variable count
  size_t nVerts = 5;  // graph kinds
  size_t nEdges = 7;
  bool graphed = true;   // mcicp: emit the realizing graph
  bool twoBag = false;   // mcipp: attach a two-bag tree decomposition
  long long extraCols = 0;  // ip_general
};

/// Deterministic random instance passing the loader's validation.
/// Throws CapExceeded when rejection sampling exhausts its budget.
Instance generateInstance(const GenOptions& opt);

}  // namespace ntu
