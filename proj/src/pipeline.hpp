#pragma once

#include "generator.hpp"
#include "instance.hpp"
#include "oracle.hpp"

namespace ntu {

struct SolveOptions {
  bool verify = false;
  bool trace = false;
  long long oracleBudget = 10'000'000;
  std::string tdPath;  // external tree decomposition (mcipp)
};

struct SolveReport {
  enum class Status { Optimal, Infeasible, Unbounded, Unverified };
  Status status = Status::Infeasible;
  std::optional<Rational> value;
  std::vector<std::pair<std::string, Rational>> solution;  // label -> value
  std::vector<std::string> trace;
  bool verifyRequested = false;
  bool verifyPassed = false;
  bool verifyBudgetExceeded = false;
  std::string verifyDetail;
};

std::string statusName(SolveReport::Status s);
std::string reportToJson(const SolveReport& r);
std::string reportToText(const SolveReport& r);

/// Full solve chain per instance kind. The returned report re-checks its
/// own solution at emit time.
SolveReport cmdSolve(const Instance& inst, const SolveOptions& opt);

/// Structural property report (one line per property).
std::string cmdCheck(const Instance& inst);

struct VerifyOutcome {
  enum class Kind { Pass, Fail, Unverified };
  Kind kind = Kind::Pass;
  std::string detail;
  SolveReport report;
};

/// Solves and then re-solves with the brute-force oracle; exact comparison.
VerifyOutcome cmdVerify(const Instance& inst, const SolveOptions& opt);

/// Oracle-side re-solve used by cmdVerify; exposed for the test suites.
struct OracleSolve {
  SolveReport::Status status = SolveReport::Status::Unverified;
  long long value = 0;
};
OracleSolve oracleSolveInstance(const Instance& inst, long long budget);

}  // namespace ntu
