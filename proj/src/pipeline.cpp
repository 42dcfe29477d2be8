#include "pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ntu {

using Json = nlohmann::ordered_json;

std::string statusName(SolveReport::Status s) {
  switch (s) {
    case SolveReport::Status::Optimal: return "optimal";
    case SolveReport::Status::Infeasible: return "infeasible";
    case SolveReport::Status::Unbounded: return "unbounded";
    case SolveReport::Status::Unverified: return "unverified";
  }
  return "?";
}

std::string reportToJson(const SolveReport& r) {
  Json j;
  j["status"] = statusName(r.status);
  if (r.value) j["value"] = r.value->str();
  Json sol = Json::object();
  for (const auto& [label, v] : r.solution) sol[label] = v.str();
  j["solution"] = sol;
  j["trace"] = r.trace;
  if (r.verifyRequested) {
    j["verified"] = r.verifyPassed;
    if (r.verifyBudgetExceeded) j["verification"] = "unverified (budget)";
    else j["verification"] = r.verifyDetail;
  }
  return j.dump(2) + "\n";
}

std::string reportToText(const SolveReport& r) {
  std::ostringstream os;
  os << "status: " << statusName(r.status) << "\n";
  if (r.value) os << "value: " << r.value->str() << "\n";
  if (!r.solution.empty()) {
    os << "solution:";
    for (const auto& [label, v] : r.solution) os << " " << label << "=" << v.str();
    os << "\n";
  }
  for (const auto& t : r.trace) os << "trace: " << t << "\n";
  if (r.verifyRequested) {
    if (r.verifyBudgetExceeded) os << "verification: unverified (budget exceeded)\n";
    else os << "verification: " << (r.verifyPassed ? "pass" : "FAIL") << " " << r.verifyDetail << "\n";
  }
  return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// Equality-form chain: LP, anchoring, decomposition solve. Instances with a
// verified graph take the change of variables to the potential problem.

LpOutcome solveEqualityLp(const EqualityInstance& eq) {
  size_t n = eq.nVars();
  size_t m = eq.a.ambient, k = eq.w.rows;
  RatMatrix a(m + k, n);
  RatVector rhs(m + k);
  RatMatrix am = eq.aMatrix();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) a.at(i, j) = am.at(i, j);
    rhs[i] = Rational(eq.b[i]);
  }
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < n; ++j) a.at(m + i, j) = Rational(eq.w.at(i, j));
    rhs[m + i] = Rational(eq.d[i]);
  }
  RatVector p(n);
  for (size_t j = 0; j < n; ++j) p[j] = Rational(eq.p[j]);
  return lpSolve(a, rhs, finiteBounds(eq.lo), finiteBounds(eq.hi), p);
}

McicpInstance anchoredToMcicp(const AnchoredInstance& anch) {
  McicpInstance mc;
  mc.a = anch.eq.a;
  mc.w = anch.eq.w;
  mc.d = anch.eq.d;
  mc.p = anch.eq.p;
  mc.lo = anch.eq.lo;
  mc.hi = anch.eq.hi;
  mc.delta = anch.eq.delta;
  return mc;
}

struct EqualityChainResult {
  bool feasible = false;
  Rational value;
  std::vector<long long> x;
};

// Solve max p'x : Ax=b, Wx=d, lo<=x<=hi over the integers. The LP must be
// feasible-or-infeasible (never unbounded: the box is finite).
EqualityChainResult solveEqualityChain(const EqualityInstance& eq,
                                       const std::optional<DirectedGraph>& graph,
                                       const std::optional<SpecialTreeDecomposition>& tdIn,
                                       const std::optional<std::vector<std::vector<uint32_t>>>& spIn,
                                       std::vector<std::string>* trace) {
  EqualityChainResult res;
  LpOutcome lp = solveEqualityLp(eq);
  if (lp.status == LpOutcome::Status::Infeasible) {
    if (trace) trace->push_back("relaxation: infeasible");
    return res;
  }
  if (lp.status == LpOutcome::Status::Unbounded)
    throw InvariantViolation("equality chain: unbounded despite finite bounds");
  if (trace) trace->push_back("relaxation value " + lp.value.str());

  AnchoredInstance anch = reduceToCircuitSearch(eq, lp.x);
  if (trace) {
    std::ostringstream os;
    os << "anchor";
    for (long long z : anch.anchor) os << " " << z;
    trace->push_back(os.str());
    trace->push_back("circuit budget " + std::to_string(anch.tMax));
  }

  std::vector<long long> xt;
  long long valueT = 0;
  if (graph) {
    // Change of variables to the potential problem, then the guided DP.
    McippInstance mc = cographicToMcipp(anch, *graph);
    SpecialTreeDecomposition td = tdIn ? *tdIn : trivialTd(mc.g);
    std::vector<std::vector<uint32_t>> sp;
    if (spIn) {
      sp = *spIn;
    } else {
      uint32_t roots = 0;
      for (size_t v = 0; v < mc.g.nV(); ++v)
        for (const auto& row : mc.w)
          if (row[v] != 0) roots |= uint32_t(1) << v;
      for (const auto& bag : td.bags) {
        uint32_t bagMask = 0;
        for (size_t v : bag) bagMask |= uint32_t(1) << v;
        sp.push_back(bruteSuperprofile(mc.g, roots & bagMask));
      }
    }
    if (trace)
      trace->push_back("potential problem: " + std::to_string(td.nNodes()) + " bag(s)");
    McippSolution sol = dpSolve(mc, td, sp);
    if (!sol.feasible) return res;
    xt = mcippSolutionToMcicp(sol.y, *graph);
    valueT = sol.value;
    if (trace) trace->push_back("table value " + std::to_string(sol.value));
  } else {
    McicpInstance mc = anchoredToMcicp(anch);
    auto comps = oneSumComponents(mc.a);
    if (trace) trace->push_back(std::to_string(comps.size()) + " component(s)");
    McicpSolution sol = solveMcicp(mc);
    if (!sol.feasible) return res;
    xt = sol.x;
    valueT = sol.value;
  }
  res.feasible = true;
  res.x.resize(eq.nVars());
  for (size_t j = 0; j < eq.nVars(); ++j) res.x[j] = xt[j] + anch.anchor[j];
  res.value = Rational(valueT) + anch.objectiveOffset;
  // Exactness: re-evaluate the objective on the translated witness.
  {
    long long v = 0;
    for (size_t j = 0; j < eq.nVars(); ++j) v += eq.p[j] * res.x[j];
    if (Rational(v) != res.value)
      throw InvariantViolation("equality chain: value mismatch after translation");
  }
  return res;
}

// ---------------------------------------------------------------------------
// General (inequality) chain.

struct GeneralResult {
  SolveReport::Status status = SolveReport::Status::Infeasible;
  Rational value;
  std::vector<long long> x;  // original variables
};

LpOutcome solveGeneralLp(const GeneralIpInstance& g, const std::vector<long long>& obj) {
  size_t n = g.m.cols, rows = g.m.rows;
  RatMatrix a(rows, n + rows);
  RatVector rhs(rows);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < n; ++j) a.at(i, j) = Rational(g.m.at(i, j));
    a.at(i, n + i) = Rational(1);
    rhs[i] = Rational(g.b[i]);
  }
  std::vector<ExtendedBound> lo(n, ExtendedBound::minusInf()), hi(n, ExtendedBound::plusInf());
  for (size_t i = 0; i < rows; ++i) {
    lo.push_back(ExtendedBound::of(0));
    hi.push_back(ExtendedBound::plusInf());
  }
  RatVector p(n + rows);
  for (size_t j = 0; j < n; ++j) p[j] = Rational(obj[j]);
  LpOutcome out = lpSolve(a, rhs, lo, hi, p);
  if (out.status == LpOutcome::Status::Optimal) out.x.resize(n);
  return out;
}

GeneralResult solveGeneralIp(const GeneralIpInstance& g, std::vector<std::string>* trace,
                             int depth = 0) {
  GeneralResult res;
  LpOutcome lp = solveGeneralLp(g, g.p);
  if (lp.status == LpOutcome::Status::Infeasible) {
    if (trace) trace->push_back("relaxation: infeasible");
    return res;
  }
  if (lp.status == LpOutcome::Status::Unbounded) {
    if (depth > 0) throw InvariantViolation("general chain: unbounded zero objective");
    if (trace) trace->push_back("relaxation: unbounded, re-solving with the zero objective");
    GeneralIpInstance zero = g;
    std::fill(zero.p.begin(), zero.p.end(), 0);
    GeneralResult feas = solveGeneralIp(zero, trace, depth + 1);
    res.status = feas.status == SolveReport::Status::Optimal ? SolveReport::Status::Unbounded
                                                             : SolveReport::Status::Infeasible;
    return res;
  }
  if (trace) trace->push_back("relaxation value " + lp.value.str());

  auto branches = eliminateColumns(g, lp.x);
  if (trace && !g.extraColIdx.empty())
    trace->push_back(std::to_string(branches.size()) + " column assignment(s)");
  bool any = false;
  Rational best;
  std::vector<long long> bestX;
  for (const auto& br : branches) {
    auto eqr = toEqualityForm(br.sub);
    if (eqr.status == EqFormStatus::Infeasible) continue;
    if (eqr.status == EqFormStatus::Unbounded)
      throw InvariantViolation("general chain: branch unbounded under a bounded master");
    auto chain = solveEqualityChain(*eqr.eq, std::nullopt, std::nullopt, std::nullopt, nullptr);
    if (!chain.feasible) continue;
    Rational total = chain.value + br.objOffset;
    if (!any || total > best) {
      any = true;
      best = total;
      // Reconstruct the original variables: the branch's x block first,
      // then the fixed extra columns.
      std::vector<long long> x(g.m.cols, 0);
      size_t keep = 0;
      std::vector<bool> isExtra(g.m.cols, false);
      for (const auto& [c, v] : br.fixed) isExtra[c] = true;
      for (size_t j = 0; j < g.m.cols; ++j)
        if (!isExtra[j]) x[j] = chain.x[keep++];
      for (const auto& [c, v] : br.fixed) x[c] = v;
      bestX = std::move(x);
    }
  }
  if (!any) return res;
  res.status = SolveReport::Status::Optimal;
  res.value = best;
  res.x = bestX;
  return res;
}

void attachSolution(SolveReport& r, const std::vector<std::string>& labels,
                    const std::vector<long long>& x) {
  for (size_t j = 0; j < x.size(); ++j) r.solution.push_back({labels[j], Rational(x[j])});
}

// Emit-time re-check of the reported solution.
void recheck(const Instance& inst, const SolveReport& r) {
  if (r.status != SolveReport::Status::Optimal) return;
  if (!r.value) throw InvariantViolation("report: optimal without a value");
  std::vector<long long> x;
  for (const auto& [label, v] : r.solution) x.push_back(v.toLongLong());
  switch (inst.kind) {
    case InstanceKind::IpGeneral: {
      const auto& g = *inst.general;
      long long val = 0;
      for (size_t j = 0; j < x.size(); ++j) val += g.p[j] * x[j];
      if (Rational(val) != *r.value) throw InvariantViolation("report: value mismatch");
      for (size_t i = 0; i < g.m.rows; ++i) {
        long long s = 0;
        for (size_t j = 0; j < x.size(); ++j) s += g.m.at(i, j) * x[j];
        if (s > g.b[i]) throw InvariantViolation("report: constraint violated");
      }
      break;
    }
    case InstanceKind::IpEquality:
    case InstanceKind::Mcicp: {
      const auto& eq = *inst.equality;
      long long val = 0;
      RatMatrix am = eq.aMatrix();
      RatVector xr(x.size());
      for (size_t j = 0; j < x.size(); ++j) {
        xr[j] = Rational(x[j]);
        val += eq.p[j] * x[j];
        if (x[j] < eq.lo[j] || x[j] > eq.hi[j])
          throw InvariantViolation("report: bound violated");
      }
      if (Rational(val) != *r.value) throw InvariantViolation("report: value mismatch");
      RatVector ax = am.apply(xr);
      for (size_t i = 0; i < eq.b.size(); ++i)
        if (ax[i] != Rational(eq.b[i])) throw InvariantViolation("report: equality violated");
      for (size_t i = 0; i < eq.w.rows; ++i) {
        long long s = 0;
        for (size_t j = 0; j < x.size(); ++j) s += eq.w.at(i, j) * x[j];
        if (s != eq.d[i]) throw InvariantViolation("report: weight target violated");
      }
      break;
    }
    case InstanceKind::Mcipp: {
      const auto& mc = *inst.mcipp;
      long long val = 0;
      for (size_t v = 0; v < x.size(); ++v) val += mc.p[v] * x[v];
      if (Rational(val) != *r.value) throw InvariantViolation("report: value mismatch");
      for (size_t e = 0; e < mc.g.nE(); ++e) {
        long long diff = x[mc.g.edges[e].first] - x[mc.g.edges[e].second];
        if (diff < mc.lo[e] || diff > mc.hi[e])
          throw InvariantViolation("report: difference bound violated");
      }
      for (size_t i = 0; i < mc.w.size(); ++i) {
        long long s = 0;
        for (size_t v = 0; v < x.size(); ++v) s += mc.w[i][v] * x[v];
        if (s != mc.d[i]) throw InvariantViolation("report: weight target violated");
      }
      break;
    }
  }
}

// Anchoring for raw potential instances: route through the edge space so the
// docset-sum guess structure of the DP is justified.
struct McippAnchor {
  McippInstance translated;
  std::vector<long long> anchorY;
  long long offset = 0;
};

McippAnchor anchorMcipp(const McippInstance& inst, std::vector<std::string>* trace) {
  EqualityInstance eq;
  eq.a = cographicConfiguration(inst.g);
  eq.b.assign(eq.a.ambient, 0);
  auto wForms = vertexToEdgeForms(inst.g, inst.w);
  eq.w = IntMatrix(wForms.size(), inst.g.nE());
  for (size_t i = 0; i < wForms.size(); ++i)
    for (size_t e = 0; e < inst.g.nE(); ++e) eq.w.at(i, e) = wForms[i][e];
  eq.d = inst.d;
  auto pForm = vertexToEdgeForms(inst.g, {inst.p});
  eq.p = pForm[0];
  eq.lo = inst.lo;
  eq.hi = inst.hi;
  eq.delta = inst.delta;

  McippAnchor out;
  LpOutcome lp = solveEqualityLp(eq);
  if (lp.status != LpOutcome::Status::Optimal) {
    // Infeasible relaxation: the caller reports infeasible.
    out.translated = inst;
    out.anchorY.assign(inst.g.nV(), 0);
    out.offset = 0;
    if (lp.status == LpOutcome::Status::Unbounded)
      throw InvariantViolation("potential chain: unbounded relaxation despite finite differences");
    out.translated.d.assign(inst.d.size(), 0);
    out.translated.lo.assign(inst.g.nE(), 0);
    out.translated.hi.assign(inst.g.nE(), -1);  // empty box: infeasible marker
    return out;
  }
  std::vector<long long> zx = roundToAnchor(eq, lp.x);
  out.anchorY = potentialsFromEdges(inst.g, zx);
  if (trace) {
    std::ostringstream os;
    os << "anchor potentials";
    for (long long z : out.anchorY) os << " " << z;
    trace->push_back(os.str());
  }
  out.translated = inst;
  for (size_t e = 0; e < inst.g.nE(); ++e) {
    long long diff = out.anchorY[inst.g.edges[e].first] - out.anchorY[inst.g.edges[e].second];
    if (diff != zx[e])
      throw InvariantViolation("potential chain: anchor potentials disagree with the anchor");
    out.translated.lo[e] = inst.lo[e] - diff;
    out.translated.hi[e] = inst.hi[e] - diff;
  }
  for (size_t i = 0; i < inst.w.size(); ++i) {
    long long wz = 0;
    for (size_t v = 0; v < inst.g.nV(); ++v) wz += inst.w[i][v] * out.anchorY[v];
    out.translated.d[i] = inst.d[i] - wz;
  }
  for (size_t v = 0; v < inst.g.nV(); ++v) out.offset += inst.p[v] * out.anchorY[v];
  return out;
}

}  // namespace

SolveReport cmdSolve(const Instance& inst, const SolveOptions& opt) {
  SolveReport r;
  std::vector<std::string>* trace = opt.trace ? &r.trace : nullptr;
  std::vector<std::string> scratch;
  if (!trace) trace = &scratch;

  switch (inst.kind) {
    case InstanceKind::IpGeneral: {
      auto g = solveGeneralIp(*inst.general, trace);
      r.status = g.status;
      if (g.status == SolveReport::Status::Optimal) {
        r.value = g.value;
        attachSolution(r, inst.columnLabels, g.x);
      }
      break;
    }
    case InstanceKind::IpEquality:
    case InstanceKind::Mcicp: {
      auto chain = solveEqualityChain(*inst.equality, inst.graph, inst.td, inst.superprofiles,
                                      trace);
      r.status = chain.feasible ? SolveReport::Status::Optimal : SolveReport::Status::Infeasible;
      if (chain.feasible) {
        r.value = chain.value;
        attachSolution(r, inst.columnLabels, chain.x);
      }
      break;
    }
    case InstanceKind::Mcipp: {
      const auto& mc = *inst.mcipp;
      auto anchored = anchorMcipp(mc, trace);
      SpecialTreeDecomposition td = inst.td ? *inst.td : trivialTd(mc.g);
      std::vector<std::vector<uint32_t>> sp;
      if (inst.superprofiles) {
        sp = *inst.superprofiles;
      } else {
        uint32_t roots = 0;
        for (size_t v = 0; v < mc.g.nV(); ++v)
          for (const auto& row : mc.w)
            if (row[v] != 0) roots |= uint32_t(1) << v;
        for (const auto& bag : td.bags) {
          uint32_t bagMask = 0;
          for (size_t v : bag) bagMask |= uint32_t(1) << v;
          sp.push_back(bruteSuperprofile(mc.g, roots & bagMask));
        }
      }
      bool emptyBox = false;
      for (size_t e = 0; e < anchored.translated.g.nE(); ++e)
        if (anchored.translated.lo[e] > anchored.translated.hi[e]) emptyBox = true;
      McippSolution sol;
      if (!emptyBox) sol = dpSolve(anchored.translated, td, sp);
      r.status = sol.feasible ? SolveReport::Status::Optimal : SolveReport::Status::Infeasible;
      if (sol.feasible) {
        std::vector<long long> y(mc.g.nV());
        for (size_t v = 0; v < mc.g.nV(); ++v) y[v] = sol.y[v] + anchored.anchorY[v];
        r.value = Rational(sol.value + anchored.offset);
        attachSolution(r, inst.columnLabels, y);
        if (opt.trace) r.trace.push_back("table value " + std::to_string(sol.value));
      }
      break;
    }
  }
  recheck(inst, r);
  if (opt.verify) {
    auto v = cmdVerify(inst, SolveOptions{false, opt.trace, opt.oracleBudget, opt.tdPath});
    r.verifyRequested = true;
    r.verifyPassed = v.kind == VerifyOutcome::Kind::Pass;
    r.verifyBudgetExceeded = v.kind == VerifyOutcome::Kind::Unverified;
    r.verifyDetail = v.detail;
    if (v.kind == VerifyOutcome::Kind::Unverified) r.status = r.status;  // status unchanged
  }
  return r;
}

OracleSolve oracleSolveInstance(const Instance& inst, long long budget) {
  oracle::BruteBudget bb;
  bb.maxPoints = budget;
  OracleSolve out;
  switch (inst.kind) {
    case InstanceKind::IpGeneral: {
      const auto& g = *inst.general;
      // The box must be recoverable from single-variable rows.
      size_t n = g.m.cols;
      std::vector<long long> lo(n), hi(n);
      std::vector<bool> hasLo(n, false), hasHi(n, false);
      for (size_t i = 0; i < g.m.rows; ++i) {
        size_t nz = 0, col = 0;
        for (size_t j = 0; j < n; ++j)
          if (g.m.at(i, j) != 0) {
            ++nz;
            col = j;
          }
        if (nz != 1) continue;
        long long c = g.m.at(i, col);
        if (c == 1) {
          hi[col] = hasHi[col] ? std::min(hi[col], g.b[i]) : g.b[i];
          hasHi[col] = true;
        } else if (c == -1) {
          long long v = -g.b[i];
          lo[col] = hasLo[col] ? std::max(lo[col], v) : v;
          hasLo[col] = true;
        }
      }
      for (size_t j = 0; j < n; ++j)
        if (!hasLo[j] || !hasHi[j])
          throw CapExceeded("oracle: ip_general verification needs explicit box rows");
      std::vector<std::vector<long long>> rows;
      for (size_t i = 0; i < g.m.rows; ++i) rows.push_back(g.m.row(i));
      // Enumerate; constraints are inequalities.
      std::vector<long long> x(lo);
      bool feasible = false;
      long long best = 0;
      long long count = 1;
      for (size_t j = 0; j < n; ++j) {
        count *= hi[j] - lo[j] + 1;
        if (count > bb.maxPoints) throw CapExceeded("oracle: lattice budget exceeded");
      }
      for (;;) {
        bool ok = true;
        for (size_t i = 0; i < rows.size() && ok; ++i) {
          long long s = 0;
          for (size_t j = 0; j < n; ++j) s += rows[i][j] * x[j];
          if (s > g.b[i]) ok = false;
        }
        if (ok) {
          long long v = 0;
          for (size_t j = 0; j < n; ++j) v += g.p[j] * x[j];
          if (!feasible || v > best) {
            feasible = true;
            best = v;
          }
        }
        size_t j = n;
        bool adv = false;
        while (j > 0) {
          --j;
          if (x[j] < hi[j]) {
            ++x[j];
            for (size_t t = j + 1; t < n; ++t) x[t] = lo[t];
            adv = true;
            break;
          }
        }
        if (!adv) break;
      }
      out.status = feasible ? SolveReport::Status::Optimal : SolveReport::Status::Infeasible;
      out.value = best;
      break;
    }
    case InstanceKind::IpEquality:
    case InstanceKind::Mcicp: {
      const auto& eq = *inst.equality;
      std::vector<std::vector<long long>> arows(eq.a.ambient,
                                                std::vector<long long>(eq.nVars()));
      for (size_t i = 0; i < eq.a.ambient; ++i)
        for (size_t j = 0; j < eq.nVars(); ++j) arows[i][j] = eq.a.cols[j][i].toLongLong();
      std::vector<std::vector<long long>> wrows;
      for (size_t i = 0; i < eq.w.rows; ++i) wrows.push_back(eq.w.row(i));
      auto res = oracle::bruteIp(eq.p, arows, eq.b, wrows, eq.d, eq.lo, eq.hi, bb);
      out.status = res.feasible ? SolveReport::Status::Optimal : SolveReport::Status::Infeasible;
      out.value = res.value;
      break;
    }
    case InstanceKind::Mcipp: {
      const auto& mc = *inst.mcipp;
      std::vector<std::array<long long, 4>> edges;
      for (size_t e = 0; e < mc.g.nE(); ++e)
        edges.push_back({(long long)mc.g.edges[e].first, (long long)mc.g.edges[e].second,
                         mc.lo[e], mc.hi[e]});
      auto res = oracle::bruteMcipp(mc.g.nV(), edges, mc.p, mc.w, mc.d, bb);
      out.status = res.feasible ? SolveReport::Status::Optimal : SolveReport::Status::Infeasible;
      out.value = res.value;
      break;
    }
  }
  return out;
}

VerifyOutcome cmdVerify(const Instance& inst, const SolveOptions& opt) {
  VerifyOutcome out;
  out.report = cmdSolve(inst, SolveOptions{false, opt.trace, opt.oracleBudget, opt.tdPath});
  OracleSolve oracleRes;
  try {
    oracleRes = oracleSolveInstance(inst, opt.oracleBudget);
  } catch (const CapExceeded& e) {
    out.kind = VerifyOutcome::Kind::Unverified;
    out.detail = e.what();
    return out;
  }
  if (out.report.status != oracleRes.status) {
    out.kind = VerifyOutcome::Kind::Fail;
    out.detail = "status mismatch: pipeline " + statusName(out.report.status) + " vs oracle " +
                 statusName(oracleRes.status);
    return out;
  }
  if (out.report.status == SolveReport::Status::Optimal) {
    if (*out.report.value != Rational(oracleRes.value)) {
      out.kind = VerifyOutcome::Kind::Fail;
      out.detail = "value mismatch: pipeline " + out.report.value->str() + " vs oracle " +
                   std::to_string(oracleRes.value);
      return out;
    }
  }
  out.kind = VerifyOutcome::Kind::Pass;
  out.detail = "statuses and values agree";
  return out;
}

std::string cmdCheck(const Instance& inst) {
  std::ostringstream os;
  os << "kind: " << kindName(inst.kind) << "\n";
  os << "k: " << inst.k << "  delta: " << inst.delta << "\n";
  switch (inst.kind) {
    case InstanceKind::IpGeneral: {
      const auto& g = *inst.general;
      os << "rows: " << g.m.rows << "  columns: " << g.m.cols << "\n";
      os << "weight rows: " << g.wRowIdx.size() << "  extra columns: " << g.extraColIdx.size()
         << "\n";
      os << "tu after split: yes  [config]\n";
      os << "max |subdeterminant|: "
         << oracle::maxAbsSubdeterminant([&] {
              std::vector<std::vector<long long>> rows;
              for (size_t i = 0; i < g.m.rows; ++i) rows.push_back(g.m.row(i));
              return rows;
            }())
         << "  [oracle]\n";
      break;
    }
    case InstanceKind::IpEquality:
    case InstanceKind::Mcicp: {
      const auto& eq = *inst.equality;
      os << "columns: " << eq.nVars() << "  rows: " << eq.a.ambient << "\n";
      os << "tu: " << (isTotallyUnimodular(eq.a) ? "yes" : "no") << "  [config]\n";
      os << "max circuit weight: " << maxCircuitWeight(eq.a, eq.w) << "  [config]\n";
      int connectivity = 1;
      auto s1 = findSeparation(eq.a, 1);
      if (!s1 || s1->order > 1) {
        connectivity = 2;
        auto s2 = findSeparation(eq.a, 2);
        if (!s2) connectivity = 3;
      }
      os << "connectivity: " << (connectivity >= 3 ? ">=3" : std::to_string(connectivity))
         << "  [sumdecomp]\n";
      os << "one-sum components: " << oneSumComponents(eq.a).size() << "  [sumdecomp]\n";
      if (inst.graph) os << "graph: verified cographic realization  [cographic]\n";
      break;
    }
    case InstanceKind::Mcipp: {
      const auto& mc = *inst.mcipp;
      os << "vertices: " << mc.g.nV() << "  edges: " << mc.g.nE() << "\n";
      auto ds = docsets(mc.g, false);
      os << "docsets: " << ds.size() << "  [graph]\n";
      for (size_t i = 0; i < mc.w.size(); ++i)
        os << "beta(G, w" << i << "): " << beta(mc.g, mc.w[i]) << "  [graph]\n";
      os << "two-connected: " << (isTwoConnected(mc.g) ? "yes" : "no") << "  [graph]\n";
      if (isTwoConnected(mc.g) && mc.g.nV() <= kModelSearchVertexCap) {
        bool none = verifyNoRootedModelBound(mc.g, mc.w, std::max<long long>(1, inst.k),
                                             inst.delta);
        os << "rooted model at t=4k*delta+1: " << (none ? "none (as required)" : "FOUND")
           << "  [graph]\n";
      }
      if (inst.td) os << "tree decomposition: " << inst.td->nNodes() << " bag(s)  [mcippdp]\n";
      break;
    }
  }
  return os.str();
}

}  // namespace ntu
