#include "instance.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ntu {

using Json = nlohmann::ordered_json;

std::string kindName(InstanceKind k) {
  switch (k) {
    case InstanceKind::IpGeneral: return "ip_general";
    case InstanceKind::IpEquality: return "ip_equality";
    case InstanceKind::Mcicp: return "mcicp";
    case InstanceKind::Mcipp: return "mcipp";
  }
  return "?";
}

namespace {

InstanceKind kindOf(const std::string& s) {
  if (s == "ip_general") return InstanceKind::IpGeneral;
  if (s == "ip_equality") return InstanceKind::IpEquality;
  if (s == "mcicp") return InstanceKind::Mcicp;
  if (s == "mcipp") return InstanceKind::Mcipp;
  throw ValidationError("instance: unknown kind '" + s + "'");
}

long long asInt(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ValidationError("instance: " + what + " must be an integer");
  return j.get<long long>();
}

std::vector<long long> intVector(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError("instance: " + what + " must be an array");
  std::vector<long long> out;
  for (const auto& v : j) out.push_back(asInt(v, what + " entry"));
  return out;
}

std::vector<std::vector<long long>> intMatrixRows(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError("instance: " + what + " must be an array of rows");
  std::vector<std::vector<long long>> out;
  for (const auto& row : j) out.push_back(intVector(row, what + " row"));
  for (const auto& row : out)
    if (row.size() != out[0].size()) throw ValidationError("instance: " + what + " rows are ragged");
  return out;
}

Configuration configFromRows(const std::vector<std::vector<long long>>& rows,
                             const std::vector<std::string>& labels) {
  size_t m = rows.size();
  size_t n = m == 0 ? labels.size() : rows[0].size();
  Configuration c(m);
  for (size_t j = 0; j < n; ++j) {
    RatVector col(m);
    for (size_t i = 0; i < m; ++i) col[i] = Rational(rows[i][j]);
    c.push(labels[j], std::move(col));
  }
  return c;
}

std::vector<std::string> defaultLabels(size_t n, const Json& file) {
  std::vector<std::string> labels;
  if (file.contains("labels")) {
    for (const auto& l : file["labels"]) labels.push_back(l.get<std::string>());
    if (labels.size() != n) throw ValidationError("instance: label count mismatch");
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (l.empty() || l[0] == '~')
        throw ValidationError("instance: labels must be nonempty and must not start with '~'");
      if (!seen.insert(l).second) throw ValidationError("instance: duplicate label '" + l + "'");
    }
  } else {
    for (size_t j = 0; j < n; ++j) labels.push_back("x" + std::to_string(j));
  }
  return labels;
}

DirectedGraph graphFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ValidationError("instance: graph needs vertices and edges");
  DirectedGraph g;
  for (const auto& v : j["vertices"]) g.addVertex(v.get<std::string>());
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) throw ValidationError("instance: edge must be a pair");
    g.addEdge(g.indexOfVertex(e[0].get<std::string>()), g.indexOfVertex(e[1].get<std::string>()));
  }
  return g;
}

SpecialTreeDecomposition tdFromJson(const Json& j, const DirectedGraph& g) {
  SpecialTreeDecomposition td;
  if (!j.is_object() || !j.contains("bags") || !j.contains("parent"))
    throw ValidationError("instance: tree decomposition needs bags and parent");
  for (const auto& bag : j["bags"]) {
    std::vector<size_t> b;
    for (const auto& v : bag) b.push_back(g.indexOfVertex(v.get<std::string>()));
    std::sort(b.begin(), b.end());
    td.bags.push_back(b);
  }
  for (const auto& p : j["parent"]) {
    long long v = asInt(p, "td parent");
    td.parent.push_back(v < 0 ? SIZE_MAX : static_cast<size_t>(v));
  }
  td.root = j.contains("root") ? static_cast<size_t>(asInt(j["root"], "td root")) : 0;
  td.ell = j.contains("ell") ? asInt(j["ell"], "td ell") : 0;
  if (td.ell <= 0) {
    // Derive the parameter from the content when omitted.
    long long m = 1;
    auto ch = td.childrenLists();
    for (size_t t = 0; t < td.nNodes(); ++t) {
      m = std::max(m, static_cast<long long>(ch[t].size()));
      if (t != td.root && td.parent[t] != SIZE_MAX)
        m = std::max(m, static_cast<long long>(td.adhesion(t).size()));
    }
    td.ell = m;
  }
  return td;
}

}  // namespace

Instance parseInstance(const std::string& jsonText) {
  Json file;
  try {
    file = Json::parse(jsonText);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("instance: JSON parse failure: ") + e.what());
  }
  if (!file.is_object()) throw ValidationError("instance: top level must be an object");
  if (!file.contains("format_version") || asInt(file["format_version"], "format_version") != 1)
    throw ValidationError("instance: unsupported format_version");
  if (!file.contains("kind")) throw ValidationError("instance: missing kind");

  Instance inst;
  inst.kind = kindOf(file["kind"].get<std::string>());
  inst.delta = file.contains("delta") ? asInt(file["delta"], "delta") : 1;
  if (inst.delta < 1) throw ValidationError("instance: delta must be >= 1");

  switch (inst.kind) {
    case InstanceKind::IpGeneral: {
      GeneralIpInstance g;
      auto rows = intMatrixRows(file.at("matrix"), "matrix");
      if (rows.empty()) throw ValidationError("instance: matrix must be nonempty");
      g.m = IntMatrix::fromRows(rows);
      g.b = intVector(file.at("rhs"), "rhs");
      g.p = intVector(file.at("profit"), "profit");
      g.delta = inst.delta;
      if (g.b.size() != g.m.rows || g.p.size() != g.m.cols)
        throw ValidationError("instance: rhs/profit dimensions do not match the matrix");
      if (file.contains("weight_rows"))
        for (const auto& r : file["weight_rows"]) {
          long long v = asInt(r, "weight row index");
          if (v < 0 || v >= (long long)g.m.rows)
            throw ValidationError("instance: weight row index out of range");
          g.wRowIdx.push_back(static_cast<size_t>(v));
        }
      if (file.contains("extra_columns"))
        for (const auto& c : file["extra_columns"]) {
          long long v = asInt(c, "extra column index");
          if (v < 0 || v >= (long long)g.m.cols)
            throw ValidationError("instance: extra column index out of range");
          g.extraColIdx.push_back(static_cast<size_t>(v));
        }
      inst.k = static_cast<long long>(g.wRowIdx.size());
      if (file.contains("k") && asInt(file["k"], "k") != inst.k)
        throw ValidationError("instance: declared k does not match the weight rows");
      // Structural validation: the matrix minus weight rows and extra
      // columns must be totally unimodular; the full matrix must be
      // totally delta-modular (checked by subdeterminant scan in-cap).
      {
        std::set<size_t> wset(g.wRowIdx.begin(), g.wRowIdx.end());
        std::set<size_t> eset(g.extraColIdx.begin(), g.extraColIdx.end());
        std::vector<std::vector<long long>> arows;
        for (size_t i = 0; i < g.m.rows; ++i) {
          if (wset.count(i)) continue;
          std::vector<long long> row;
          for (size_t j = 0; j < g.m.cols; ++j)
            if (!eset.count(j)) row.push_back(g.m.at(i, j));
          arows.push_back(row);
        }
        if (!arows.empty() && !arows[0].empty()) {
          Configuration acfg(arows.size());
          for (size_t j = 0; j < arows[0].size(); ++j) {
            RatVector col(arows.size());
            for (size_t i = 0; i < arows.size(); ++i) col[i] = Rational(arows[i][j]);
            acfg.push("c" + std::to_string(j), std::move(col));
          }
          if (!isTotallyUnimodular(acfg))
            throw ValidationError("instance: matrix is not totally unimodular after the split");
        }
        std::vector<std::vector<long long>> full;
        for (size_t i = 0; i < g.m.rows; ++i) full.push_back(g.m.row(i));
        if (oracle::maxAbsSubdeterminant(full) > inst.delta)
          throw ValidationError("instance: matrix is not totally delta-modular");
      }
      inst.columnLabels = defaultLabels(g.m.cols, file);
      inst.general = std::move(g);
      break;
    }
    case InstanceKind::IpEquality:
    case InstanceKind::Mcicp: {
      auto rows = intMatrixRows(file.at("a"), "a");
      size_t n = rows.empty() ? intVector(file.at("profit"), "profit").size() : rows[0].size();
      inst.columnLabels = defaultLabels(n, file);
      EqualityInstance eq;
      eq.a = configFromRows(rows, inst.columnLabels);
      eq.b = file.contains("b") ? intVector(file["b"], "b")
                                : std::vector<long long>(eq.a.ambient, 0);
      auto wrows = file.contains("w") ? intMatrixRows(file["w"], "w")
                                      : std::vector<std::vector<long long>>{};
      eq.w = wrows.empty() ? IntMatrix(0, n) : IntMatrix::fromRows(wrows);
      eq.d = file.contains("d") ? intVector(file["d"], "d") : std::vector<long long>{};
      eq.p = intVector(file.at("profit"), "profit");
      eq.lo = intVector(file.at("lower"), "lower");
      eq.hi = intVector(file.at("upper"), "upper");
      eq.delta = inst.delta;
      inst.k = static_cast<long long>(eq.w.rows);
      if (file.contains("k") && asInt(file["k"], "k") != inst.k)
        throw ValidationError("instance: declared k does not match the weight rows");
      if (inst.kind == InstanceKind::Mcicp)
        for (long long bi : eq.b)
          if (bi != 0) throw ValidationError("instance: mcicp requires b = 0");
      validateEqualityInstance(eq);
      if (file.contains("graph")) {
        DirectedGraph g = graphFromJson(file["graph"]);
        std::string why;
        if (!verifyCographicCorrespondence(eq.a, g, &why))
          throw ValidationError("instance: graph does not realize the configuration: " + why);
        inst.graph = std::move(g);
      }
      inst.equality = std::move(eq);
      break;
    }
    case InstanceKind::Mcipp: {
      DirectedGraph g = graphFromJson(file.at("graph"));
      McippInstance mc;
      mc.g = g;
      mc.p = intVector(file.at("profit"), "profit");
      auto wrows = file.contains("w") ? intMatrixRows(file["w"], "w")
                                      : std::vector<std::vector<long long>>{};
      mc.w = wrows;
      mc.d = file.contains("d") ? intVector(file["d"], "d") : std::vector<long long>{};
      mc.lo = intVector(file.at("lower"), "lower");
      mc.hi = intVector(file.at("upper"), "upper");
      mc.delta = inst.delta;
      inst.k = static_cast<long long>(mc.w.size());
      if (file.contains("k") && asInt(file["k"], "k") != inst.k)
        throw ValidationError("instance: declared k does not match the weight rows");
      validateMcippInstance(mc);
      if (file.contains("td")) {
        auto td = tdFromJson(file["td"], g);
        auto v = validateSpecialTd(g, td);
        if (!v.valid)
          throw ValidationError("instance: invalid tree decomposition: " + v.violations.front());
        inst.td = std::move(td);
      }
      if (file.contains("superprofiles")) {
        if (!inst.td) throw ValidationError("instance: superprofiles require a tree decomposition");
        uint32_t roots = 0;
        for (size_t v = 0; v < g.nV(); ++v)
          for (const auto& row : mc.w)
            if (row[v] != 0) roots |= uint32_t(1) << v;
        std::vector<std::vector<uint32_t>> sp;
        const auto& arr = file["superprofiles"];
        if (arr.size() != inst.td->nNodes())
          throw ValidationError("instance: one superprofile per tree node required");
        for (size_t t = 0; t < arr.size(); ++t) {
          std::vector<uint32_t> entry;
          for (const auto& subset : arr[t]) {
            uint32_t mask = 0;
            for (const auto& v : subset) mask |= uint32_t(1) << g.indexOfVertex(v.get<std::string>());
            entry.push_back(mask);
          }
          uint32_t bagMask = 0;
          for (size_t v : inst.td->bags[t]) bagMask |= uint32_t(1) << v;
          if (!superprofileSound(g, roots & bagMask, entry))
            throw ValidationError("instance: superprofile at node " + std::to_string(t) +
                                  " misses a docset pattern");
          sp.push_back(std::move(entry));
        }
        inst.superprofiles = std::move(sp);
      }
      inst.columnLabels = g.vertexLabels;
      inst.mcipp = std::move(mc);
      inst.graph = std::move(g);
      break;
    }
  }
  return inst;
}

Instance loadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("instance: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parseInstance(ss.str());
}

namespace {

Json graphToJson(const DirectedGraph& g) {
  Json j;
  j["vertices"] = g.vertexLabels;
  Json edges = Json::array();
  for (auto [u, v] : g.edges) edges.push_back({g.vertexLabels[u], g.vertexLabels[v]});
  j["edges"] = edges;
  return j;
}

Json rowsToJson(const IntMatrix& m) {
  Json j = Json::array();
  for (size_t i = 0; i < m.rows; ++i) j.push_back(m.row(i));
  return j;
}

}  // namespace

std::string emitInstance(const Instance& inst) {
  Json j;
  j["format_version"] = 1;
  j["kind"] = kindName(inst.kind);
  j["k"] = inst.k;
  j["delta"] = inst.delta;
  switch (inst.kind) {
    case InstanceKind::IpGeneral: {
      const auto& g = *inst.general;
      j["matrix"] = rowsToJson(g.m);
      j["rhs"] = g.b;
      j["profit"] = g.p;
      j["weight_rows"] = g.wRowIdx;
      j["extra_columns"] = g.extraColIdx;
      j["labels"] = inst.columnLabels;
      break;
    }
    case InstanceKind::IpEquality:
    case InstanceKind::Mcicp: {
      const auto& eq = *inst.equality;
      Json arows = Json::array();
      RatMatrix am = eq.aMatrix();
      for (size_t i = 0; i < am.rows(); ++i) {
        Json row = Json::array();
        for (size_t jx = 0; jx < am.cols(); ++jx) row.push_back(am.at(i, jx).toLongLong());
        arows.push_back(row);
      }
      j["a"] = arows;
      if (inst.kind == InstanceKind::IpEquality) j["b"] = eq.b;
      Json wrows = Json::array();
      for (size_t i = 0; i < eq.w.rows; ++i) wrows.push_back(eq.w.row(i));
      j["w"] = wrows;
      j["d"] = eq.d;
      j["profit"] = eq.p;
      j["lower"] = eq.lo;
      j["upper"] = eq.hi;
      j["labels"] = inst.columnLabels;
      if (inst.graph) j["graph"] = graphToJson(*inst.graph);
      break;
    }
    case InstanceKind::Mcipp: {
      const auto& mc = *inst.mcipp;
      j["graph"] = graphToJson(mc.g);
      j["profit"] = mc.p;
      Json wrows = Json::array();
      for (const auto& row : mc.w) wrows.push_back(row);
      j["w"] = wrows;
      j["d"] = mc.d;
      j["lower"] = mc.lo;
      j["upper"] = mc.hi;
      if (inst.td) {
        Json td;
        Json bags = Json::array();
        for (const auto& bag : inst.td->bags) {
          Json b = Json::array();
          for (size_t v : bag) b.push_back(mc.g.vertexLabels[v]);
          bags.push_back(b);
        }
        td["bags"] = bags;
        Json par = Json::array();
        for (size_t p : inst.td->parent)
          par.push_back(p == SIZE_MAX ? -1 : static_cast<long long>(p));
        td["parent"] = par;
        td["root"] = inst.td->root;
        td["ell"] = inst.td->ell;
        j["td"] = td;
      }
      if (inst.superprofiles) {
        Json sp = Json::array();
        for (const auto& entry : *inst.superprofiles) {
          Json node = Json::array();
          for (uint32_t mask : entry) {
            Json subset = Json::array();
            for (size_t v = 0; v < mc.g.nV(); ++v)
              if (mask >> v & 1) subset.push_back(mc.g.vertexLabels[v]);
            node.push_back(subset);
          }
          sp.push_back(node);
        }
        j["superprofiles"] = sp;
      }
      break;
    }
  }
  return j.dump(2) + "\n";
}

SpecialTreeDecomposition parseTdFile(const std::string& path, const DirectedGraph& g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("td: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const std::exception& e) {
    throw ValidationError(std::string("td: JSON parse failure: ") + e.what());
  }
  auto td = tdFromJson(j.contains("td") ? j["td"] : j, g);
  auto v = validateSpecialTd(g, td);
  if (!v.valid) throw ValidationError("td: invalid tree decomposition: " + v.violations.front());
  return td;
}

}  // namespace ntu
