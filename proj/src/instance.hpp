#pragma once

#include <optional>
#include <string>

#include "cographic.hpp"
#include "mcippdp.hpp"
#include "proximity.hpp"
#include "sumdecomp.hpp"

namespace ntu {

enum class InstanceKind { IpGeneral, IpEquality, Mcicp, Mcipp };

std::string kindName(InstanceKind k);

/// Parsed and validated instance file. Exactly the fields of the declared
/// kind are populated.
struct Instance {
  InstanceKind kind = InstanceKind::Mcicp;
  long long k = 0;
  long long delta = 1;

  std::optional<GeneralIpInstance> general;    // ip_general
  std::optional<EqualityInstance> equality;    // ip_equality, mcicp (b = 0)
  std::optional<DirectedGraph> graph;          // mcicp (optional), mcipp
  std::optional<McippInstance> mcipp;          // mcipp
  std::optional<SpecialTreeDecomposition> td;  // mcipp optional
  std::optional<std::vector<std::vector<uint32_t>>> superprofiles;  // mcipp optional
  std::vector<std::string> columnLabels;       // solution reporting
};

/// Parses and hard-validates an instance (dimensions, declared constants,
/// structural checks). Throws ValidationError / CapExceeded.
Instance parseInstance(const std::string& jsonText);
Instance loadInstanceFile(const std::string& path);

/// Canonical UTF-8 serialization; parse(emit(i)) is structurally identical
/// and emission is byte-deterministic.
std::string emitInstance(const Instance& inst);

/// Parses a tree-decomposition file (same schema as the inline "td" field)
/// for a given graph.
SpecialTreeDecomposition parseTdFile(const std::string& path, const DirectedGraph& g);

}  // namespace ntu
