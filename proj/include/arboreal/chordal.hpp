#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "arboreal/graph.hpp"

namespace arboreal {

struct PerfectEliminationOrdering {
  std::vector<VertexId> order;  // each vertex's later neighbors form a clique
};

struct InducedCycleWitness {
  std::vector<VertexId> cycle;  // chordless cycle, length >= 4
};

using ChordalityCertificate =
    std::variant<PerfectEliminationOrdering, InducedCycleWitness>;

// Maximum-cardinality search produces a candidate ordering which is then
// verified; on failure an induced cycle of length >= 4 is extracted.
ChordalityCertificate chordality_certificate(const UndirectedGraph& g);

bool is_chordal(const UndirectedGraph& g);

// Checks that each vertex's later neighbors (under the given order) form a
// clique.
bool verify_peo(const UndirectedGraph& g, const std::vector<VertexId>& order);

// Exactly the maximal cliques of a chordal graph, from a verified perfect
// elimination ordering. Throws if the ordering fails verification.
std::vector<std::set<VertexId>> maximal_cliques_chordal(
    const UndirectedGraph& g, const PerfectEliminationOrdering& peo);

struct GemWitness {
  VertexId apex;                  // adjacent to all four path vertices
  std::vector<VertexId> path;     // induced path p1-p2-p3-p4
};

struct WheelWitness {
  VertexId hub;
  std::vector<VertexId> rim;      // induced 4-cycle
};

std::optional<GemWitness> find_induced_gem(const UndirectedGraph& g);
std::optional<WheelWitness> find_induced_w5(const UndirectedGraph& g);

struct PtolemaicResult {
  bool ok = false;
  std::optional<InducedCycleWitness> cycle;
  std::optional<GemWitness> gem;
};

// Chordal and gem-free.
PtolemaicResult is_ptolemaic(const UndirectedGraph& g);

}  // namespace arboreal
