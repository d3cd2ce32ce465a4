#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arboreal/chordal.hpp"
#include "arboreal/distance.hpp"
#include "arboreal/network.hpp"

namespace arboreal {

// Graph on the labels with edges exactly at the finite entries.
UndirectedGraph support_graph(const PartialDistance& d);

// U1: the support graph is connected and chordal.
struct U1Result {
  bool pass = false;
  std::optional<std::pair<std::string, std::string>> disconnected;  // labels in
                                                                    // different
                                                                    // components
  std::optional<std::vector<std::string>> cycle;  // induced, length >= 4
};

// U2: on triples with three finite entries, D(x,y) <= max(D(x,z), D(y,z)).
struct U2Result {
  bool pass = false;
  std::optional<std::array<std::string, 3>> witness;  // D(x,y) > max of the two
};

// U3: on quadruples where exactly D(z,u) is infinite,
// D(x,y) < min(D(x,z), D(x,u), D(y,z), D(y,u)), strictly.
struct U3Result {
  bool pass = false;
  std::optional<std::array<std::string, 4>> witness;  // (x, y, z, u)
};

U1Result check_u1(const PartialDistance& d);
U2Result check_u2(const PartialDistance& d);
U3Result check_u3(const PartialDistance& d);

struct RecognitionReport {
  U1Result u1;
  U2Result u2;
  U3Result u3;
  bool verdict = false;  // all three pass
};

RecognitionReport recognize(const PartialDistance& d);

// Consistency check, not a user-facing gate: a partial distance passing U3
// has a gem-free and W5-free support graph.
bool check_gem_free_consequence(const PartialDistance& d);

struct RecognitionFailure : std::runtime_error {
  explicit RecognitionFailure(RecognitionReport r);
  RecognitionReport report;
};

// Builds the unique representing network without outdegree-1 vertices
// (relaxed: leaves may gain indegree above one): equidistant trees of the
// maximal cliques of the support graph, glued by leaf-cluster identity. The
// result is re-validated and its induced partial distance recomputed and
// compared entry-for-entry before returning; a mismatch is a construction bug
// and throws std::logic_error. Throws RecognitionFailure when d is rejected.
ArborealNetwork reconstruct(const PartialDistance& d);

// Restriction of an accepted d to Y stays representable iff the induced
// support subgraph is connected.
bool restriction_is_arboreal(const PartialDistance& d,
                             const std::vector<std::string>& Y);

}  // namespace arboreal
