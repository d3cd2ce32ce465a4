#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "arboreal/distance.hpp"
#include "arboreal/network.hpp"
#include "arboreal/phylo.hpp"

namespace arboreal {

struct ParseDiagnostic {
  int line = 1;
  int column = 1;
  std::string message;
  std::string expected;  // token summary, may be empty
};

struct ParseError : std::runtime_error {
  explicit ParseError(ParseDiagnostic d);
  ParseDiagnostic diagnostic;
};

// Newick with mandatory branch lengths (decimal or p/q rationals, strictly
// positive) and labels matching [A-Za-z0-9_]+. Parsing is unrooted: a root
// with exactly two children is suppressed and its two lengths summed.
WeightedPhyloTree parse_newick(std::string_view text);
std::string write_newick(const WeightedPhyloTree& t);

// Line-oriented network format:
//   anet 1              (or "anet 1 relaxed")
//   leaf <vid> <label>
//   arc <uid> <vid> <weight>
// Vertex ids are positive integers, file-local, introduced by use; '#' starts
// a comment. Parsing validates the network (strict unless the header says
// relaxed) and reports the violated clause on failure.
ArborealNetwork parse_anet(std::string_view text);
std::string write_anet(const ArborealNetwork& n);

// CSV partial distance: first row is an empty cell then the labels; row i is
// a label then n entries; entries are rationals/decimals, 0 on the diagonal,
// or "inf".
PartialDistance parse_matrix(std::string_view text);
std::string write_matrix(const PartialDistance& d);

// Deterministic DOT: roots as double circles, leaves as labeled boxes,
// internal vertices as points, arcs labeled with weights.
std::string export_dot(const ArborealNetwork& n);
std::string export_dot(const UndirectedGraph& g);

}  // namespace arboreal
