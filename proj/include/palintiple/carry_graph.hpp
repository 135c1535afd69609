#pragma once

// Carry-pair graph engine. A (k+1)-digit palintiple walks its carries in
// mirrored pairs: step j sits at node (c_j, c_{k+1-j}) and moving to step j+1
// consumes the digit pair (d_j, d_{k-j}). The carry recurrence
//   b*c_{j+1} - c_j = n*d_{k-j} - d_j
// applied at positions j and k-j pins both digits once the endpoints of an
// edge are fixed, so existence and enumeration of palintiples reduce to path
// searches in a finite digraph on [0, n-1]^2 starting at (0, 0):
//   - a path of m >= 1 edges ending on the diagonal (a = s) is a 2m-digit
//     palintiple;
//   - a path of m >= 1 edges ending where (b*s - a)/(n-1) is an integral
//     digit is a (2m+1)-digit palintiple with that middle digit.
// The first edge of a path additionally needs both its digits nonzero (the
// ends of a palintiple may not be 0); that constraint is positional, so a
// node keeps its full successor set when revisited later.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "palintiple/digit_core.hpp"

namespace pal {

struct CarryPairNode {
  std::int64_t lo = 0;  // c_j, the carry walking up from the low end
  std::int64_t hi = 0;  // c_{k+1-j}, the carry at the mirrored high position

  bool diagonal() const { return lo == hi; }
  friend auto operator<=>(const CarryPairNode&, const CarryPairNode&) = default;
};

struct EdgeLabel {
  std::int64_t lo_digit = 0;  // d_j
  std::int64_t hi_digit = 0;  // d_{k-j}

  friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
};

// The unique digit pair carried by the edge from -> to, if the edge exists:
//   hi_digit = (b*s - s' + n*b*a' - n*a) / (n^2 - 1)   must be in [0, b)
//   lo_digit = n*hi_digit - b*a' + a                   must be in [0, b)
// with (a, s) = from and (a', s') = to.
std::optional<EdgeLabel> edge_digits(std::int64_t n, std::int64_t b, CarryPairNode from,
                                     CarryPairNode to);

// Middle digit (b*s - a)/(n-1) accepted at node v on odd-length paths, if it
// is an integer in [0, b).
std::optional<std::int64_t> odd_middle_digit(CarryPairNode v, std::int64_t n, std::int64_t b);

// Materialized digraph: nodes in row-major (lo, hi) order, arcs per node in
// ascending target order.
class CarryPairGraph {
 public:
  struct Arc {
    std::size_t to = 0;  // index into nodes()
    EdgeLabel label;
  };

  CarryPairGraph() = default;
  CarryPairGraph(std::int64_t multiplier, std::int64_t base, std::vector<CarryPairNode> nodes,
                 std::vector<std::vector<Arc>> arcs);

  std::int64_t multiplier() const { return multiplier_; }
  std::int64_t base() const { return base_; }
  const std::vector<CarryPairNode>& nodes() const { return nodes_; }
  const std::vector<std::vector<Arc>>& arcs() const { return arcs_; }
  std::size_t edge_count() const;
  bool contains(CarryPairNode v) const;

 private:
  std::int64_t multiplier_ = 0;
  std::int64_t base_ = 0;
  std::vector<CarryPairNode> nodes_;
  std::vector<std::vector<Arc>> arcs_;
};

// Full graph on all n^2 nodes (isolated nodes included).
CarryPairGraph build_graph(std::int64_t n, std::int64_t b);

// Subgraph of nodes and edges lying on at least one accepting path, computed
// as forward reachability (with the positional first-edge constraint)
// intersected with backward reachability from accepting configurations.
CarryPairGraph trim_graph(std::int64_t n, std::int64_t b);

// Smallest digit count of any (n, b)-palintiple, nullopt when none exists.
// Exact: breadth-first levels over a finite graph, even acceptance checked
// before odd at each level.
std::optional<std::int64_t> min_digits(std::int64_t n, std::int64_t b);

bool palintiples_exist(std::int64_t n, std::int64_t b);

// All (n, b)-palintiples with exactly digit_count digits, re-verified
// digit-wise and sorted most-significant-digit-first. The search prunes every
// branch that cannot finish in the remaining steps, so cost tracks output.
std::vector<PalintipleRecord> enumerate_palintiples(std::int64_t n, std::int64_t b,
                                                    std::int64_t digit_count);

// Unlabeled digraph isomorphism (edge labels ignored), exact backtracking
// with degree-signature pruning. Intended for trimmed graphs, which are tiny.
bool digraph_isomorphic(const CarryPairGraph& g, const CarryPairGraph& h);

// Whether trim_graph(n, b) is isomorphic to trim_graph(9, 10), the canonical
// four-node graph of the 9801 = 9 * 1089 family.
bool is_1089_type(std::int64_t n, std::int64_t b);

// Graphviz DOT: nodes labeled "a,s" in row-major order (diagonal nodes drawn
// as doublecircle), edges labeled "d|e".
std::string to_dot(const CarryPairGraph& g);

}  // namespace pal
