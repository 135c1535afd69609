#include "palintiple/carry_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace pal {

namespace {

void check_pair(std::int64_t n, std::int64_t b) {
  if (b <= 2 || n <= 1 || n >= b) {
    throw std::invalid_argument("carry graph needs base > 2 and 1 < n < base");
  }
}

// Visits every successor of (a, s). For each target low carry a' there is at
// most one target high carry s': the edge equation fixes s' mod n^2 - 1 and
// carries are below n - 1 < n^2 - 1. Calls fn(a', s', lo_digit, hi_digit).
template <typename Fn>
inline void for_each_successor(std::int64_t n, std::int64_t b, std::int64_t a, std::int64_t s,
                               Fn&& fn) {
  const std::int64_t m = n * n - 1;
  const std::int64_t nb = n * b;
  std::int64_t x = b * s - n * a;  // numerator of hi_digit for a' = 0, before -s'
  for (std::int64_t ap = 0; ap < n; ++ap, x += nb) {
    std::int64_t sp = x % m;
    if (sp < 0) sp += m;
    if (sp <= n - 1) {
      const std::int64_t e = (x - sp) / m;
      if (e >= 0 && e < b) {
        const std::int64_t d = n * e - b * ap + a;
        if (d >= 0 && d < b) fn(ap, sp, d, e);
      }
    }
  }
}

// Dense node marks for moderate n, hash set beyond that.
class NodeMarks {
 public:
  explicit NodeMarks(std::int64_t node_count) {
    if (node_count <= (std::int64_t{1} << 26)) {
      dense_.assign(static_cast<std::size_t>(node_count), 0);
    } else {
      use_dense_ = false;
    }
  }

  // Returns true when the node was already marked.
  bool test_and_set(std::int64_t id) {
    if (use_dense_) {
      if (dense_[static_cast<std::size_t>(id)]) return true;
      dense_[static_cast<std::size_t>(id)] = 1;
      return false;
    }
    return !sparse_.insert(id).second;
  }

 private:
  bool use_dense_ = true;
  std::vector<std::uint8_t> dense_;
  std::unordered_set<std::int64_t> sparse_;
};

// Compact adjacency for materialized work (enumeration, trimming). Only used
// where n^2 nodes fit comfortably in memory.
struct Csr {
  std::int64_t n = 0, b = 0;
  std::vector<std::int64_t> offsets;  // size n^2 + 1
  struct Arc {
    std::int64_t to;
    std::int64_t lo_digit;
    std::int64_t hi_digit;
  };
  std::vector<Arc> arcs;
};

Csr build_csr(std::int64_t n, std::int64_t b) {
  const std::int64_t node_count = n * n;
  if (node_count > (std::int64_t{1} << 26)) {
    throw std::invalid_argument("carry graph too large to materialize; use the search operations");
  }
  Csr g;
  g.n = n;
  g.b = b;
  g.offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
  for (std::int64_t id = 0; id < node_count; ++id) {
    for_each_successor(n, b, id / n, id % n,
                       [&](std::int64_t, std::int64_t, std::int64_t, std::int64_t) { ++g.offsets[id + 1]; });
  }
  for (std::int64_t id = 0; id < node_count; ++id) g.offsets[id + 1] += g.offsets[id];
  g.arcs.resize(static_cast<std::size_t>(g.offsets.back()));
  std::vector<std::int64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (std::int64_t id = 0; id < node_count; ++id) {
    for_each_successor(n, b, id / n, id % n,
                       [&](std::int64_t ap, std::int64_t sp, std::int64_t d, std::int64_t e) {
                         g.arcs[static_cast<std::size_t>(cursor[id]++)] = {ap * n + sp, d, e};
                       });
  }
  return g;
}

}  // namespace

std::optional<EdgeLabel> edge_digits(std::int64_t n, std::int64_t b, CarryPairNode from,
                                     CarryPairNode to) {
  check_pair(n, b);
  for (CarryPairNode v : {from, to}) {
    if (v.lo < 0 || v.lo > n - 1 || v.hi < 0 || v.hi > n - 1) {
      throw std::invalid_argument("carry pair components must lie in [0, n-1]");
    }
  }
  const std::int64_t m = n * n - 1;
  const std::int64_t num = b * from.hi - to.hi + n * b * to.lo - n * from.lo;
  if (num % m != 0) return std::nullopt;
  const std::int64_t e = num / m;
  if (e < 0 || e >= b) return std::nullopt;
  const std::int64_t d = n * e - b * to.lo + from.lo;
  if (d < 0 || d >= b) return std::nullopt;
  return EdgeLabel{d, e};
}

std::optional<std::int64_t> odd_middle_digit(CarryPairNode v, std::int64_t n, std::int64_t b) {
  check_pair(n, b);
  const std::int64_t num = b * v.hi - v.lo;
  if (num < 0 || num % (n - 1) != 0) return std::nullopt;
  const std::int64_t d = num / (n - 1);
  if (d >= b) return std::nullopt;
  return d;
}

CarryPairGraph::CarryPairGraph(std::int64_t multiplier, std::int64_t base,
                               std::vector<CarryPairNode> nodes, std::vector<std::vector<Arc>> arcs)
    : multiplier_(multiplier), base_(base), nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  if (nodes_.size() != arcs_.size()) throw std::invalid_argument("node/arc list size mismatch");
}

std::size_t CarryPairGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : arcs_) total += a.size();
  return total;
}

bool CarryPairGraph::contains(CarryPairNode v) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

CarryPairGraph build_graph(std::int64_t n, std::int64_t b) {
  check_pair(n, b);
  Csr g = build_csr(n, b);
  const std::int64_t node_count = n * n;
  std::vector<CarryPairNode> nodes;
  nodes.reserve(static_cast<std::size_t>(node_count));
  std::vector<std::vector<CarryPairGraph::Arc>> arcs(static_cast<std::size_t>(node_count));
  for (std::int64_t id = 0; id < node_count; ++id) {
    nodes.push_back({id / n, id % n});
    for (std::int64_t i = g.offsets[id]; i < g.offsets[id + 1]; ++i) {
      const auto& arc = g.arcs[static_cast<std::size_t>(i)];
      arcs[static_cast<std::size_t>(id)].push_back(
          {static_cast<std::size_t>(arc.to), {arc.lo_digit, arc.hi_digit}});
    }
  }
  return CarryPairGraph(n, b, std::move(nodes), std::move(arcs));
}

std::optional<std::int64_t> min_digits(std::int64_t n, std::int64_t b) {
  check_pair(n, b);
  NodeMarks seen(n * n);
  std::vector<std::int64_t> frontier, next;
  // First step from (0, 0): both digits of the pair must be nonzero.
  for_each_successor(n, b, 0, 0, [&](std::int64_t ap, std::int64_t sp, std::int64_t d, std::int64_t e) {
    if (d >= 1 && e >= 1 && !seen.test_and_set(ap * n + sp)) frontier.push_back(ap * n + sp);
  });
  for (std::int64_t steps = 1; !frontier.empty(); ++steps) {
    for (std::int64_t id : frontier) {
      if (id / n == id % n) return 2 * steps;  // diagonal: even acceptance
    }
    for (std::int64_t id : frontier) {
      if (odd_middle_digit({id / n, id % n}, n, b)) return 2 * steps + 1;
    }
    next.clear();
    for (std::int64_t id : frontier) {
      for_each_successor(n, b, id / n, id % n,
                         [&](std::int64_t ap, std::int64_t sp, std::int64_t, std::int64_t) {
                           if (!seen.test_and_set(ap * n + sp)) next.push_back(ap * n + sp);
                         });
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

bool palintiples_exist(std::int64_t n, std::int64_t b) { return min_digits(n, b).has_value(); }

std::vector<PalintipleRecord> enumerate_palintiples(std::int64_t n, std::int64_t b,
                                                    std::int64_t digit_count) {
  check_pair(n, b);
  if (digit_count < 2) throw std::invalid_argument("palintiples have at least two digits");
  const std::int64_t steps = digit_count / 2;
  const bool odd = digit_count % 2 != 0;
  const Csr g = build_csr(n, b);
  const std::int64_t node_count = n * n;

  // finish[t][v]: exactly t further edges from v can end in an accepting
  // configuration for this parity. Pruning with it makes the search visit
  // only prefixes that extend to at least one palintiple.
  std::vector<std::vector<std::uint8_t>> finish(
      static_cast<std::size_t>(steps), std::vector<std::uint8_t>(static_cast<std::size_t>(node_count), 0));
  for (std::int64_t id = 0; id < node_count; ++id) {
    const CarryPairNode v{id / n, id % n};
    finish[0][static_cast<std::size_t>(id)] =
        odd ? odd_middle_digit(v, n, b).has_value() : v.diagonal();
  }
  for (std::int64_t t = 1; t < steps; ++t) {
    for (std::int64_t id = 0; id < node_count; ++id) {
      std::uint8_t ok = 0;
      for (std::int64_t i = g.offsets[id]; i < g.offsets[id + 1] && !ok; ++i) {
        ok = finish[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(g.arcs[static_cast<std::size_t>(i)].to)];
      }
      finish[static_cast<std::size_t>(t)][static_cast<std::size_t>(id)] = ok;
    }
  }

  std::vector<PalintipleRecord> out;
  std::vector<Csr::Arc> path;
  path.reserve(static_cast<std::size_t>(steps));
  auto emit = [&](std::int64_t final_id) {
    std::vector<std::int64_t> digits(static_cast<std::size_t>(digit_count), 0);
    for (std::int64_t i = 0; i < steps; ++i) {
      digits[static_cast<std::size_t>(i)] = path[static_cast<std::size_t>(i)].lo_digit;
      digits[static_cast<std::size_t>(digit_count - 1 - i)] = path[static_cast<std::size_t>(i)].hi_digit;
    }
    if (odd) {
      digits[static_cast<std::size_t>(steps)] =
          *odd_middle_digit({final_id / n, final_id % n}, n, b);
    }
    Result<PalintipleRecord> rec = verify_palintiple(DigitString::from_lsd(b, std::move(digits)), n);
    if (!rec.ok()) throw std::logic_error("enumerated path failed verification: " + rec.error().message);
    out.push_back(std::move(rec).value());
  };
  auto dfs = [&](auto&& self, std::int64_t id, std::int64_t done) -> void {
    if (done == steps) {
      emit(id);
      return;
    }
    for (std::int64_t i = g.offsets[id]; i < g.offsets[id + 1]; ++i) {
      const Csr::Arc& arc = g.arcs[static_cast<std::size_t>(i)];
      if (done == 0 && (arc.lo_digit < 1 || arc.hi_digit < 1)) continue;
      const std::int64_t remaining = steps - done - 1;
      if (!finish[static_cast<std::size_t>(remaining)][static_cast<std::size_t>(arc.to)]) continue;
      path.push_back(arc);
      self(self, arc.to, done + 1);
      path.pop_back();
    }
  };
  dfs(dfs, 0, 0);

  std::sort(out.begin(), out.end(), [](const PalintipleRecord& x, const PalintipleRecord& y) {
    return std::lexicographical_compare(x.digits.digits.rbegin(), x.digits.digits.rend(),
                                        y.digits.digits.rbegin(), y.digits.digits.rend());
  });
  return out;
}

CarryPairGraph trim_graph(std::int64_t n, std::int64_t b) {
  check_pair(n, b);
  const Csr g = build_csr(n, b);
  const std::int64_t node_count = n * n;

  // Forward: nodes reachable after the restricted first edge.
  std::vector<std::uint8_t> fwd(static_cast<std::size_t>(node_count), 0);
  std::vector<std::int64_t> stack;
  for (std::int64_t i = g.offsets[0]; i < g.offsets[0 + 1]; ++i) {
    const auto& arc = g.arcs[static_cast<std::size_t>(i)];
    if (arc.lo_digit >= 1 && arc.hi_digit >= 1 && !fwd[static_cast<std::size_t>(arc.to)]) {
      fwd[static_cast<std::size_t>(arc.to)] = 1;
      stack.push_back(arc.to);
    }
  }
  while (!stack.empty()) {
    const std::int64_t id = stack.back();
    stack.pop_back();
    for (std::int64_t i = g.offsets[id]; i < g.offsets[id + 1]; ++i) {
      const std::int64_t to = g.arcs[static_cast<std::size_t>(i)].to;
      if (!fwd[static_cast<std::size_t>(to)]) {
        fwd[static_cast<std::size_t>(to)] = 1;
        stack.push_back(to);
      }
    }
  }

  // Backward: nodes that reach an accepting configuration (diagonal or odd).
  std::vector<std::vector<std::int64_t>> preds(static_cast<std::size_t>(node_count));
  for (std::int64_t id = 0; id < node_count; ++id) {
    for (std::int64_t i = g.offsets[id]; i < g.offsets[id + 1]; ++i) {
      preds[static_cast<std::size_t>(g.arcs[static_cast<std::size_t>(i)].to)].push_back(id);
    }
  }
  std::vector<std::uint8_t> bwd(static_cast<std::size_t>(node_count), 0);
  for (std::int64_t id = 0; id < node_count; ++id) {
    const CarryPairNode v{id / n, id % n};
    if (v.diagonal() || odd_middle_digit(v, n, b)) {
      bwd[static_cast<std::size_t>(id)] = 1;
      stack.push_back(id);
    }
  }
  while (!stack.empty()) {
    const std::int64_t id = stack.back();
    stack.pop_back();
    for (std::int64_t p : preds[static_cast<std::size_t>(id)]) {
      if (!bwd[static_cast<std::size_t>(p)]) {
        bwd[static_cast<std::size_t>(p)] = 1;
        stack.push_back(p);
      }
    }
  }

  // An edge u -> v survives when some accepting path can use it: as a first
  // edge (u is the start, both digits nonzero, v finishes) or later (u is
  // reachable past the first edge and v finishes).
  std::vector<std::uint8_t> keep_node(static_cast<std::size_t>(node_count), 0);
  std::vector<std::pair<std::int64_t, Csr::Arc>> kept;
  for (std::int64_t id = 0; id < node_count; ++id) {
    for (std::int64_t i = g.offsets[id]; i < g.offsets[id + 1]; ++i) {
      const auto& arc = g.arcs[static_cast<std::size_t>(i)];
      const bool as_first = id == 0 && arc.lo_digit >= 1 && arc.hi_digit >= 1;
      const bool as_later = fwd[static_cast<std::size_t>(id)] != 0;
      if ((as_first || as_later) && bwd[static_cast<std::size_t>(arc.to)]) {
        kept.emplace_back(id, arc);
        keep_node[static_cast<std::size_t>(id)] = 1;
        keep_node[static_cast<std::size_t>(arc.to)] = 1;
      }
    }
  }

  std::vector<CarryPairNode> nodes;
  std::vector<std::int64_t> index_of(static_cast<std::size_t>(node_count), -1);
  for (std::int64_t id = 0; id < node_count; ++id) {
    if (keep_node[static_cast<std::size_t>(id)]) {
      index_of[static_cast<std::size_t>(id)] = static_cast<std::int64_t>(nodes.size());
      nodes.push_back({id / n, id % n});
    }
  }
  std::vector<std::vector<CarryPairGraph::Arc>> arcs(nodes.size());
  for (const auto& [from, arc] : kept) {
    arcs[static_cast<std::size_t>(index_of[static_cast<std::size_t>(from)])].push_back(
        {static_cast<std::size_t>(index_of[static_cast<std::size_t>(arc.to)]),
         {arc.lo_digit, arc.hi_digit}});
  }
  for (auto& a : arcs) {
    std::sort(a.begin(), a.end(),
              [](const CarryPairGraph::Arc& x, const CarryPairGraph::Arc& y) { return x.to < y.to; });
  }
  return CarryPairGraph(n, b, std::move(nodes), std::move(arcs));
}

namespace {

struct IsoContext {
  std::size_t count;
  std::vector<std::vector<std::uint8_t>> g_adj, h_adj;
  std::vector<std::size_t> order;           // g nodes in assignment order
  std::vector<std::int64_t> mapping;        // g index -> h index or -1
  std::vector<std::uint8_t> used;           // h indices already taken
};

bool iso_assign(IsoContext& ctx, std::size_t pos,
                const std::vector<std::pair<std::int64_t, std::int64_t>>& g_sig,
                const std::vector<std::pair<std::int64_t, std::int64_t>>& h_sig) {
  if (pos == ctx.order.size()) return true;
  const std::size_t gi = ctx.order[pos];
  for (std::size_t hi = 0; hi < ctx.count; ++hi) {
    if (ctx.used[hi] || g_sig[gi] != h_sig[hi]) continue;
    if (ctx.g_adj[gi][gi] != ctx.h_adj[hi][hi]) continue;
    bool consistent = true;
    for (std::size_t prev = 0; prev < pos && consistent; ++prev) {
      const std::size_t gj = ctx.order[prev];
      const std::size_t hj = static_cast<std::size_t>(ctx.mapping[gj]);
      consistent = ctx.g_adj[gi][gj] == ctx.h_adj[hi][hj] && ctx.g_adj[gj][gi] == ctx.h_adj[hj][hi];
    }
    if (!consistent) continue;
    ctx.mapping[gi] = static_cast<std::int64_t>(hi);
    ctx.used[hi] = 1;
    if (iso_assign(ctx, pos + 1, g_sig, h_sig)) return true;
    ctx.used[hi] = 0;
    ctx.mapping[gi] = -1;
  }
  return false;
}

}  // namespace

bool digraph_isomorphic(const CarryPairGraph& g, const CarryPairGraph& h) {
  const std::size_t count = g.nodes().size();
  if (count != h.nodes().size() || g.edge_count() != h.edge_count()) return false;
  if (count == 0) return true;

  auto adj_matrix = [](const CarryPairGraph& x) {
    const std::size_t c = x.nodes().size();
    std::vector<std::vector<std::uint8_t>> adj(c, std::vector<std::uint8_t>(c, 0));
    for (std::size_t i = 0; i < c; ++i) {
      for (const auto& arc : x.arcs()[i]) adj[i][arc.to] = 1;
    }
    return adj;
  };
  auto signatures = [](const std::vector<std::vector<std::uint8_t>>& adj) {
    const std::size_t c = adj.size();
    std::vector<std::pair<std::int64_t, std::int64_t>> sig(c, {0, 0});
    for (std::size_t i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        sig[i].first += adj[i][j];   // out-degree
        sig[i].second += adj[j][i];  // in-degree
      }
    }
    return sig;
  };

  IsoContext ctx;
  ctx.count = count;
  ctx.g_adj = adj_matrix(g);
  ctx.h_adj = adj_matrix(h);
  auto g_sig = signatures(ctx.g_adj);
  auto h_sig = signatures(ctx.h_adj);
  auto sorted_g = g_sig;
  auto sorted_h = h_sig;
  std::sort(sorted_g.begin(), sorted_g.end());
  std::sort(sorted_h.begin(), sorted_h.end());
  if (sorted_g != sorted_h) return false;

  ctx.order.resize(count);
  for (std::size_t i = 0; i < count; ++i) ctx.order[i] = i;
  // Assign rare signatures first to cut the branching factor.
  std::vector<std::int64_t> freq(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      if (g_sig[i] == g_sig[j]) ++freq[i];
    }
  }
  std::sort(ctx.order.begin(), ctx.order.end(), [&](std::size_t x, std::size_t y) {
    return std::pair(freq[x], x) < std::pair(freq[y], y);
  });
  ctx.mapping.assign(count, -1);
  ctx.used.assign(count, 0);
  return iso_assign(ctx, 0, g_sig, h_sig);
}

bool is_1089_type(std::int64_t n, std::int64_t b) {
  return digraph_isomorphic(trim_graph(n, b), trim_graph(9, 10));
}

std::string to_dot(const CarryPairGraph& g) {
  std::string out = "digraph carry_pairs {\n";
  auto name = [](CarryPairNode v) {
    return "\"" + std::to_string(v.lo) + "," + std::to_string(v.hi) + "\"";
  };
  for (const CarryPairNode& v : g.nodes()) {
    out += "  " + name(v) + " [shape=" + (v.diagonal() ? "doublecircle" : "circle") + "];\n";
  }
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    for (const auto& arc : g.arcs()[i]) {
      out += "  " + name(g.nodes()[i]) + " -> " + name(g.nodes()[arc.to]) + " [label=\"" +
             std::to_string(arc.label.lo_digit) + "|" + std::to_string(arc.label.hi_digit) + "\"];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace pal
