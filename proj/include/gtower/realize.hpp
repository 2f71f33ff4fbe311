#ifndef GTOWER_REALIZE_HPP
#define GTOWER_REALIZE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtower/automorphism.hpp"
#include "gtower/cayley_table.hpp"
#include "gtower/common.hpp"
#include "gtower/graph.hpp"
#include "gtower/graph_automorphism.hpp"
#include "gtower/perm_group.hpp"

namespace gtower {

namespace detail {

/// Cayley-scaffold builder: one gadget hub pair per generator edge, pendant
/// tails encoding generator index and edge direction by length.
class RealizeBuilder {
 public:
  explicit RealizeBuilder(const CayleyTable& t) : t_(t) {}

  Graph build(int length_shift) {
    vertices_ = 0;
    edges_.clear();
    annotations_.clear();
    for (int x = 0; x < t_.n; ++x) add_vertex("element:" + t_.labels[static_cast<std::size_t>(x)]);

    auto seq = greedy_generating_sequence(t_);
    for (std::size_t gi = 0; gi < seq.size(); ++gi) {
      int s = seq[gi];
      int k = static_cast<int>(gi) + 1;
      bool involution = t_.inv[static_cast<std::size_t>(s)] == s;
      int len_a = 2 * k - 1 + length_shift;
      int len_b = involution ? len_a : 2 * k + length_shift;
      for (int g = 0; g < t_.n; ++g) {
        int gs = t_.at(g, s);
        // One gadget per unordered pair for involutions; the symmetric tails
        // keep the swap g <-> g*s available as a graph automorphism, so both
        // sides share one annotation class there.
        if (involution && g > gs) continue;
        const char* side_a = involution ? "s" : "a";
        const char* side_b = involution ? "s" : "b";
        int a = add_vertex("gadget_" + std::string(side_a) + ":" + std::to_string(k));
        int b = add_vertex("gadget_" + std::string(side_b) + ":" + std::to_string(k));
        add_edge(g, a);
        add_edge(a, b);
        add_edge(b, gs);
        add_tail(a, len_a, k, side_a);
        add_tail(b, len_b, k, side_b);
      }
    }
    return make_graph(vertices_, edges_, annotations_);
  }

 private:
  int add_vertex(std::string annotation) {
    annotations_.push_back(std::move(annotation));
    return vertices_++;
  }

  void add_edge(int u, int v) { edges_.emplace_back(u, v); }

  void add_tail(int at, int length, int k, const char* side) {
    int prev = at;
    for (int i = 0; i < length; ++i) {
      int v = add_vertex("tail:" + std::to_string(k) + side + ":" + std::to_string(length) + ":" +
                         std::to_string(i));
      add_edge(prev, v);
      prev = v;
    }
  }

  const CayleyTable& t_;
  int vertices_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::string> annotations_;
};

/// Audit: the element hubs must be separated from every gadget and tail
/// vertex by color refinement, otherwise tail lengths collide with gadget
/// structure and spurious symmetries become possible.
inline bool realize_audit(const Graph& g) {
  auto adj = g.adjacency();
  auto colors = refine_colors(g, adj);
  std::vector<char> hub_color(static_cast<std::size_t>(g.vertex_count) + 1, 0);
  std::vector<char> other_color(static_cast<std::size_t>(g.vertex_count) + 1, 0);
  for (int v = 0; v < g.vertex_count; ++v) {
    bool hub = g.annotations[static_cast<std::size_t>(v)].rfind("element:", 0) == 0;
    (hub ? hub_color : other_color)[static_cast<std::size_t>(colors[static_cast<std::size_t>(v)])] =
        1;
  }
  for (std::size_t c = 0; c < hub_color.size(); ++c)
    if (hub_color[c] && other_color[c]) return false;
  return true;
}

}  // namespace detail

inline constexpr std::uint64_t kRealizeOrderCap = 2000;

/// A graph whose automorphism group is isomorphic to G. Directed Cayley
/// scaffold with asymmetric-tail gadgets; involutions get one symmetric
/// gadget per unordered pair. Orders 1 and 2 use fixed special graphs (the
/// smallest asymmetric tree, and a 10-vertex path).
inline Graph realize(const PermGroup& g) {
  if (g.order() > kRealizeOrderCap)
    throw cap_error("realize: order " + std::to_string(g.order()) + " exceeds cap " +
                    std::to_string(kRealizeOrderCap));
  if (g.order() == 1) {
    // Spider with arms 1, 2, 3: the smallest asymmetric tree.
    std::vector<std::string> ann(7, "tree");
    return make_graph(7, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}}, std::move(ann));
  }
  if (g.order() == 2) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < 10; ++v) edges.emplace_back(v, v + 1);
    std::vector<std::string> ann(10, "path");
    return make_graph(10, std::move(edges), std::move(ann));
  }
  auto t = to_table(g, kRealizeOrderCap);
  detail::RealizeBuilder builder(t);
  auto gens = greedy_generating_sequence(t);
  for (int shift = 0; shift < 4; ++shift) {
    Graph candidate = builder.build(shift * static_cast<int>(gens.size() + 1));
    if (detail::realize_audit(candidate)) return candidate;
  }
  throw internal_error("realize audit kept failing after retries");
}

struct RealizationCheck {
  bool passed = false;
  std::uint64_t graph_aut_order = 0;
  std::uint64_t group_order = 0;
  int vertex_count = 0;
  std::optional<GroupHom> witness;  // Aut(graph) table -> G table
};

/// Independent verification: compute Aut(graph) from scratch and test it
/// against G by table isomorphism.
inline RealizationCheck verify_realization(const PermGroup& g, const Graph& graph,
                                           const SearchOptions& opt = {}) {
  RealizationCheck check;
  check.group_order = g.order();
  check.vertex_count = graph.vertex_count;
  auto aut = graph_automorphisms(graph, opt);
  check.graph_aut_order = aut.order();
  if (aut.order() != g.order()) return check;
  auto witness = isomorphic(to_table(aut), to_table(g), opt);
  check.witness = witness;
  check.passed = witness.has_value();
  return check;
}

}  // namespace gtower

#endif  // GTOWER_REALIZE_HPP
