#ifndef GTOWER_GRAPH_HPP
#define GTOWER_GRAPH_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gtower/common.hpp"

namespace gtower {

/// Finite simple undirected graph. Edges are stored normalized (u < v),
/// sorted and duplicate-free. Annotations optionally record construction
/// provenance per vertex (group element / gadget / tail position).
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> annotations;  // empty or one per vertex

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count));
    for (auto [u, v] : edges) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }
};

inline Graph make_graph(int vertex_count, std::vector<std::pair<int, int>> edges,
                        std::vector<std::string> annotations = {}) {
  if (vertex_count < 1) throw spec_error("graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u == v) throw spec_error("loops are not allowed");
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw spec_error("edge endpoint out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) throw spec_error("duplicate edge");
  if (!annotations.empty() && annotations.size() != static_cast<std::size_t>(vertex_count))
    throw spec_error("annotation count mismatch");
  return Graph{vertex_count, std::move(edges), std::move(annotations)};
}

/// "n m" header then one "u v" line per edge, 0-indexed, sorted.
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count << ' ' << g.edges.size() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw spec_error("edge list: bad header");
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(in >> u >> v)) throw spec_error("edge list: truncated at edge " + std::to_string(i));
    edges.emplace_back(u, v);
  }
  return make_graph(n, std::move(edges));
}

}  // namespace gtower

#endif  // GTOWER_GRAPH_HPP
