#ifndef GTOWER_GRAPH_AUTOMORPHISM_HPP
#define GTOWER_GRAPH_AUTOMORPHISM_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "gtower/common.hpp"
#include "gtower/graph.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/table_search.hpp"

namespace gtower {

namespace detail {

/// Equitable-partition colors: iterate (color, sorted neighbor colors) to a
/// fixpoint.
inline std::vector<int> refine_colors(const Graph& g, const std::vector<std::vector<int>>& adj) {
  std::vector<int> color(static_cast<std::size_t>(g.vertex_count));
  for (int v = 0; v < g.vertex_count; ++v)
    color[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  for (int round = 0; round < g.vertex_count; ++round) {
    std::map<std::vector<int>, int> dict;
    std::vector<std::vector<int>> keys(static_cast<std::size_t>(g.vertex_count));
    for (int v = 0; v < g.vertex_count; ++v) {
      std::vector<int> key{color[static_cast<std::size_t>(v)]};
      std::vector<int> nbr;
      for (int u : adj[static_cast<std::size_t>(v)]) nbr.push_back(color[static_cast<std::size_t>(u)]);
      std::sort(nbr.begin(), nbr.end());
      key.insert(key.end(), nbr.begin(), nbr.end());
      keys[static_cast<std::size_t>(v)] = key;
      dict[std::move(key)] = 0;
    }
    int next = 0;
    for (auto& [k, v] : dict) v = next++;
    std::vector<int> fresh(static_cast<std::size_t>(g.vertex_count));
    for (int v = 0; v < g.vertex_count; ++v) fresh[static_cast<std::size_t>(v)] = dict[keys[static_cast<std::size_t>(v)]];
    if (fresh == color) break;
    color = std::move(fresh);
  }
  return color;
}

class GraphAutSearch {
 public:
  GraphAutSearch(const Graph& g, const SearchOptions& opt)
      : g_(g), adj_(g.adjacency()), opt_(opt) {
    color_ = refine_colors(g_, adj_);
    int n = g_.vertex_count;
    if (n <= 4096) {
      words_ = static_cast<std::size_t>((n + 63) / 64);
      matrix_.assign(static_cast<std::size_t>(n) * words_, 0);
      for (auto [u, v] : g_.edges) {
        matrix_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] |=
            1ULL << (v % 64);
        matrix_[static_cast<std::size_t>(v) * words_ + static_cast<std::size_t>(u) / 64] |=
            1ULL << (u % 64);
      }
    }
    build_order();
    img_.assign(static_cast<std::size_t>(n), -1);
    used_.assign(static_cast<std::size_t>(n), 0);
    mapped_nbr_src_.assign(static_cast<std::size_t>(n), 0);
    mapped_nbr_img_.assign(static_cast<std::size_t>(n), 0);
  }

  template <typename Sink>
  void run(Sink&& sink) {
    stop_ = false;
    dfs(0, sink);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool adjacent(int u, int v) const {
    if (!matrix_.empty())
      return matrix_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] >>
                 (v % 64) &
             1ULL;
    const auto& row = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(row.begin(), row.end(), v);
  }

  // Constraint-first static order: repeatedly pick the vertex with the most
  // already-ordered neighbours, breaking ties towards smaller color cells.
  void build_order() {
    int n = g_.vertex_count;
    std::vector<int> cell_size(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u)
        if (color_[static_cast<std::size_t>(u)] == color_[static_cast<std::size_t>(v)])
          ++cell_size[static_cast<std::size_t>(v)];
    }
    std::vector<int> placed_nbrs(static_cast<std::size_t>(n), 0);
    std::vector<char> placed(static_cast<std::size_t>(n), 0);
    for (int step = 0; step < n; ++step) {
      int best = -1;
      for (int v = 0; v < n; ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        if (best < 0) {
          best = v;
          continue;
        }
        auto key = [&](int x) {
          return std::tuple(-placed_nbrs[static_cast<std::size_t>(x)],
                            cell_size[static_cast<std::size_t>(x)], x);
        };
        if (key(v) < key(best)) best = v;
      }
      order_.push_back(best);
      placed[static_cast<std::size_t>(best)] = 1;
      for (int u : adj_[static_cast<std::size_t>(best)]) ++placed_nbrs[static_cast<std::size_t>(u)];
    }
  }

  template <typename Sink>
  void dfs(std::size_t depth, Sink&& sink) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!sink(img_)) stop_ = true;
      return;
    }
    int v = order_[depth];
    for (int w = 0; w < g_.vertex_count; ++w) {
      if (used_[static_cast<std::size_t>(w)]) continue;
      if (color_[static_cast<std::size_t>(w)] != color_[static_cast<std::size_t>(v)]) continue;
      if (mapped_nbr_src_[static_cast<std::size_t>(v)] != mapped_nbr_img_[static_cast<std::size_t>(w)])
        continue;
      if (++nodes_ > opt_.node_budget)
        throw cap_error("graph automorphism search exceeded node budget");
      bool ok = true;
      for (int u : adj_[static_cast<std::size_t>(v)]) {
        int fu = img_[static_cast<std::size_t>(u)];
        if (fu >= 0 && !adjacent(fu, w)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      img_[static_cast<std::size_t>(v)] = w;
      used_[static_cast<std::size_t>(w)] = 1;
      for (int u : adj_[static_cast<std::size_t>(v)]) ++mapped_nbr_src_[static_cast<std::size_t>(u)];
      for (int y : adj_[static_cast<std::size_t>(w)]) ++mapped_nbr_img_[static_cast<std::size_t>(y)];
      dfs(depth + 1, sink);
      for (int u : adj_[static_cast<std::size_t>(v)]) --mapped_nbr_src_[static_cast<std::size_t>(u)];
      for (int y : adj_[static_cast<std::size_t>(w)]) --mapped_nbr_img_[static_cast<std::size_t>(y)];
      img_[static_cast<std::size_t>(v)] = -1;
      used_[static_cast<std::size_t>(w)] = 0;
      if (stop_) return;
    }
  }

  const Graph& g_;
  std::vector<std::vector<int>> adj_;
  SearchOptions opt_;
  std::vector<int> color_;
  std::vector<std::uint64_t> matrix_;
  std::size_t words_ = 0;
  std::vector<int> order_, img_;
  std::vector<char> used_;
  std::vector<int> mapped_nbr_src_, mapped_nbr_img_;
  std::uint64_t nodes_ = 0;
  bool stop_ = false;
};

}  // namespace detail

/// Full automorphism group via equitable-partition refinement plus
/// backtracking, as a permutation group on the vertices. Two passes: count
/// the automorphisms, then assemble the group with the order known.
inline PermGroup graph_automorphisms(const Graph& g, const SearchOptions& opt = {}) {
  if (g.vertex_count < 1) throw spec_error("graph_automorphisms needs a vertex");
  std::uint64_t count = 0;
  {
    detail::GraphAutSearch search(g, opt);
    search.run([&](const std::vector<int>&) {
      ++count;
      return count < opt.max_results;
    });
    if (count >= opt.max_results)
      throw cap_error("graph automorphism search reached the result cap");
  }
  ChainBuilder builder(g.vertex_count, count);
  std::vector<Permutation> gens;
  detail::GraphAutSearch search(g, opt);
  search.run([&](const std::vector<int>& img) {
    Permutation p(img);
    if (!builder.done() && !builder.contains(p)) gens.push_back(p);
    builder.add_generator(p);
    return true;
  });
  if (builder.order() != count)
    throw internal_error("graph automorphism chain missed some leaves");
  return PermGroup(std::move(gens), std::move(builder));
}

}  // namespace gtower

#endif  // GTOWER_GRAPH_AUTOMORPHISM_HPP
