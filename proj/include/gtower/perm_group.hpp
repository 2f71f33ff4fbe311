#ifndef GTOWER_PERM_GROUP_HPP
#define GTOWER_PERM_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "gtower/common.hpp"
#include "gtower/permutation.hpp"

namespace gtower {

namespace detail {

/// Stabilizer chain storage shared by ChainBuilder and PermGroup. Strong
/// generators live in one pool; level i applies every pool generator that
/// fixes base points 0..i-1 (tracked via gen_level >= i).
struct Chain {
  int degree = 0;
  std::vector<Permutation> pool;
  std::vector<Permutation> pool_invs;
  std::vector<int> gen_level;  // deepest level whose full base prefix the gen fixes

  struct Level {
    int base_point = -1;
    std::vector<int> gen_indices;   // pool indices applicable at this level
    std::vector<int> orbit;         // BFS order; orbit[0] == base_point
    std::vector<int> orbit_pos;     // degree-sized; -1 outside the orbit
    std::vector<int> parent_point;  // Schreier tree edges
    std::vector<int> parent_gen;    // pool index

    Level(int degree, int base)
        : base_point(base),
          orbit_pos(static_cast<std::size_t>(degree), -1),
          parent_point(static_cast<std::size_t>(degree), -1),
          parent_gen(static_cast<std::size_t>(degree), -1) {
      orbit.push_back(base);
      orbit_pos[static_cast<std::size_t>(base)] = 0;
    }
  };

  std::vector<Level> levels;

  // x := u_delta^-1 * x, walking the Schreier tree towards the base.
  void apply_inverse_transversal(const Level& level, int delta, Permutation& x) const {
    while (delta != level.base_point) {
      int t = level.parent_gen[static_cast<std::size_t>(delta)];
      x = compose(pool_invs[static_cast<std::size_t>(t)], x);
      delta = level.parent_point[static_cast<std::size_t>(delta)];
    }
  }

  Permutation transversal(const Level& level, int delta) const {
    std::vector<int> path;
    while (delta != level.base_point) {
      path.push_back(level.parent_gen[static_cast<std::size_t>(delta)]);
      delta = level.parent_point[static_cast<std::size_t>(delta)];
    }
    Permutation u(degree);
    for (std::size_t i = path.size(); i-- > 0;)
      u = compose(pool[static_cast<std::size_t>(path[i])], u);
    return u;
  }

  /// Sifts x through levels starting at `from`; x becomes the residue.
  /// Returns the level index where stripping stopped (levels.size() on success).
  int sift_inplace(Permutation& x, int from) const {
    for (int i = from; i < static_cast<int>(levels.size()); ++i) {
      const auto& level = levels[static_cast<std::size_t>(i)];
      int delta = x(level.base_point);
      if (level.orbit_pos[static_cast<std::size_t>(delta)] < 0) return i;
      apply_inverse_transversal(level, delta, x);
    }
    return static_cast<int>(levels.size());
  }

  bool contains(const Permutation& p) const {
    Permutation x = p;
    return sift_inplace(x, 0) == static_cast<int>(levels.size()) && x.is_identity();
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& level : levels) o = checked_mul(o, level.orbit.size());
    return o;
  }
};

}  // namespace detail

/// Incremental deterministic Schreier-Sims. The chain is a valid BSGS after
/// every add_generator call. An optional target order short-circuits
/// Schreier-generator processing as soon as the transversal product reaches
/// it; unique factorization over the transversals makes the partial chain a
/// valid BSGS at that point.
class ChainBuilder {
 public:
  explicit ChainBuilder(int degree, std::uint64_t target_order = 0)
      : target_order_(target_order) {
    if (degree < 1) throw spec_error("group degree must be at least 1");
    chain_.degree = degree;
  }

  int degree() const { return chain_.degree; }
  std::uint64_t order() const { return chain_.order(); }
  bool done() const { return target_order_ != 0 && chain_.order() == target_order_; }
  const detail::Chain& chain() const { return chain_; }
  detail::Chain take_chain() && { return std::move(chain_); }

  bool contains(const Permutation& p) const {
    if (p.degree() != chain_.degree) throw spec_error("degree mismatch in membership test");
    return chain_.contains(p);
  }

  void add_generator(const Permutation& g) {
    if (g.degree() != chain_.degree) throw spec_error("generator degree mismatch");
    if (done()) {
      if (!contains(g)) throw internal_error("known-order chain rejects claimed member");
      return;
    }
    Permutation x = g;
    int drop = chain_.sift_inplace(x, 0);
    if (x.is_identity()) return;
    insert(drop, x);
    process_pending();
  }

 private:
  void insert(int drop, const Permutation& residue) {
    if (drop == static_cast<int>(chain_.levels.size()))
      chain_.levels.emplace_back(chain_.degree, residue.first_moved());
    int gen_index = static_cast<int>(chain_.pool.size());
    chain_.pool.push_back(residue);
    chain_.pool_invs.push_back(residue.inverse());
    chain_.gen_level.push_back(drop);
    for (int i = 0; i <= drop; ++i) {
      auto& level = chain_.levels[static_cast<std::size_t>(i)];
      level.gen_indices.push_back(gen_index);
      for (std::size_t pos = 0; pos < level.orbit.size(); ++pos)
        pending_.push_back({i, static_cast<int>(pos), gen_index});
      grow_orbit(i, gen_index);
    }
  }

  // Applies pool generator `gen_index` across the whole current orbit of the
  // level, then closes the extension under all applicable generators.
  void grow_orbit(int level_index, int gen_index) {
    auto& level = chain_.levels[static_cast<std::size_t>(level_index)];
    std::deque<int> work;
    auto expand = [&](int point, int t) {
      int image = chain_.pool[static_cast<std::size_t>(t)](point);
      if (level.orbit_pos[static_cast<std::size_t>(image)] >= 0) return;
      int pos = static_cast<int>(level.orbit.size());
      level.orbit.push_back(image);
      level.orbit_pos[static_cast<std::size_t>(image)] = pos;
      level.parent_point[static_cast<std::size_t>(image)] = point;
      level.parent_gen[static_cast<std::size_t>(image)] = t;
      for (int u : level.gen_indices) pending_.push_back({level_index, pos, u});
      work.push_back(image);
    };
    for (std::size_t pos = 0; pos < level.orbit.size(); ++pos)
      expand(level.orbit[pos], gen_index);
    while (!work.empty()) {
      int point = work.front();
      work.pop_front();
      for (int t : level.gen_indices) expand(point, t);
    }
  }

  // Drains the Schreier-generator worklist until the chain is closed (or the
  // target order is reached).
  void process_pending() {
    while (!pending_.empty()) {
      if (done()) {
        pending_.clear();
        return;
      }
      auto [li, pos, t] = pending_.back();
      pending_.pop_back();
      const auto& level = chain_.levels[static_cast<std::size_t>(li)];
      int delta = level.orbit[static_cast<std::size_t>(pos)];
      // Schreier generator u_{s(delta)}^-1 * s * u_delta; fixes bases 0..li.
      Permutation x = compose(chain_.pool[static_cast<std::size_t>(t)],
                              chain_.transversal(level, delta));
      int image = x(level.base_point);
      chain_.apply_inverse_transversal(level, image, x);
      int drop = chain_.sift_inplace(x, li + 1);
      if (x.is_identity()) continue;
      insert(drop, x);
    }
  }

  std::uint64_t target_order_;
  detail::Chain chain_;
  std::vector<std::tuple<int, int, int>> pending_;  // (level, orbit pos, pool gen)
};

/// A permutation group with an eagerly built stabilizer chain. Immutable
/// after construction; safe to share across threads.
class PermGroup {
 public:
  static constexpr std::uint64_t kEnumerationCap = 2'000'000;

  PermGroup(std::vector<Permutation> generators, ChainBuilder&& builder)
      : generators_(std::move(generators)), chain_(std::move(builder).take_chain()) {
    order_ = chain_.order();
  }

  int degree() const { return chain_.degree; }
  std::uint64_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const detail::Chain& chain() const { return chain_; }

  std::vector<int> base() const {
    std::vector<int> b;
    for (const auto& level : chain_.levels) b.push_back(level.base_point);
    return b;
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != chain_.degree) throw spec_error("degree mismatch in membership test");
    return chain_.contains(p);
  }

  Permutation identity() const { return Permutation(chain_.degree); }

  /// Images of the base points: a compact per-element signature.
  std::vector<int> base_images(const Permutation& p) const {
    std::vector<int> key;
    key.reserve(chain_.levels.size());
    for (const auto& level : chain_.levels) key.push_back(p(level.base_point));
    return key;
  }

  /// Deterministic element enumeration: identity first, then per level the
  /// base point followed by the remaining orbit in ascending order.
  std::vector<Permutation> elements(bool allow_large = false) const {
    if (order_ > kEnumerationCap && !allow_large)
      throw cap_error("element enumeration refused: order " + std::to_string(order_) +
                      " exceeds cap " + std::to_string(kEnumerationCap));
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(order_));
    enumerate_rec(0, Permutation(chain_.degree), out);
    return out;
  }

  template <typename Rng>
  Permutation random_element(Rng& rng) const {
    Permutation e(chain_.degree);
    for (const auto& level : chain_.levels) {
      std::uniform_int_distribution<std::size_t> pick(0, level.orbit.size() - 1);
      e = compose(e, chain_.transversal(level, level.orbit[pick(rng)]));
    }
    return e;
  }

 private:
  void enumerate_rec(std::size_t level_index, const Permutation& prefix,
                     std::vector<Permutation>& out) const {
    if (level_index == chain_.levels.size()) {
      out.push_back(prefix);
      return;
    }
    const auto& level = chain_.levels[level_index];
    std::vector<int> points = level.orbit;
    std::sort(points.begin(), points.end());
    auto it = std::find(points.begin(), points.end(), level.base_point);
    std::rotate(points.begin(), it, it + 1);
    for (int delta : points)
      enumerate_rec(level_index + 1, compose(prefix, chain_.transversal(level, delta)), out);
  }

  std::uint64_t order_;
  std::vector<Permutation> generators_;
  detail::Chain chain_;
};

/// Schreier-Sims construction. An empty or identity-only generator list gives
/// the trivial group of the stated degree.
inline PermGroup make_group(std::vector<Permutation> gens, int degree) {
  for (const auto& g : gens)
    if (g.degree() != degree) throw spec_error("generator degree mismatch");
  ChainBuilder builder(degree);
  for (const auto& g : gens) builder.add_generator(g);
  return PermGroup(std::move(gens), std::move(builder));
}

inline PermGroup trivial_group(int degree) { return make_group({}, degree); }

/// Construction that stops Schreier processing once the independently known
/// order is reached. Throws if the generators cannot reach that order.
inline PermGroup make_group_with_order(std::vector<Permutation> gens, int degree,
                                       std::uint64_t known_order) {
  ChainBuilder builder(degree, known_order);
  for (const auto& g : gens) builder.add_generator(g);
  if (builder.order() != known_order)
    throw internal_error("generators reach order " + std::to_string(builder.order()) +
                         ", expected " + std::to_string(known_order));
  return PermGroup(std::move(gens), std::move(builder));
}

inline bool is_subgroup(const PermGroup& inner, const PermGroup& outer) {
  if (inner.degree() != outer.degree()) return false;
  for (const auto& g : inner.generators())
    if (!outer.contains(g)) return false;
  return true;
}

/// H normal in G, assuming H <= G.
inline bool is_normal_in(const PermGroup& h, const PermGroup& g) {
  for (const auto& a : g.generators())
    for (const auto& b : h.generators())
      if (!h.contains(conjugate(a, b))) return false;
  return true;
}

inline bool same_group(const PermGroup& a, const PermGroup& b) {
  return a.degree() == b.degree() && a.order() == b.order() && is_subgroup(a, b);
}

}  // namespace gtower

#endif  // GTOWER_PERM_GROUP_HPP
