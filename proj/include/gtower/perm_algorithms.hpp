#ifndef GTOWER_PERM_ALGORITHMS_HPP
#define GTOWER_PERM_ALGORITHMS_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "gtower/common.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"

namespace gtower {

struct NormalizerOptions {
  std::uint64_t exhaustive_cap = 200'000;  // scan tier bound on |G|
  std::uint64_t node_budget = 500'000'000;
  int stab_gen_cap = 64;  // truncation keeps pruning sound, only weaker
};

namespace detail {

inline bool normalizes(const Permutation& g, const PermGroup& h) {
  for (const auto& s : h.generators())
    if (!h.contains(conjugate(g, s))) return false;
  return true;
}

inline bool commutes_with_gens(const Permutation& g, const PermGroup& h) {
  for (const auto& s : h.generators())
    if (compose(g, s) != compose(s, g)) return false;
  return true;
}

// Collects a filtered element set into a group, keeping only the elements
// that extend the chain as the reduced generator list.
template <typename Pred>
PermGroup subgroup_by_scan(const PermGroup& g, Pred&& keep) {
  ChainBuilder builder(g.degree());
  std::vector<Permutation> gens;
  std::uint64_t count = 0;
  for (const auto& e : g.elements()) {
    if (!keep(e)) continue;
    ++count;
    if (!builder.contains(e)) {
      builder.add_generator(e);
      gens.push_back(e);
    }
  }
  if (builder.order() != count)
    throw internal_error("scanned element set is not a subgroup");
  return PermGroup(std::move(gens), std::move(builder));
}

/// Backtrack search for N_G(H) over G's stabilizer chain. Prunes with the
/// H-orbit partition (a normalizing element permutes H-orbits of equal size)
/// and with left-coset minimality against the already-known subgroup K <= N:
/// each new base image must be minimal in its orbit under the stabilizer of
/// the previous images in K, so exactly one element per coset K*x survives.
/// Every time a new normalizing element is found, K grows and the search
/// restarts with the stronger pruning.
class NormalizerBacktrack {
 public:
  NormalizerBacktrack(const PermGroup& g, const PermGroup& h, const NormalizerOptions& opt)
      : g_(g), h_(h), opt_(opt), k_(g.degree()) {
    int degree = g.degree();
    block_id_.assign(static_cast<std::size_t>(degree), -1);
    int next_block = 0;
    for (int p = 0; p < degree; ++p) {
      if (block_id_[static_cast<std::size_t>(p)] >= 0) continue;
      std::deque<int> work{p};
      block_id_[static_cast<std::size_t>(p)] = next_block;
      std::vector<int> members{p};
      while (!work.empty()) {
        int x = work.front();
        work.pop_front();
        for (const auto& s : h.generators()) {
          int y = s(x);
          if (block_id_[static_cast<std::size_t>(y)] < 0) {
            block_id_[static_cast<std::size_t>(y)] = next_block;
            members.push_back(y);
            work.push_back(y);
          }
        }
      }
      block_sizes_.push_back(static_cast<int>(members.size()));
      ++next_block;
    }
    blk_fwd_.assign(static_cast<std::size_t>(next_block), -1);
    blk_bwd_.assign(static_cast<std::size_t>(next_block), -1);
    for (const auto& s : h.generators()) {
      if (!k_.contains(s)) {
        k_.add_generator(s);
        result_gens_.push_back(s);
      }
    }
  }

  PermGroup run() {
    for (;;) {
      prepare_restart();
      found_.reset();
      dfs(0, g_.identity(), current_k_pool());
      if (!found_) break;
      k_.add_generator(*found_);
      result_gens_.push_back(*found_);
    }
    return PermGroup(std::move(result_gens_), std::move(k_));
  }

 private:
  std::vector<Permutation> current_k_pool() const {
    std::vector<Permutation> pool = k_.chain().pool;
    if (pool.empty()) pool.push_back(g_.identity());
    return pool;
  }

  void prepare_restart() {
    const auto& chain = g_.chain();
    std::size_t n_levels = chain.levels.size();
    level_inside_k_.assign(n_levels + 1, 1);
    std::vector<char> gen_in_k(chain.pool.size());
    for (std::size_t t = 0; t < chain.pool.size(); ++t)
      gen_in_k[t] = k_.contains(chain.pool[t]) ? 1 : 0;
    for (std::size_t i = n_levels; i-- > 0;) {
      char ok = level_inside_k_[i + 1];
      if (ok)
        for (int t : chain.levels[i].gen_indices)
          if (chain.gen_level[static_cast<std::size_t>(t)] == static_cast<int>(i) &&
              !gen_in_k[static_cast<std::size_t>(t)]) {
            ok = 0;
            break;
          }
      level_inside_k_[i] = ok;
    }
  }

  bool min_in_orbit(int point, const std::vector<Permutation>& gens) const {
    std::vector<int> seen{point};
    std::vector<char> mark(static_cast<std::size_t>(g_.degree()), 0);
    mark[static_cast<std::size_t>(point)] = 1;
    for (std::size_t head = 0; head < seen.size(); ++head) {
      for (const auto& s : gens) {
        int y = s(seen[head]);
        if (mark[static_cast<std::size_t>(y)]) continue;
        if (y < point) return false;
        mark[static_cast<std::size_t>(y)] = 1;
        seen.push_back(y);
      }
    }
    return true;
  }

  std::vector<Permutation> point_stabilizer_gens(const std::vector<Permutation>& gens,
                                                 int point) const {
    int degree = g_.degree();
    std::vector<int> orbit{point};
    std::vector<int> pos(static_cast<std::size_t>(degree), -1);
    pos[static_cast<std::size_t>(point)] = 0;
    std::vector<Permutation> reps{Permutation(degree)};
    std::vector<Permutation> out;
    std::unordered_set<Permutation, PermHash> seen;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& s : gens) {
        int y = s(orbit[head]);
        if (pos[static_cast<std::size_t>(y)] < 0) {
          pos[static_cast<std::size_t>(y)] = static_cast<int>(orbit.size());
          orbit.push_back(y);
          reps.push_back(compose(s, reps[head]));
          continue;
        }
        if (static_cast<int>(out.size()) >= opt_.stab_gen_cap) continue;
        // Schreier generator u_{s(x)}^-1 * s * u_x fixes `point`.
        Permutation candidate = compose(reps[static_cast<std::size_t>(pos[static_cast<std::size_t>(y)])].inverse(),
                                        compose(s, reps[head]));
        if (candidate.is_identity()) continue;
        if (seen.insert(candidate).second) out.push_back(std::move(candidate));
      }
    }
    return out;
  }

  bool dfs(int level_index, const Permutation& u, const std::vector<Permutation>& stab_gens) {
    if (++nodes_ > opt_.node_budget)
      throw cap_error("normalizer backtracking exceeded node budget of " +
                      std::to_string(opt_.node_budget));
    const auto& chain = g_.chain();
    if (level_index == static_cast<int>(chain.levels.size())) {
      if (!k_.contains(u) && normalizes(u, h_)) {
        found_ = u;
        return true;
      }
      return false;
    }
    if (level_inside_k_[static_cast<std::size_t>(level_index)] && k_.contains(u)) return false;
    const auto& level = chain.levels[static_cast<std::size_t>(level_index)];
    int b = level.base_point;
    std::vector<int> points = level.orbit;
    std::sort(points.begin(), points.end());
    for (int delta0 : points) {
      int gamma = u(delta0);
      if (block_sizes_[static_cast<std::size_t>(block_id_[static_cast<std::size_t>(gamma)])] !=
          block_sizes_[static_cast<std::size_t>(block_id_[static_cast<std::size_t>(b)])])
        continue;
      int bf = block_id_[static_cast<std::size_t>(b)];
      int bt = block_id_[static_cast<std::size_t>(gamma)];
      if (blk_fwd_[static_cast<std::size_t>(bf)] != -1 &&
          blk_fwd_[static_cast<std::size_t>(bf)] != bt)
        continue;
      if (blk_bwd_[static_cast<std::size_t>(bt)] != -1 &&
          blk_bwd_[static_cast<std::size_t>(bt)] != bf)
        continue;
      if (!min_in_orbit(gamma, stab_gens)) continue;
      bool bind = blk_fwd_[static_cast<std::size_t>(bf)] == -1;
      if (bind) {
        blk_fwd_[static_cast<std::size_t>(bf)] = bt;
        blk_bwd_[static_cast<std::size_t>(bt)] = bf;
      }
      bool hit = dfs(level_index + 1, compose(u, chain.transversal(level, delta0)),
                     point_stabilizer_gens(stab_gens, gamma));
      if (bind) {
        blk_fwd_[static_cast<std::size_t>(bf)] = -1;
        blk_bwd_[static_cast<std::size_t>(bt)] = -1;
      }
      if (hit) return true;
    }
    return false;
  }

  const PermGroup& g_;
  const PermGroup& h_;
  NormalizerOptions opt_;
  ChainBuilder k_;
  std::vector<Permutation> result_gens_;
  std::vector<int> block_id_;
  std::vector<int> block_sizes_;
  std::vector<int> blk_fwd_, blk_bwd_;
  std::vector<char> level_inside_k_;
  std::optional<Permutation> found_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline void check_subgroup_pre(const PermGroup& g, const PermGroup& h, const char* what) {
  if (g.degree() != h.degree())
    throw spec_error(std::string(what) + ": degree mismatch");
  if (!is_subgroup(h, g))
    throw spec_error(std::string(what) + ": second argument is not a subgroup of the first");
}

/// Exhaustive tier: scan every element of G. Correctness anchor for the
/// backtracking tier; requires |G| within the scan cap.
inline PermGroup normalizer_exhaustive(const PermGroup& g, const PermGroup& h) {
  return detail::subgroup_by_scan(g, [&](const Permutation& e) { return detail::normalizes(e, h); });
}

inline PermGroup normalizer_backtrack(const PermGroup& g, const PermGroup& h,
                                      const NormalizerOptions& opt = {}) {
  return detail::NormalizerBacktrack(g, h, opt).run();
}

/// N_G(H), size-tiered: exhaustive scan for small G, stabilizer-chain
/// backtracking with orbit-partition pruning beyond the cap.
inline PermGroup normalizer(const PermGroup& g, const PermGroup& h,
                            const NormalizerOptions& opt = {}) {
  check_subgroup_pre(g, h, "normalizer");
  if (g.order() <= opt.exhaustive_cap) return normalizer_exhaustive(g, h);
  return normalizer_backtrack(g, h, opt);
}

/// C_G(H) = elements of G commuting with every element of H.
inline PermGroup centralizer(const PermGroup& g, const PermGroup& h) {
  check_subgroup_pre(g, h, "centralizer");
  return detail::subgroup_by_scan(
      g, [&](const Permutation& e) { return detail::commutes_with_gens(e, h); });
}

inline PermGroup center(const PermGroup& g) { return centralizer(g, g); }

/// Smallest normal subgroup of G containing S.
inline PermGroup normal_closure(const PermGroup& g, const PermGroup& s) {
  check_subgroup_pre(g, s, "normal_closure");
  ChainBuilder builder(g.degree());
  std::vector<Permutation> gens;
  std::deque<Permutation> work;
  for (const auto& x : s.generators()) {
    if (x.is_identity() || builder.contains(x)) continue;
    builder.add_generator(x);
    gens.push_back(x);
    work.push_back(x);
  }
  while (!work.empty()) {
    Permutation x = std::move(work.front());
    work.pop_front();
    for (const auto& a : g.generators()) {
      Permutation y = conjugate(a, x);
      if (builder.contains(y)) continue;
      builder.add_generator(y);
      gens.push_back(y);
      work.push_back(y);
    }
  }
  return PermGroup(std::move(gens), std::move(builder));
}

/// Witness that H is subnormal in G: a chain H = C_0 <| C_1 <| ... <| C_d = G.
struct SubnormalCertificate {
  std::vector<PermGroup> chain;  // ascending, chain.front() = H, chain.back() = G
  int defect = 0;
};

/// Iterated normal-closure descent: K_0 = G, K_{i+1} = <H^{K_i}>. H is
/// subnormal iff the descent reaches H itself.
inline std::optional<SubnormalCertificate> is_subnormal(const PermGroup& h, const PermGroup& g) {
  check_subgroup_pre(g, h, "is_subnormal");
  std::vector<PermGroup> descending;
  descending.push_back(g);
  for (;;) {
    PermGroup next = normal_closure(descending.back(), h);
    if (next.order() == descending.back().order()) break;
    descending.push_back(std::move(next));
  }
  if (descending.back().order() != h.order()) return std::nullopt;
  SubnormalCertificate cert;
  cert.defect = static_cast<int>(descending.size()) - 1;
  cert.chain.assign(descending.rbegin(), descending.rend());
  return cert;
}

/// Representatives of the conjugacy classes, identity first.
inline std::vector<Permutation> conjugacy_class_reps(const PermGroup& g) {
  auto elems = g.elements();
  std::unordered_set<Permutation, PermHash> assigned;
  std::vector<Permutation> reps;
  for (const auto& e : elems) {
    if (assigned.count(e)) continue;
    reps.push_back(e);
    std::deque<Permutation> work{e};
    assigned.insert(e);
    while (!work.empty()) {
      Permutation x = std::move(work.front());
      work.pop_front();
      for (const auto& a : g.generators()) {
        Permutation y = conjugate(a, x);
        if (assigned.insert(y).second) work.push_back(y);
      }
    }
  }
  return reps;
}

/// No proper nontrivial normal subgroup, via normal closures of class reps.
inline bool is_simple(const PermGroup& g) {
  if (g.order() <= 1) throw spec_error("is_simple: the trivial group is rejected");
  for (const auto& rep : conjugacy_class_reps(g)) {
    if (rep.is_identity()) continue;
    PermGroup cyc = make_group({rep}, g.degree());
    if (normal_closure(g, cyc).order() != g.order()) return false;
  }
  return true;
}

}  // namespace gtower

#endif  // GTOWER_PERM_ALGORITHMS_HPP
