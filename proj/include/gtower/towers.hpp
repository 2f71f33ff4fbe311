#ifndef GTOWER_TOWERS_HPP
#define GTOWER_TOWERS_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtower/automorphism.hpp"
#include "gtower/cayley_table.hpp"
#include "gtower/common.hpp"
#include "gtower/perm_algorithms.hpp"
#include "gtower/perm_group.hpp"

namespace gtower {

/// The normaliser tower N_0 = H, N_{a+1} = N_G(N_a), up to its fixpoint.
struct NormaliserTowerRecord {
  PermGroup ambient;
  std::vector<PermGroup> levels;  // N_0 .. N_height; the last is the fixpoint
  int height = 0;
  bool terminated_at_full = false;
};

inline NormaliserTowerRecord normaliser_tower(const PermGroup& h, const PermGroup& g,
                                              const NormalizerOptions& opt = {}) {
  check_subgroup_pre(g, h, "normaliser_tower");
  NormaliserTowerRecord rec{g, {h}, 0, false};
  for (;;) {
    PermGroup next = normalizer(g, rec.levels.back(), opt);
    if (next.order() == rec.levels.back().order()) break;
    if (next.order() < rec.levels.back().order())
      throw internal_error("normaliser tower decreased");
    rec.levels.push_back(std::move(next));
    if (rec.levels.size() > 8 * sizeof(std::uint64_t))
      throw internal_error("normaliser tower exceeded the strict-ascent bound");
  }
  rec.height = static_cast<int>(rec.levels.size()) - 1;
  rec.terminated_at_full = rec.levels.back().order() == g.order();
  return rec;
}

enum class TowerTermination { complete_level, size_cap, step_cap };

inline const char* to_string(TowerTermination t) {
  switch (t) {
    case TowerTermination::complete_level: return "complete_level";
    case TowerTermination::size_cap: return "size_cap";
    case TowerTermination::step_cap: return "step_cap";
  }
  return "?";
}

struct TowerOptions {
  int step_cap = 10;
  std::uint64_t size_cap = kDefaultTableCap;
  SearchOptions search;
  bool check_invariants = true;  // per-level Inn/Aut/centraliser verification
};

/// Per-level health data carried in reports.
struct TowerLevelInfo {
  std::uint64_t order = 0;
  int degree = 0;  // degree of the permutation representation the level came from
  bool centreless = false;
  bool complete = false;
  bool inn_normal_in_aut = true;
  bool centraliser_of_inn_trivial = true;
  bool embedding_injective = true;
};

/// The automorphism tower G_0, G_1 = Aut G_0, ... as Cayley tables, with the
/// inner-automorphism embeddings realizing each inclusion.
struct AutTowerRecord {
  std::vector<CayleyTable> levels;
  std::vector<GroupHom> embeddings;  // embeddings[a]: levels[a] -> levels[a+1], g -> i_g
  std::vector<TowerLevelInfo> info;  // one per level
  int tau = 0;                       // exact iff termination == complete_level
  TowerTermination termination = TowerTermination::complete_level;
};

namespace detail {

inline std::unordered_map<Permutation, int, PermHash> index_elements(
    const std::vector<Permutation>& elems) {
  std::unordered_map<Permutation, int, PermHash> idx;
  idx.reserve(elems.size() * 2);
  for (std::size_t i = 0; i < elems.size(); ++i) idx.emplace(elems[i], static_cast<int>(i));
  return idx;
}

}  // namespace detail

/// Iterates G_{a+1} = Aut(G_a), re-representing each automorphism group as a
/// permutation group on element indices. Requires a centreless start; every
/// finite centreless tower must reach a complete level (Wielandt), so a
/// cap-stop is reported distinctly and tau is then only a lower bound.
inline AutTowerRecord automorphism_tower(const PermGroup& g, const TowerOptions& opt = {}) {
  AutTowerRecord rec;
  rec.levels.push_back(to_table(g, opt.size_cap));
  if (!is_centreless(rec.levels.front()))
    throw spec_error("automorphism_tower requires a centreless group");
  {
    TowerLevelInfo info;
    info.order = static_cast<std::uint64_t>(rec.levels.front().n);
    info.degree = g.degree();
    info.centreless = true;
    rec.info.push_back(info);
  }

  for (int level = 0;; ++level) {
    const CayleyTable& t = rec.levels.back();
    SearchOptions so = opt.search;
    so.max_results = std::max<std::uint64_t>(opt.size_cap, static_cast<std::uint64_t>(t.n));
    std::optional<AutGroup> aut_holder;
    try {
      aut_holder = automorphism_group(t, so);
    } catch (const result_cap_error&) {
      rec.tau = level;
      rec.termination = TowerTermination::size_cap;
      return rec;
    }
    AutGroup& aut = *aut_holder;
    auto& info = rec.info.back();
    if (opt.check_invariants) {
      info.inn_normal_in_aut = is_subgroup(aut.inner, aut.autos) && is_normal_in(aut.inner, aut.autos);
      info.centraliser_of_inn_trivial = centralizer(aut.autos, aut.inner).order() == 1;
      if (!info.inn_normal_in_aut || !info.centraliser_of_inn_trivial)
        throw internal_error("tower level failed the Inn/Aut invariants");
    }
    if (aut.complete()) {
      info.complete = true;
      rec.tau = level;
      rec.termination = TowerTermination::complete_level;
      return rec;
    }
    if (level + 1 > opt.step_cap) {
      rec.tau = level;
      rec.termination = TowerTermination::step_cap;
      return rec;
    }
    if (aut.autos.order() > opt.size_cap) {
      rec.tau = level;
      rec.termination = TowerTermination::size_cap;
      return rec;
    }

    // Next level: Aut(G_level) as a table over its own element indices.
    auto elems = aut.autos.elements(/*allow_large=*/true);
    auto index = detail::index_elements(elems);
    CayleyTable next = to_table(aut.autos, opt.size_cap);

    GroupHom emb;
    emb.source_digest = t.digest_hex();
    emb.target_digest = next.digest_hex();
    emb.map.resize(static_cast<std::size_t>(t.n));
    std::vector<char> hit(elems.size(), 0);
    for (int x = 0; x < t.n; ++x) {
      auto it = index.find(inner_permutation(t, x));
      if (it == index.end()) throw internal_error("inner automorphism missing from Aut");
      emb.map[static_cast<std::size_t>(x)] = it->second;
      hit[static_cast<std::size_t>(it->second)] = 1;
    }
    emb.injective = true;
    {
      std::vector<char> seen(elems.size(), 0);
      for (int v : emb.map) {
        if (seen[static_cast<std::size_t>(v)]) emb.injective = false;
        seen[static_cast<std::size_t>(v)] = 1;
      }
    }
    emb.surjective = static_cast<std::uint64_t>(t.n) == aut.autos.order();
    if (!emb.injective) throw internal_error("inner embedding not injective on a centreless level");
    rec.info.back().embedding_injective = emb.injective;
    // The embedding image must be exactly Inn(G_level).
    if (opt.check_invariants) {
      std::uint64_t image_size = 0;
      for (char c : hit) image_size += static_cast<unsigned char>(c);
      if (image_size != aut.inner.order())
        throw internal_error("embedding image differs from Inn");
      for (int x = 0; x < std::min(t.n, 64); ++x)
        if (!aut.inner.contains(elems[static_cast<std::size_t>(
                emb.map[static_cast<std::size_t>(x)])]))
          throw internal_error("embedding image escapes Inn");
    }
    rec.embeddings.push_back(std::move(emb));

    TowerLevelInfo next_info;
    next_info.order = aut.autos.order();
    next_info.degree = aut.autos.degree();
    next_info.centreless = is_centreless(next);
    if (!next_info.centreless)
      throw internal_error("Aut of a centreless level must be centreless");
    rec.levels.push_back(std::move(next));
    rec.info.push_back(next_info);
  }
}

/// Tower height: the least level whose automorphism group is no bigger than
/// its inner automorphisms. Exact only when the tower completed.
inline int tau(const PermGroup& g, const TowerOptions& opt = {}) {
  return automorphism_tower(g, opt).tau;
}

}  // namespace gtower

#endif  // GTOWER_TOWERS_HPP
