#ifndef GTOWER_AUTOMORPHISM_HPP
#define GTOWER_AUTOMORPHISM_HPP

#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gtower/cayley_table.hpp"
#include "gtower/common.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"
#include "gtower/table_search.hpp"

namespace gtower {

/// Aut(T) as a permutation group on element indices, with the inner
/// automorphism subgroup identified.
struct AutGroup {
  CayleyTable table;
  PermGroup autos;
  PermGroup inner;
  std::vector<int> center;  // element indices of Z(T)

  Permutation inner_perm(int g) const { return inner_permutation(table, g); }
  bool complete() const { return autos.order() == inner.order(); }
};

namespace detail {

inline std::vector<std::vector<int>> signature_candidates(const CayleyTable& t,
                                                          const ClassData& cd,
                                                          const std::vector<int>& seq) {
  std::vector<std::vector<int>> out;
  for (int gen : seq) {
    int want = cd.signature[static_cast<std::size_t>(cd.class_of[static_cast<std::size_t>(gen)])];
    std::vector<int> cands;
    for (int x = 0; x < t.n; ++x)
      if (cd.signature[static_cast<std::size_t>(cd.class_of[static_cast<std::size_t>(x)])] == want)
        cands.push_back(x);
    out.push_back(std::move(cands));
  }
  return out;
}

inline void self_check_aut(const AutGroup& a, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, a.table.n - 1);
  // Sampled membership check: random chain elements must be table
  // automorphisms.
  for (int s = 0; s < 10; ++s) {
    Permutation p = a.autos.random_element(rng);
    for (int i = 0; i < 200; ++i) {
      int x = pick(rng), y = pick(rng);
      if (p(a.table.at(x, y)) != a.table.at(p(x), p(y)))
        throw internal_error("automorphism sampling check failed");
    }
  }
  if (a.inner.order() == 0 || a.autos.order() % a.inner.order() != 0)
    throw internal_error("|Inn| does not divide |Aut|");
  if (!is_subgroup(a.inner, a.autos) || !is_normal_in(a.inner, a.autos))
    throw internal_error("Inn is not normal in Aut");
  // pi * i_g * pi^-1 = i_{pi(g)} on sampled g for every Aut generator.
  for (const auto& pi : a.autos.generators())
    for (int s = 0; s < 20; ++s) {
      int g = pick(rng);
      if (conjugate(pi, a.inner_perm(g)) != a.inner_perm(pi(g)))
        throw internal_error("inner automorphism conjugation identity failed");
    }
}

}  // namespace detail

/// Full automorphism group by backtracking over generator images, pruned by
/// the refined conjugacy-class signatures. Runs the search twice: once to
/// count |Aut| (each automorphism corresponds to exactly one leaf), then once
/// more to assemble the permutation group with the order known, which skips
/// the expensive Schreier closure.
inline AutGroup automorphism_group(const CayleyTable& t, const SearchOptions& opt = {}) {
  auto cd = detail::analyzed_classes(t);
  auto seq = greedy_generating_sequence(t);
  auto candidates = detail::signature_candidates(t, cd, seq);

  std::uint64_t count = 0;
  {
    SearchOptions pass1 = opt;
    if (pass1.max_results != UINT64_MAX) ++pass1.max_results;
    detail::GenImageSearch search(t, t, /*injective=*/true, /*surjective=*/false, pass1);
    search.set_generators(seq, candidates);
    search.run([&](const std::vector<int>&) {
      ++count;
      return true;
    });
    if (count > opt.max_results)
      throw result_cap_error("automorphism group exceeds the result cap of " +
                             std::to_string(opt.max_results));
  }

  ChainBuilder builder(std::max(t.n, 1), count);
  std::vector<Permutation> gens;
  if (t.n > 1) {
    detail::GenImageSearch search(t, t, true, false, opt);
    search.set_generators(seq, candidates);
    search.run([&](const std::vector<int>& img) {
      Permutation p(img);
      if (!builder.done() && !builder.contains(p)) gens.push_back(p);
      builder.add_generator(p);
      return true;
    });
  }
  if (builder.order() != count) throw internal_error("automorphism chain missed some leaves");

  AutGroup out{t, PermGroup(std::move(gens), std::move(builder)), trivial_group(std::max(t.n, 1)),
               table_center(t)};
  std::vector<Permutation> inner_gens;
  for (int g : seq) inner_gens.push_back(inner_permutation(t, g));
  std::uint64_t inner_order = static_cast<std::uint64_t>(t.n) / out.center.size();
  out.inner = t.n > 1 ? make_group_with_order(std::move(inner_gens), t.n, inner_order)
                      : trivial_group(1);
  detail::self_check_aut(out, opt.seed);
  return out;
}

/// Aut = Inn test for a centreless table. Rejects tables with nontrivial
/// centre, which the tower machinery never feeds here.
inline bool is_complete(const CayleyTable& t, const SearchOptions& opt = {}) {
  if (!is_centreless(t)) throw spec_error("is_complete requires a centreless table");
  if (t.n == 1) return true;
  auto cd = detail::analyzed_classes(t);
  auto seq = greedy_generating_sequence(t);
  auto candidates = detail::signature_candidates(t, cd, seq);
  SearchOptions capped = opt;
  capped.max_results = static_cast<std::uint64_t>(t.n) + 1;
  detail::GenImageSearch search(t, t, true, false, capped);
  search.set_generators(seq, candidates);
  std::uint64_t count = 0;
  search.run([&](const std::vector<int>&) {
    ++count;
    return true;
  });
  if (count < static_cast<std::uint64_t>(t.n))
    throw internal_error("automorphism search found fewer maps than Inn");
  return count == static_cast<std::uint64_t>(t.n);
}

/// A group homomorphism between tables, serialized by table digests.
struct GroupHom {
  std::string source_digest;
  std::string target_digest;
  std::vector<int> map;
  bool injective = false;
  bool surjective = false;
};

struct HomConstraints {
  std::vector<std::pair<int, int>> pinned;  // (source index, target index)
  bool surjective = false;
};

namespace detail {

inline GroupHom finish_hom(const CayleyTable& s, const CayleyTable& t, std::vector<int> map) {
  GroupHom h;
  h.source_digest = s.digest_hex();
  h.target_digest = t.digest_hex();
  std::vector<char> hit(static_cast<std::size_t>(t.n), 0);
  std::size_t distinct = 0;
  for (int v : map)
    if (!hit[static_cast<std::size_t>(v)]) {
      hit[static_cast<std::size_t>(v)] = 1;
      ++distinct;
    }
  h.injective = distinct == static_cast<std::size_t>(s.n);
  h.surjective = distinct == static_cast<std::size_t>(t.n);
  h.map = std::move(map);
  return h;
}

}  // namespace detail

/// Complete backtracking over generator images: returns a homomorphism
/// satisfying the pinned images (and surjectivity if flagged), or certifies
/// that none exists.
inline std::optional<GroupHom> hom_search(const CayleyTable& s, const CayleyTable& t,
                                          const HomConstraints& constraints,
                                          const SearchOptions& opt = {}) {
  for (auto [a, b] : constraints.pinned)
    if (a == 0 && b != 0)
      throw spec_error("contradictory constraints: identity must map to identity");
  auto seq = greedy_generating_sequence(s);
  auto src_orders = element_orders(s);
  auto tgt_orders = element_orders(t);
  std::vector<int> pinned(static_cast<std::size_t>(s.n), -1);
  for (auto [a, b] : constraints.pinned) {
    if (a < 0 || a >= s.n || b < 0 || b >= t.n) throw spec_error("pinned image out of range");
    if (pinned[static_cast<std::size_t>(a)] != -1 && pinned[static_cast<std::size_t>(a)] != b)
      throw spec_error("contradictory constraints: element pinned twice");
    pinned[static_cast<std::size_t>(a)] = b;
  }
  std::vector<std::vector<int>> candidates;
  for (int gen : seq) {
    std::vector<int> cands;
    int pin = pinned[static_cast<std::size_t>(gen)];
    for (int x = 0; x < t.n; ++x) {
      if (src_orders[static_cast<std::size_t>(gen)] % tgt_orders[static_cast<std::size_t>(x)] != 0)
        continue;  // image order must divide the generator's order
      if (pin != -1 && x != pin) continue;
      cands.push_back(x);
    }
    candidates.push_back(std::move(cands));
  }
  detail::GenImageSearch search(s, t, /*injective=*/false, constraints.surjective, opt);
  search.set_generators(seq, candidates);
  search.set_pinned(constraints.pinned);
  std::optional<GroupHom> result;
  search.run([&](const std::vector<int>& img) {
    result = detail::finish_hom(s, t, img);
    return false;  // first hit suffices
  });
  return result;
}

/// Bijective homomorphism or certified absence. Order mismatch and class
/// signature mismatch short-circuit; otherwise complete backtracking.
inline std::optional<GroupHom> isomorphic(const CayleyTable& a, const CayleyTable& b,
                                          const SearchOptions& opt = {}) {
  if (a.n != b.n) return std::nullopt;
  if (a.n == 1) return detail::finish_hom(a, b, {0});
  auto ca = detail::compute_classes(a);
  auto cb = detail::compute_classes(b);
  detail::refine_signatures({{&a, &ca}, {&b, &cb}});

  // Per-element signature multisets must match for isomorphic tables.
  std::vector<int> sig_a, sig_b;
  for (int x = 0; x < a.n; ++x)
    sig_a.push_back(ca.signature[static_cast<std::size_t>(ca.class_of[static_cast<std::size_t>(x)])]);
  for (int x = 0; x < b.n; ++x)
    sig_b.push_back(cb.signature[static_cast<std::size_t>(cb.class_of[static_cast<std::size_t>(x)])]);
  {
    auto ma = sig_a, mb = sig_b;
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    if (ma != mb) return std::nullopt;
  }

  auto seq = greedy_generating_sequence(a);
  std::vector<std::vector<int>> candidates;
  for (int gen : seq) {
    int want = sig_a[static_cast<std::size_t>(gen)];
    std::vector<int> cands;
    for (int x = 0; x < b.n; ++x)
      if (sig_b[static_cast<std::size_t>(x)] == want) cands.push_back(x);
    candidates.push_back(std::move(cands));
  }
  detail::GenImageSearch search(a, b, /*injective=*/true, /*surjective=*/false, opt);
  search.set_generators(seq, candidates);
  std::optional<GroupHom> result;
  search.run([&](const std::vector<int>& img) {
    result = detail::finish_hom(a, b, img);
    return false;
  });
  return result;
}

/// Extends pinned generator images of a permutation group to a homomorphism
/// into a table, by closing over the group's elements (hashed permutations).
/// Returns the span/image statistics on success, nullopt when the relations
/// force a conflict. Complete for fully pinned generator lists.
struct PermHomExtension {
  std::size_t span_size = 0;
  std::size_t image_size = 0;
};

inline std::optional<PermHomExtension> extend_generator_images(
    const std::vector<Permutation>& src_gens, const std::vector<int>& images,
    const CayleyTable& target, std::uint64_t span_cap = 2'000'000) {
  if (src_gens.empty() || src_gens.size() != images.size())
    throw spec_error("extend_generator_images: one image per generator required");
  int degree = src_gens.front().degree();
  std::unordered_map<Permutation, int, PermHash> img;
  std::vector<Permutation> work;
  Permutation id(degree);
  img.emplace(id, 0);
  work.push_back(id);
  for (std::size_t head = 0; head < work.size(); ++head) {
    Permutation x = work[head];  // copy: work may reallocate
    int tx = img.at(x);
    for (std::size_t j = 0; j < src_gens.size(); ++j) {
      Permutation y = compose(x, src_gens[j]);
      int ty = target.at(tx, images[j]);
      auto [it, fresh] = img.emplace(y, ty);
      if (!fresh) {
        if (it->second != ty) return std::nullopt;  // relation violated
        continue;
      }
      if (img.size() > span_cap)
        throw cap_error("extend_generator_images: span exceeds cap");
      work.push_back(std::move(y));
    }
  }
  std::vector<char> hit(static_cast<std::size_t>(target.n), 0);
  PermHomExtension out;
  out.span_size = img.size();
  for (const auto& [p, v] : img)
    if (!hit[static_cast<std::size_t>(v)]) {
      hit[static_cast<std::size_t>(v)] = 1;
      ++out.image_size;
    }
  return out;
}

}  // namespace gtower

#endif  // GTOWER_AUTOMORPHISM_HPP
