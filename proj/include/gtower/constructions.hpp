#ifndef GTOWER_CONSTRUCTIONS_HPP
#define GTOWER_CONSTRUCTIONS_HPP

#include <numeric>
#include <string>
#include <vector>

#include "gtower/common.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"

namespace gtower {

/// Cyclic group of order n on n points. cyclic(1) is the trivial group.
inline PermGroup cyclic(int n) {
  if (n < 1) throw spec_error("cyclic requires n >= 1");
  if (n == 1) return trivial_group(1);
  std::vector<int> cycle(static_cast<std::size_t>(n));
  std::iota(cycle.begin(), cycle.end(), 0);
  return make_group({perm(n, {cycle})}, n);
}

/// Dihedral group of order 2n acting on the regular n-gon.
inline PermGroup dihedral(int n) {
  if (n < 3) throw spec_error("dihedral requires n >= 3");
  std::vector<int> rot(static_cast<std::size_t>(n));
  std::iota(rot.begin(), rot.end(), 0);
  std::vector<int> refl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) refl[static_cast<std::size_t>(i)] = (n - i) % n;
  auto g = make_group({perm(n, {rot}), Permutation(std::move(refl))}, n);
  if (g.order() != 2ull * static_cast<unsigned>(n))
    throw internal_error("dihedral construction has wrong order");
  return g;
}

inline PermGroup sym(int n) {
  if (n < 1) throw spec_error("sym requires n >= 1");
  if (n == 1) return trivial_group(1);
  std::vector<int> cycle(static_cast<std::size_t>(n));
  std::iota(cycle.begin(), cycle.end(), 0);
  std::vector<Permutation> gens{perm(n, {cycle})};
  if (n > 2) gens.push_back(perm(n, {{0, 1}}));
  return make_group(std::move(gens), n);
}

inline PermGroup alt(int n) {
  if (n < 3) throw spec_error("alt requires n >= 3");
  std::vector<Permutation> gens;
  for (int i = 0; i + 2 < n; ++i) gens.push_back(perm(n, {{i, i + 1, i + 2}}));
  return make_group(std::move(gens), n);
}

inline PermGroup klein_four() {
  return make_group({perm(4, {{0, 1}, {2, 3}}), perm(4, {{0, 2}, {1, 3}})}, 4);
}

/// Re-embeds p at an offset inside a larger domain.
inline Permutation shift_embed(const Permutation& p, int offset, int degree) {
  std::vector<int> im(static_cast<std::size_t>(degree));
  std::iota(im.begin(), im.end(), 0);
  for (int x = 0; x < p.degree(); ++x)
    im[static_cast<std::size_t>(x + offset)] = p(x) + offset;
  return Permutation(std::move(im));
}

struct DirectProductParts {
  PermGroup group;
  PermGroup left;   // canonical embedded copy of the first factor
  PermGroup right;  // canonical embedded copy of the second factor
};

/// A x B on the disjoint union of the two domains.
inline DirectProductParts direct_product_parts(const PermGroup& a, const PermGroup& b) {
  int degree = a.degree() + b.degree();
  std::vector<Permutation> left_gens, right_gens, all;
  for (const auto& g : a.generators()) left_gens.push_back(shift_embed(g, 0, degree));
  for (const auto& g : b.generators()) right_gens.push_back(shift_embed(g, a.degree(), degree));
  all = left_gens;
  all.insert(all.end(), right_gens.begin(), right_gens.end());
  std::uint64_t order = checked_mul(a.order(), b.order());
  DirectProductParts parts{make_group_with_order(std::move(all), degree, order),
                           make_group_with_order(std::move(left_gens), degree, a.order()),
                           make_group_with_order(std::move(right_gens), degree, b.order())};
  return parts;
}

inline PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  return direct_product_parts(a, b).group;
}

/// Internal semidirect product N x| H on N's domain. The action supplies, per
/// generator of H, a permutation of N's domain; each must normalize N, and the
/// join must have order |N|*|H| (checked), which forces H's copy to meet N
/// trivially.
inline PermGroup semidirect(const PermGroup& n, const PermGroup& h,
                            const std::vector<Permutation>& action) {
  if (action.size() != h.generators().size())
    throw spec_error("semidirect: one action permutation per H generator required");
  for (const auto& a : action) {
    if (a.degree() != n.degree()) throw spec_error("semidirect: action degree mismatch");
    for (const auto& g : n.generators())
      if (!n.contains(conjugate(a, g)))
        throw spec_error("semidirect: action fails to normalize N");
  }
  std::vector<Permutation> gens = n.generators();
  gens.insert(gens.end(), action.begin(), action.end());
  auto result = make_group(std::move(gens), n.degree());
  if (result.order() != checked_mul(n.order(), h.order()))
    throw spec_error("semidirect: order mismatch, expected |N|*|H| = " +
                     std::to_string(checked_mul(n.order(), h.order())) + " but got " +
                     std::to_string(result.order()));
  return result;
}

}  // namespace gtower

#endif  // GTOWER_CONSTRUCTIONS_HPP
