#ifndef GTOWER_PROJECTIVE_HPP
#define GTOWER_PROJECTIVE_HPP

#include <numeric>
#include <vector>

#include "gtower/common.hpp"
#include "gtower/constructions.hpp"
#include "gtower/finite_field.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"

namespace gtower {

/// Projective line over GF(q): point 0 is infinity = (1:0), point 1+e is the
/// affine point (e:1) for field element e. Degree q+1.
inline int projective_degree(const FiniteField& f) { return f.q() + 1; }

/// The permutation of the line induced by a coordinatewise field map.
template <typename FieldMap>
Permutation line_map(const FiniteField& f, FieldMap&& fm) {
  std::vector<int> im(static_cast<std::size_t>(f.q() + 1));
  im[0] = 0;
  for (int e = 0; e < f.q(); ++e) im[static_cast<std::size_t>(1 + e)] = 1 + fm(e);
  return Permutation(std::move(im));
}

/// PGL(2,q) acting faithfully on the q+1 projective points, generated by
/// x -> x+1, x -> g*x (g primitive), and x -> 1/x. Requires q > 3, matching
/// the hypothesis of the tower correspondence this group feeds.
inline PermGroup pgl2(const FiniteField& f) {
  if (f.q() <= 3) throw spec_error("pgl2 requires |K| > 3");
  int q = f.q();
  Permutation translate = line_map(f, [&](int e) { return f.add(e, f.one()); });
  int g = f.primitive_element();
  Permutation scale = line_map(f, [&](int e) { return f.mul(g, e); });
  std::vector<int> inv_im(static_cast<std::size_t>(q + 1));
  inv_im[0] = 1;      // infinity <-> 0
  inv_im[1] = 0;
  for (int e = 1; e < q; ++e) inv_im[static_cast<std::size_t>(1 + e)] = 1 + f.inv(e);
  Permutation invert{std::move(inv_im)};
  auto group = make_group({translate, scale, invert}, q + 1);
  std::uint64_t expect = static_cast<std::uint64_t>(q) * (q - 1) * (q + 1);
  if (group.order() != expect)
    throw internal_error("pgl2 order " + std::to_string(group.order()) + ", expected " +
                         std::to_string(expect));
  return group;
}

/// Frobenius^e as a permutation of the projective line.
inline Permutation frobenius_on_line(const FiniteField& f, int e) {
  return line_map(f, [&](int x) { return f.frobenius_power(x, e); });
}

/// Gal(GF(p^k)/GF(p)) = <Frobenius>, acting on the q field elements.
inline PermGroup galois_group(const FiniteField& f) {
  if (f.q() < 2) throw spec_error("galois group needs q >= 2");
  std::vector<int> im(static_cast<std::size_t>(f.q()));
  for (int e = 0; e < f.q(); ++e) im[static_cast<std::size_t>(e)] = f.frobenius(e);
  auto g = make_group({Permutation(std::move(im))}, f.q());
  if (g.order() != static_cast<std::uint64_t>(f.k()))
    throw internal_error("galois group order is not the extension degree");
  return g;
}

/// The unique subgroup of the cyclic Galois group with order h | k,
/// generated by Frobenius^(k/h).
inline PermGroup galois_subgroup(const FiniteField& f, int h) {
  if (h < 1 || f.k() % h != 0)
    throw spec_error("galois subgroup order must divide the extension degree");
  if (h == 1) return trivial_group(f.q());
  int e = f.k() / h;
  std::vector<int> im(static_cast<std::size_t>(f.q()));
  for (int x = 0; x < f.q(); ++x) im[static_cast<std::size_t>(x)] = f.frobenius_power(x, e);
  auto g = make_group({Permutation(std::move(im))}, f.q());
  if (g.order() != static_cast<std::uint64_t>(h))
    throw internal_error("galois subgroup has wrong order");
  return g;
}

/// PGL(2,q) extended by the order-h subgroup of the Galois group, acting on
/// the projective line. h = k gives the full PGammaL(2,q).
inline PermGroup pgammal2(const FiniteField& f, int h) {
  if (h < 1 || f.k() % h != 0)
    throw spec_error("pgammal2: subgroup order must divide the extension degree");
  auto n = pgl2(f);
  if (h == 1) return n;
  return semidirect(n, cyclic(h), {frobenius_on_line(f, f.k() / h)});
}

}  // namespace gtower

#endif  // GTOWER_PROJECTIVE_HPP
