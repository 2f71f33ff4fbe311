#ifndef GTOWER_CAYLEY_TABLE_HPP
#define GTOWER_CAYLEY_TABLE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtower/common.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"

namespace gtower {

inline constexpr std::uint64_t kDefaultTableCap = 20'000;

/// Element-indexed multiplication table of a finite group. Identity is always
/// index 0. Labels record element provenance (cycle form for permutation
/// sources). Validated at construction: Latin square, identity and inverse
/// laws, and associativity (exhaustive for n <= 200, sampled above).
struct CayleyTable {
  int n = 1;
  std::vector<std::int32_t> mul;  // row-major n*n
  std::vector<std::int32_t> inv;
  std::vector<std::string> labels;

  int at(int x, int y) const {
    return mul[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(y)];
  }

  int conj(int g, int x) const { return at(at(g, x), inv[static_cast<std::size_t>(g)]); }

  std::uint64_t digest() const {
    return fnv1a64(mul.data(), mul.size() * sizeof(std::int32_t));
  }
  std::string digest_hex() const { return hex64(digest()); }
};

namespace detail {

inline void validate_table(const CayleyTable& t) {
  auto n = static_cast<std::size_t>(t.n);
  if (t.n < 1 || t.mul.size() != n * n || t.inv.size() != n ||
      (!t.labels.empty() && t.labels.size() != n))
    throw spec_error("malformed multiplication table");
  std::vector<char> seen(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t c = 0; c < n; ++c) {
      int v = t.mul[r * n + c];
      if (v < 0 || v >= t.n || seen[static_cast<std::size_t>(v)])
        throw spec_error("table row " + std::to_string(r) + " is not a bijection");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      int v = t.mul[r * n + c];
      if (seen[static_cast<std::size_t>(v)])
        throw spec_error("table column " + std::to_string(c) + " is not a bijection");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (int x = 0; x < t.n; ++x) {
    if (t.at(0, x) != x || t.at(x, 0) != x)
      throw spec_error("identity row/column must be the index map");
    int ix = t.inv[static_cast<std::size_t>(x)];
    if (ix < 0 || ix >= t.n || t.at(x, ix) != 0)
      throw spec_error("inverse table inconsistent at " + std::to_string(x));
  }
  if (t.n <= 200) {
    for (int a = 0; a < t.n; ++a)
      for (int b = 0; b < t.n; ++b)
        for (int c = 0; c < t.n; ++c)
          if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c)))
            throw spec_error("associativity fails at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")");
  } else {
    std::mt19937 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, t.n - 1);
    for (int i = 0; i < 100'000; ++i) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c)))
        throw spec_error("associativity sample fails at (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ")");
    }
  }
}

struct IntVecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    return static_cast<std::size_t>(fnv1a64(v.data(), v.size() * sizeof(int)));
  }
};

}  // namespace detail

inline CayleyTable make_table(int n, std::vector<std::int32_t> mul,
                              std::vector<std::string> labels = {}) {
  CayleyTable t;
  t.n = n;
  t.mul = std::move(mul);
  t.inv.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (t.at(x, y) == 0) t.inv[static_cast<std::size_t>(x)] = y;
  t.labels = std::move(labels);
  if (t.labels.empty())
    for (int i = 0; i < n; ++i) t.labels.push_back("e" + std::to_string(i));
  detail::validate_table(t);
  return t;
}

/// Converts a permutation group to its Cayley table. Elements are enumerated
/// in the group's deterministic order (identity first); labels are the
/// disjoint-cycle forms. Products are resolved through base-image keys, so
/// the cost stays near n^2 * (base length) even at large degree.
inline CayleyTable to_table(const PermGroup& g, std::uint64_t cap = kDefaultTableCap) {
  if (g.order() > cap)
    throw cap_error("to_table: order " + std::to_string(g.order()) + " exceeds cap " +
                    std::to_string(cap));
  auto elems = g.elements(/*allow_large=*/true);
  auto n = static_cast<int>(elems.size());

  std::unordered_map<std::vector<int>, int, detail::IntVecHash> index;
  index.reserve(elems.size() * 2);
  for (int i = 0; i < n; ++i) index.emplace(g.base_images(elems[static_cast<std::size_t>(i)]), i);
  if (static_cast<int>(index.size()) != n)
    throw internal_error("base images do not separate elements");

  CayleyTable t;
  t.n = n;
  t.mul.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  const auto& base = g.base();
  std::vector<int> key(base.size());
  for (int i = 0; i < n; ++i) {
    const auto& pi = elems[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const auto& pj = elems[static_cast<std::size_t>(j)];
      for (std::size_t b = 0; b < base.size(); ++b) key[b] = pi(pj(base[b]));
      auto it = index.find(key);
      if (it == index.end()) throw internal_error("product escaped the enumeration");
      t.mul[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(j)] = it->second;
    }
  }
  t.inv.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto inv_imgs = elems[static_cast<std::size_t>(i)].inverse();
    auto it = index.find(g.base_images(inv_imgs));
    if (it == index.end()) throw internal_error("inverse escaped the enumeration");
    t.inv[static_cast<std::size_t>(i)] = it->second;
  }
  t.labels.reserve(static_cast<std::size_t>(n));
  for (const auto& e : elems) t.labels.push_back(to_cycle_string(e));
  detail::validate_table(t);
  return t;
}

/// Deterministic element list matching to_table's indexing.
inline std::vector<Permutation> table_elements(const PermGroup& g,
                                               std::uint64_t cap = kDefaultTableCap) {
  if (g.order() > cap) throw cap_error("element list exceeds cap");
  return g.elements(/*allow_large=*/true);
}

inline std::vector<int> element_orders(const CayleyTable& t) {
  std::vector<int> orders(static_cast<std::size_t>(t.n));
  for (int x = 0; x < t.n; ++x) {
    int ord = 1, y = x;
    while (y != 0) {
      y = t.at(y, x);
      ++ord;
    }
    orders[static_cast<std::size_t>(x)] = ord;
  }
  return orders;
}

/// Indices of the elements commuting with everything.
inline std::vector<int> table_center(const CayleyTable& t) {
  std::vector<int> out;
  for (int x = 0; x < t.n; ++x) {
    bool central = true;
    for (int y = 0; y < t.n && central; ++y)
      if (t.at(x, y) != t.at(y, x)) central = false;
    if (central) out.push_back(x);
  }
  return out;
}

inline bool is_centreless(const CayleyTable& t) { return table_center(t).size() == 1; }

/// Closure of a generating set inside the table, as a sorted index list.
inline std::vector<int> table_closure(const CayleyTable& t, const std::vector<int>& gens) {
  std::vector<char> in(static_cast<std::size_t>(t.n), 0);
  std::vector<int> members{0};
  in[0] = 1;
  for (std::size_t head = 0; head < members.size(); ++head)
    for (int s : gens) {
      int y = t.at(members[head], s);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

/// Greedy generating sequence: repeatedly append the element of largest order
/// outside the current span, ties broken by smallest index.
inline std::vector<int> greedy_generating_sequence(const CayleyTable& t) {
  auto orders = element_orders(t);
  std::vector<int> gens;
  std::vector<char> in_span(static_cast<std::size_t>(t.n), 0);
  in_span[0] = 1;
  std::size_t span_count = 1;
  while (span_count < static_cast<std::size_t>(t.n)) {
    int best = -1;
    for (int x = 0; x < t.n; ++x)
      if (!in_span[static_cast<std::size_t>(x)] &&
          (best < 0 || orders[static_cast<std::size_t>(x)] > orders[static_cast<std::size_t>(best)]))
        best = x;
    gens.push_back(best);
    auto span = table_closure(t, gens);
    std::fill(in_span.begin(), in_span.end(), 0);
    for (int m : span) in_span[static_cast<std::size_t>(m)] = 1;
    span_count = span.size();
  }
  return gens;
}

/// i_g as a permutation of element indices: x -> g x g^-1.
inline Permutation inner_permutation(const CayleyTable& t, int g) {
  std::vector<int> im(static_cast<std::size_t>(t.n));
  for (int x = 0; x < t.n; ++x) im[static_cast<std::size_t>(x)] = t.conj(g, x);
  return Permutation(std::move(im));
}

/// Left-regular representation on the element indices.
inline PermGroup regular_rep(const CayleyTable& t) {
  if (t.n == 1) return trivial_group(1);
  std::vector<Permutation> gens;
  for (int g : greedy_generating_sequence(t)) {
    std::vector<int> im(static_cast<std::size_t>(t.n));
    for (int x = 0; x < t.n; ++x) im[static_cast<std::size_t>(x)] = t.at(g, x);
    gens.emplace_back(std::move(im));
  }
  return make_group_with_order(std::move(gens), t.n, static_cast<std::uint64_t>(t.n));
}

/// Direct product of tables, indices paired as a*|B|+b.
inline CayleyTable table_product(const CayleyTable& a, const CayleyTable& b) {
  std::uint64_t order = checked_mul(static_cast<std::uint64_t>(a.n), static_cast<std::uint64_t>(b.n));
  if (order > 100'000) throw cap_error("table_product: result too large");
  int n = static_cast<int>(order);
  CayleyTable t;
  t.n = n;
  t.mul.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    int xa = x / b.n, xb = x % b.n;
    for (int y = 0; y < n; ++y) {
      int ya = y / b.n, yb = y % b.n;
      t.mul[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(y)] = a.at(xa, ya) * b.n + b.at(xb, yb);
    }
  }
  t.inv.resize(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    t.inv[static_cast<std::size_t>(x)] =
        a.inv[static_cast<std::size_t>(x / b.n)] * b.n + b.inv[static_cast<std::size_t>(x % b.n)];
  for (int x = 0; x < n; ++x)
    t.labels.push_back("(" + a.labels[static_cast<std::size_t>(x / b.n)] + "," +
                       b.labels[static_cast<std::size_t>(x % b.n)] + ")");
  detail::validate_table(t);
  return t;
}

/// The quaternion group of order 8: indices 0..7 = 1, -1, i, -i, j, -j, k, -k.
inline CayleyTable quaternion_table() {
  // unit_mul[u][v] = (sign, unit) for products of 1, i, j, k.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{+1, +1, +1, +1},
                                 {+1, -1, +1, -1},
                                 {+1, -1, -1, +1},
                                 {+1, +1, -1, -1}};
  auto encode = [](int s, int u) { return 2 * u + (s < 0 ? 1 : 0); };
  std::vector<std::int32_t> mul(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int ux = x / 2, sx = x % 2 ? -1 : 1;
      int uy = y / 2, sy = y % 2 ? -1 : 1;
      int s = sx * sy * sign[ux][uy];
      mul[static_cast<std::size_t>(x * 8 + y)] = encode(s, unit[ux][uy]);
    }
  return make_table(8, std::move(mul),
                    {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

}  // namespace gtower

#endif  // GTOWER_CAYLEY_TABLE_HPP
