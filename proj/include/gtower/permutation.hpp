#ifndef GTOWER_PERMUTATION_HPP
#define GTOWER_PERMUTATION_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gtower/common.hpp"

namespace gtower {

/// A bijection of {0..degree-1}, stored as its image table.
/// Composition follows the left-action convention: (p*q)(x) = p(q(x)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(int degree) : images_(static_cast<std::size_t>(degree)) {
    if (degree < 1) throw spec_error("permutation degree must be at least 1");
    std::iota(images_.begin(), images_.end(), 0);
  }

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    if (images_.empty()) throw spec_error("permutation degree must be at least 1");
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
      if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
        throw spec_error("image table is not a bijection");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  int degree() const { return static_cast<int>(images_.size()); }

  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }

  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[static_cast<std::size_t>(i)] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i)
      inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
    Permutation p;
    p.images_ = std::move(inv);
    return p;
  }

  /// Smallest point moved, or -1 for the identity.
  int first_moved() const {
    for (int i = 0; i < degree(); ++i)
      if (images_[static_cast<std::size_t>(i)] != i) return i;
    return -1;
  }

  std::uint64_t order() const {
    std::vector<char> seen(images_.size(), 0);
    std::uint64_t ord = 1;
    for (int i = 0; i < degree(); ++i) {
      if (seen[static_cast<std::size_t>(i)]) continue;
      std::uint64_t len = 0;
      for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  bool operator==(const Permutation& other) const { return images_ == other.images_; }
  bool operator!=(const Permutation& other) const { return images_ != other.images_; }
  bool operator<(const Permutation& other) const { return images_ < other.images_; }

 private:
  std::vector<int> images_;
};

inline void check_same_degree(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw spec_error("degree mismatch: " + std::to_string(p.degree()) + " vs " +
                     std::to_string(q.degree()));
}

/// (p*q)(x) = p(q(x)): q acts first.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  check_same_degree(p, q);
  std::vector<int> im(static_cast<std::size_t>(p.degree()));
  for (int x = 0; x < p.degree(); ++x) im[static_cast<std::size_t>(x)] = p(q(x));
  return Permutation(std::move(im));
}

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// g h g^-1, the conjugate of h by g.
inline Permutation conjugate(const Permutation& g, const Permutation& h) {
  check_same_degree(g, h);
  std::vector<int> im(static_cast<std::size_t>(g.degree()));
  for (int x = 0; x < g.degree(); ++x) im[static_cast<std::size_t>(g(x))] = g(h(x));
  return Permutation(std::move(im));
}

inline std::uint64_t hash_value(const Permutation& p) {
  return fnv1a64(p.images().data(), p.images().size() * sizeof(int));
}

struct PermHash {
  std::size_t operator()(const Permutation& p) const {
    return static_cast<std::size_t>(hash_value(p));
  }
};

/// Disjoint-cycle text form: "(0 1 2)(3 4)", identity renders as "()".
inline std::string to_cycle_string(const Permutation& p) {
  std::string out;
  std::vector<char> seen(static_cast<std::size_t>(p.degree()), 0);
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || p(i) == i) continue;
    out += '(';
    bool first = true;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = p(j)) {
      seen[static_cast<std::size_t>(j)] = 1;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

/// Parses "(0 1 2)(3 4)" (commas also accepted as separators) at a fixed
/// degree. Non-disjoint cycles multiply left to right, rightmost acting first.
inline Permutation parse_cycles(const std::string& text, int degree) {
  if (degree < 1) throw spec_error("permutation degree must be at least 1");
  Permutation result(degree);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw spec_error("expected '(' in cycle form at position " + std::to_string(pos));
    ++pos;
    std::vector<int> cycle;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      if (!isdigit(static_cast<unsigned char>(text[pos])))
        throw spec_error("expected point index in cycle form at position " + std::to_string(pos));
      int v = 0;
      while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        ++pos;
      }
      if (v >= degree)
        throw spec_error("point " + std::to_string(v) + " out of range for degree " +
                         std::to_string(degree));
      cycle.push_back(v);
      skip_ws();
    }
    if (pos >= text.size()) throw spec_error("unterminated cycle in cycle form");
    ++pos;  // ')'
    skip_ws();
    if (cycle.size() >= 2) {
      std::vector<int> im(static_cast<std::size_t>(degree));
      std::iota(im.begin(), im.end(), 0);
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        int from = cycle[t];
        if (im[static_cast<std::size_t>(from)] != from)
          throw spec_error("repeated point " + std::to_string(from) + " within a cycle");
        im[static_cast<std::size_t>(from)] = cycle[(t + 1) % cycle.size()];
      }
      result = compose(result, Permutation(std::move(im)));
    }
  }
  return result;
}

/// Convenience builder from cycle notation, e.g. perm(5, {{0,1},{2,3,4}}).
inline Permutation perm(int degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> im(static_cast<std::size_t>(degree));
  std::iota(im.begin(), im.end(), 0);
  for (const auto& cycle : cycles) {
    for (std::size_t t = 0; t < cycle.size(); ++t)
      im[static_cast<std::size_t>(cycle[t])] = cycle[(t + 1) % cycle.size()];
  }
  return Permutation(std::move(im));
}

}  // namespace gtower

#endif  // GTOWER_PERMUTATION_HPP
