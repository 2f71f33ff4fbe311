#ifndef GTOWER_FINITE_FIELD_HPP
#define GTOWER_FINITE_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gtower/common.hpp"

namespace gtower {

/// GF(p^k) with elements indexed 0..p^k-1 via base-p digit encoding of the
/// polynomial coefficients (low degree first). The modulus is the
/// lexicographically least monic irreducible polynomial of degree k,
/// coefficients compared low-degree-first, so element encodings are
/// implementation-independent.
class FiniteField {
 public:
  FiniteField(int p, int k) : p_(p), k_(k) {
    if (p < 2 || !is_prime(p)) throw spec_error("gf: p must be prime");
    if (k < 1) throw spec_error("gf: extension degree must be >= 1");
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
      q *= static_cast<std::uint64_t>(p);
      if (q > 65536) throw cap_error("gf: field size cap (65536) exceeded");
    }
    q_ = static_cast<int>(q);
    modulus_ = least_irreducible();
  }

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }

  /// Monic modulus as a coefficient list, low degree first, length k+1.
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const {
    check(a);
    check(b);
    int out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return out;
  }

  int neg(int a) const {
    check(a);
    int out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      out += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return out;
  }

  int mul(int a, int b) const {
    check(a);
    check(b);
    std::vector<int> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
    for (int i = 0; i < k_; ++i) {
      long long ai = digit(a, i);
      if (ai == 0) continue;
      for (int j = 0; j < k_; ++j)
        prod[static_cast<std::size_t>(i + j)] = static_cast<int>(
            (prod[static_cast<std::size_t>(i + j)] + ai * digit(b, j)) % p_);
    }
    reduce(prod);
    return encode(prod);
  }

  int pow(int a, std::uint64_t e) const {
    int result = one();
    int base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  int inv(int a) const {
    check(a);
    if (a == 0) throw spec_error("gf: zero has no inverse");
    return pow(a, static_cast<std::uint64_t>(q_) - 2);
  }

  int zero() const { return 0; }
  int one() const { return 1; }

  int frobenius(int a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

  int frobenius_power(int a, int e) const {
    for (int i = 0; i < e; ++i) a = frobenius(a);
    return a;
  }

  /// Smallest generator of the multiplicative group.
  int primitive_element() const {
    for (int a = 1; a < q_; ++a) {
      int x = a;
      int ord = 1;
      while (x != one()) {
        x = mul(x, a);
        ++ord;
      }
      if (ord == q_ - 1) return a;
    }
    throw internal_error("no primitive element found");
  }

 private:
  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  void check(int a) const {
    if (a < 0 || a >= q_) throw spec_error("gf: element index out of range");
  }

  int digit(int a, int i) const {
    for (int t = 0; t < i; ++t) a /= p_;
    return a % p_;
  }

  int encode(const std::vector<int>& coeffs) const {
    int out = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
      out += (i < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(i)] : 0) * scale;
      scale *= p_;
    }
    return out;
  }

  // In-place reduction modulo the monic modulus.
  void reduce(std::vector<int>& poly) const {
    for (int d = static_cast<int>(poly.size()) - 1; d >= k_; --d) {
      int c = poly[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      poly[static_cast<std::size_t>(d)] = 0;
      for (int i = 0; i < k_; ++i) {
        auto idx = static_cast<std::size_t>(d - k_ + i);
        poly[idx] = static_cast<int>(
            ((poly[idx] - static_cast<long long>(c) * modulus_[static_cast<std::size_t>(i)]) % p_ +
             p_) %
            p_);
      }
    }
    poly.resize(static_cast<std::size_t>(k_), 0);
  }

  // Polynomial helpers over GF(p) used only during modulus selection.
  static std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    auto deg = [](const std::vector<int>& v) {
      for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[static_cast<std::size_t>(i)]) return i;
      return -1;
    };
    int db = deg(b);
    int inv_lead = 1;
    for (int t = 1; t < p; ++t)
      if (t * b[static_cast<std::size_t>(db)] % p == 1) inv_lead = t;
    for (int da = deg(a); da >= db; da = deg(a)) {
      int c = a[static_cast<std::size_t>(da)] * inv_lead % p;
      for (int i = 0; i <= db; ++i) {
        auto idx = static_cast<std::size_t>(da - db + i);
        a[idx] = ((a[idx] - c * b[static_cast<std::size_t>(i)]) % p + p) % p;
      }
    }
    return a;
  }

  static bool poly_is_zero(const std::vector<int>& v) {
    for (int c : v)
      if (c) return false;
    return true;
  }

  // Trial division over all lower-degree monic polynomials.
  bool irreducible(const std::vector<int>& m) const {
    if (k_ == 1) return true;
    for (int d = 1; 2 * d <= k_; ++d) {
      std::uint64_t count = 1;
      for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p_);
      for (std::uint64_t c = 0; c < count; ++c) {
        std::vector<int> div(static_cast<std::size_t>(d + 1), 0);
        std::uint64_t t = c;
        for (int i = 0; i < d; ++i) {
          div[static_cast<std::size_t>(i)] = static_cast<int>(t % static_cast<std::uint64_t>(p_));
          t /= static_cast<std::uint64_t>(p_);
        }
        div[static_cast<std::size_t>(d)] = 1;
        if (poly_is_zero(poly_mod(m, div, p_))) return false;
      }
    }
    return true;
  }

  std::vector<int> least_irreducible() const {
    for (int c = 0; c < q_; ++c) {
      std::vector<int> m(static_cast<std::size_t>(k_ + 1), 0);
      int t = c;
      for (int i = 0; i < k_; ++i) {
        m[static_cast<std::size_t>(i)] = t % p_;
        t /= p_;
      }
      m[static_cast<std::size_t>(k_)] = 1;
      if (irreducible(m)) return m;
    }
    throw internal_error("no irreducible modulus found");
  }

  int p_, k_, q_;
  std::vector<int> modulus_;
};

}  // namespace gtower

#endif  // GTOWER_FINITE_FIELD_HPP
