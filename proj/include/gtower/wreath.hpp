#ifndef GTOWER_WREATH_HPP
#define GTOWER_WREATH_HPP

#include <vector>

#include "gtower/common.hpp"
#include "gtower/constructions.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"

namespace gtower {

/// The iterated wreath chain W_0 <= W_1 <= ... <= W_n with W_0 = C_2 and
/// W_{b+1} = [W_b (+) W_b^*] x| <sigma_{b+1}>, isomorphic to W_b wr C_2.
/// Everything acts on 2^(n+1) points: W_b occupies the prefix [0, 2^(b+1)),
/// its starred copy the next block [2^(b+1), 2^(b+2)), and sigma_{b+1} swaps
/// the two blocks. Since the groups share one domain, the chain inclusions
/// are literal subgroup inclusions.
struct WreathTower {
  int n = 0;
  int degree = 0;                  // 2^(n+1)
  std::vector<PermGroup> groups;   // W_0 .. W_n
  std::vector<Permutation> sigma;  // sigma[b] = sigma_{b+1}, b = 0..n-1
  std::vector<PermGroup> starred;  // starred[b] = W_b^*, b = 0..n-1

  const PermGroup& top() const { return groups.back(); }
  const PermGroup& bottom() const { return groups.front(); }
};

/// |W_b| follows the recursion |W_0| = 2, |W_{b+1}| = 2|W_b|^2, i.e.
/// 2^(2^(b+1)-1).
inline std::uint64_t wreath_order(int b) {
  return 1ULL << ((1ULL << (b + 1)) - 1);
}

inline WreathTower wreath_tower(int n) {
  if (n < 1 || n > 4) throw spec_error("wreath_tower supports 1 <= n <= 4");
  WreathTower tower;
  tower.n = n;
  tower.degree = 1 << (n + 1);
  int degree = tower.degree;

  std::vector<Permutation> gens{perm(degree, {{0, 1}})};
  tower.groups.push_back(make_group(gens, degree));
  for (int b = 0; b < n; ++b) {
    int block = 1 << (b + 1);
    std::vector<std::vector<int>> swaps;
    for (int i = 0; i < block; ++i) swaps.push_back({i, i + block});
    Permutation sig = perm(degree, swaps);
    // W_b^* is the conjugate of W_b by sigma_{b+1}, i.e. the same action
    // transported onto the second block.
    std::vector<Permutation> star_gens;
    for (const auto& g : gens) star_gens.push_back(conjugate(sig, g));

    tower.starred.push_back(make_group_with_order(star_gens, degree, tower.groups.back().order()));
    tower.sigma.push_back(sig);

    gens.insert(gens.end(), star_gens.begin(), star_gens.end());
    gens.push_back(sig);
    auto next = make_group(gens, degree);
    if (next.order() != wreath_order(b + 1))
      throw internal_error("wreath level order mismatch at level " + std::to_string(b + 1));
    tower.groups.push_back(std::move(next));
  }
  return tower;
}

}  // namespace gtower

#endif  // GTOWER_WREATH_HPP
