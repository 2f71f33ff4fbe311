#ifndef GTOWER_TABLE_SEARCH_HPP
#define GTOWER_TABLE_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtower/cayley_table.hpp"
#include "gtower/common.hpp"
#include "gtower/perm_group.hpp"
#include "gtower/permutation.hpp"

namespace gtower {

struct SearchOptions {
  std::uint64_t node_budget = 100'000'000;
  std::uint64_t max_results = UINT64_MAX;
  std::uint32_t seed = 12345;  // self-check sampling only
};

/// Conjugacy classes with an isomorphism-invariant signature per class.
/// Signatures are comparable across every table refined in the same call to
/// refine_signatures (ids come from one shared dictionary).
struct ClassData {
  std::vector<int> class_of;
  std::vector<int> class_size;  // per class
  std::vector<int> class_rep;
  std::vector<int> signature;  // per class
};

namespace detail {

inline ClassData compute_classes(const CayleyTable& t) {
  ClassData cd;
  cd.class_of.assign(static_cast<std::size_t>(t.n), -1);
  auto gens = greedy_generating_sequence(t);
  for (int x = 0; x < t.n; ++x) {
    if (cd.class_of[static_cast<std::size_t>(x)] >= 0) continue;
    int id = static_cast<int>(cd.class_rep.size());
    cd.class_rep.push_back(x);
    std::vector<int> members{x};
    cd.class_of[static_cast<std::size_t>(x)] = id;
    for (std::size_t head = 0; head < members.size(); ++head)
      for (int g : gens) {
        int y = t.conj(g, members[head]);
        if (cd.class_of[static_cast<std::size_t>(y)] < 0) {
          cd.class_of[static_cast<std::size_t>(y)] = id;
          members.push_back(y);
        }
      }
    cd.class_size.push_back(static_cast<int>(members.size()));
  }
  return cd;
}

inline std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline int table_pow(const CayleyTable& t, int x, int e) {
  int r = 0;
  for (int i = 0; i < e; ++i) r = t.at(r, x);
  return r;
}

/// Joint refinement: iterate class invariants (element order, class size,
/// signatures of prime-power classes) to a fixpoint, assigning ids from one
/// dictionary shared by all participating tables.
inline void refine_signatures(std::vector<std::pair<const CayleyTable*, ClassData*>> tables) {
  std::vector<std::vector<int>> orders;
  for (auto& [t, cd] : tables) orders.push_back(element_orders(*t));

  // Round 0: (order, class size).
  {
    std::map<std::pair<int, int>, int> dict;
    for (std::size_t ti = 0; ti < tables.size(); ++ti) {
      auto& cd = *tables[ti].second;
      for (std::size_t c = 0; c < cd.class_rep.size(); ++c)
        dict[{orders[ti][static_cast<std::size_t>(cd.class_rep[c])], cd.class_size[c]}] = 0;
    }
    int next = 0;
    for (auto& [k, v] : dict) v = next++;
    for (std::size_t ti = 0; ti < tables.size(); ++ti) {
      auto& cd = *tables[ti].second;
      cd.signature.assign(cd.class_rep.size(), 0);
      for (std::size_t c = 0; c < cd.class_rep.size(); ++c)
        cd.signature[c] =
            dict[{orders[ti][static_cast<std::size_t>(cd.class_rep[c])], cd.class_size[c]}];
    }
  }

  auto distinct_count = [](const std::vector<int>& sig) {
    std::vector<int> d = sig;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d.size();
  };

  for (int round = 0; round < 12; ++round) {
    std::map<std::vector<int>, int> dict;
    std::vector<std::vector<std::vector<int>>> keys(tables.size());
    std::size_t before = 0;
    for (std::size_t ti = 0; ti < tables.size(); ++ti) {
      const auto& t = *tables[ti].first;
      auto& cd = *tables[ti].second;
      before += distinct_count(cd.signature);
      keys[ti].resize(cd.class_rep.size());
      for (std::size_t c = 0; c < cd.class_rep.size(); ++c) {
        int rep = cd.class_rep[c];
        std::vector<int> key{cd.signature[c]};
        for (int p : prime_divisors(orders[ti][static_cast<std::size_t>(rep)])) {
          int power_class = cd.class_of[static_cast<std::size_t>(table_pow(t, rep, p))];
          key.push_back(cd.signature[static_cast<std::size_t>(power_class)]);
        }
        keys[ti][c] = key;
        dict[std::move(key)] = 0;
      }
    }
    int next = 0;
    for (auto& [k, v] : dict) v = next++;
    std::size_t after = 0;
    for (std::size_t ti = 0; ti < tables.size(); ++ti) {
      auto& cd = *tables[ti].second;
      std::vector<int> fresh(cd.class_rep.size());
      for (std::size_t c = 0; c < cd.class_rep.size(); ++c) fresh[c] = dict[keys[ti][c]];
      after += distinct_count(fresh);
      cd.signature = std::move(fresh);
    }
    if (after == before) break;
  }
}

inline ClassData analyzed_classes(const CayleyTable& t) {
  ClassData cd = compute_classes(t);
  refine_signatures({{&t, &cd}});
  return cd;
}

/// Backtracking over images of a generating sequence, with incremental
/// closure of the partial map. Assigning generator g_L forces the images of
/// everything in <g_0..g_L> by right-multiplication closure; a conflict
/// anywhere prunes the branch. Sound and complete over the candidate lists.
class GenImageSearch {
 public:
  GenImageSearch(const CayleyTable& src, const CayleyTable& tgt, bool injective,
                 bool surjective_required, SearchOptions opt)
      : src_(src), tgt_(tgt), injective_(injective), surjective_(surjective_required), opt_(opt) {
    img_.assign(static_cast<std::size_t>(src_.n), -1);
    pre_.assign(static_cast<std::size_t>(tgt_.n), -1);
    hit_.assign(static_cast<std::size_t>(tgt_.n), 0);
    pinned_.assign(static_cast<std::size_t>(src_.n), -1);
  }

  void set_generators(std::vector<int> seq, std::vector<std::vector<int>> candidates) {
    seq_ = std::move(seq);
    candidates_ = std::move(candidates);
  }

  void set_pinned(const std::vector<std::pair<int, int>>& pins) {
    for (auto [s, t] : pins) {
      if (s < 0 || s >= src_.n || t < 0 || t >= tgt_.n)
        throw spec_error("pinned image out of range");
      if (pinned_[static_cast<std::size_t>(s)] != -1 &&
          pinned_[static_cast<std::size_t>(s)] != t)
        throw spec_error("contradictory constraints: element " + std::to_string(s) +
                         " pinned twice");
      pinned_[static_cast<std::size_t>(s)] = t;
    }
    if (pinned_[0] != -1 && pinned_[0] != 0)
      throw spec_error("contradictory constraints: identity must map to identity");
  }

  std::uint64_t nodes() const { return nodes_; }

  /// Sink receives each complete image map; return false to stop the search.
  template <typename Sink>
  void run(Sink&& sink) {
    known_.clear();
    distinct_ = 0;
    if (!assign(0, 0)) throw internal_error("identity assignment failed");
    results_ = 0;
    dfs(0, sink);
    // Leave state clean for a potential rerun.
    rollback(0, 0);
    known_.clear();
    img_[0] = -1;
    pre_[0] = -1;
    hit_[0] = 0;
    distinct_ = 0;
    log_.clear();
  }

 private:
  template <typename Sink>
  bool dfs(std::size_t level, Sink&& sink) {
    if (level == seq_.size()) {
      if (static_cast<int>(known_.size()) != src_.n)
        throw internal_error("generating sequence does not span the table");
      if (surjective_ && distinct_ != tgt_.n) return true;
      ++results_;
      if (!sink(img_)) return false;
      return results_ < opt_.max_results;
    }
    int gen = seq_[level];
    for (int c : candidates_[level]) {
      if (++nodes_ > opt_.node_budget)
        throw cap_error("generator-image search exceeded node budget of " +
                        std::to_string(opt_.node_budget));
      std::size_t known_mark = known_.size();
      std::size_t log_mark = log_.size();
      if (extend(level, gen, c)) {
        if (!dfs(level + 1, sink)) {
          rollback(log_mark, known_mark);
          return false;
        }
      }
      rollback(log_mark, known_mark);
    }
    return true;
  }

  bool assign(int x, int tx) {
    int cur = img_[static_cast<std::size_t>(x)];
    if (cur != -1) return cur == tx;
    if (pinned_[static_cast<std::size_t>(x)] != -1 && pinned_[static_cast<std::size_t>(x)] != tx)
      return false;
    if (injective_) {
      if (pre_[static_cast<std::size_t>(tx)] != -1) return false;
      pre_[static_cast<std::size_t>(tx)] = x;
    }
    img_[static_cast<std::size_t>(x)] = tx;
    if (hit_[static_cast<std::size_t>(tx)]++ == 0) ++distinct_;
    known_.push_back(x);
    log_.push_back(x);
    return true;
  }

  // Close the partial map under products with generators 0..level.
  bool extend(std::size_t level, int gen, int c) {
    if (!assign(gen, c)) return false;
    // New pairs: (old knowns, new gen) plus (new knowns, all gens <= level).
    std::size_t first_new = known_.size() - 1;
    for (std::size_t idx = 0; idx < first_new; ++idx)
      if (!close_pair(known_[idx], level, level)) return false;
    for (std::size_t idx = first_new; idx < known_.size(); ++idx)
      if (!close_pair(known_[idx], 0, level)) return false;
    return true;
  }

  bool close_pair(int x, std::size_t j_from, std::size_t j_to) {
    for (std::size_t j = j_from; j <= j_to; ++j) {
      int g = seq_[j];
      int y = src_.at(x, g);
      int ty = tgt_.at(img_[static_cast<std::size_t>(x)], img_[static_cast<std::size_t>(g)]);
      if (!assign(y, ty)) return false;
      // Newly discovered elements are appended to known_ and handled by the
      // caller's loop over known_ (its size grows as we go).
    }
    return true;
  }

  void rollback(std::size_t log_mark, std::size_t known_mark) {
    while (log_.size() > log_mark) {
      int x = log_.back();
      log_.pop_back();
      int tx = img_[static_cast<std::size_t>(x)];
      img_[static_cast<std::size_t>(x)] = -1;
      if (injective_) pre_[static_cast<std::size_t>(tx)] = -1;
      if (--hit_[static_cast<std::size_t>(tx)] == 0) --distinct_;
    }
    known_.resize(known_mark);
  }

  const CayleyTable& src_;
  const CayleyTable& tgt_;
  bool injective_, surjective_;
  SearchOptions opt_;
  std::vector<int> seq_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> img_, pre_, hit_, pinned_, known_, log_;
  int distinct_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t results_ = 0;
};

}  // namespace detail

}  // namespace gtower

#endif  // GTOWER_TABLE_SEARCH_HPP
