#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lineups {

using PlayerId = int;
using LineupIndex = long long;

/// C(n, k) from a precomputed Pascal table. Throws for n < 0, or n beyond the
/// table bound (62, the last row where every entry fits in a long long).
long long binomial(int n, int k);

/// A set of players stored as a strictly increasing id sequence.
class Group {
 public:
  Group() = default;
  /// Sorts the ids; rejects duplicates and negative ids.
  explicit Group(std::vector<PlayerId> members);
  Group(std::initializer_list<PlayerId> members);

  const std::vector<PlayerId>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(PlayerId p) const;
  bool subset_of(const Group& other) const;

  auto operator<=>(const Group&) const = default;

 private:
  std::vector<PlayerId> members_;
};

/// A bijection on [0, n).
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& mapping() const { return map_; }

  Permutation inverse() const;
  /// Composition (*this) ∘ inner: apply inner first.
  Permutation compose(const Permutation& inner) const;

 private:
  std::vector<int> map_;
};

/// Colexicographic rank of a subset among all |subset|-subsets of [0, n).
LineupIndex rank_subset(const Group& subset, int n);

/// Inverse of rank_subset.
Group unrank_subset(LineupIndex index, int n, int k);

/// Indices of all k-subsets of [0, n) that contain `group`, ascending.
/// Result length is C(n - |group|, k - |group|).
std::vector<LineupIndex> supersets_of(const Group& group, int n, int k);

/// Permutation action on a k-subset-indexed vector: the result w satisfies
/// w[rank(perm(L))] = v[rank(L)] for every k-subset L.
std::vector<double> apply_permutation(const Permutation& perm,
                                      std::span<const double> v, int n, int k);

}  // namespace lineups
