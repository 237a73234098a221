#include "lineups/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace lineups {

namespace {

// Largest n for which every C(n, k) fits in a signed 64-bit integer.
constexpr int kBinomialMaxN = 62;

const std::array<std::array<long long, kBinomialMaxN + 1>, kBinomialMaxN + 1>&
pascal_table() {
  static const auto table = [] {
    std::array<std::array<long long, kBinomialMaxN + 1>, kBinomialMaxN + 1> t{};
    for (int n = 0; n <= kBinomialMaxN; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) {
        t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

long long binomial(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (n > kBinomialMaxN)
    throw std::invalid_argument("binomial: n exceeds table bound " +
                                std::to_string(kBinomialMaxN));
  if (k < 0 || k > n) return 0;
  return pascal_table()[n][k];
}

Group::Group(std::vector<PlayerId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0)
      throw std::invalid_argument("Group: negative player id");
    if (i > 0 && members_[i] == members_[i - 1])
      throw std::invalid_argument("Group: duplicate player id " +
                                  std::to_string(members_[i]));
  }
}

Group::Group(std::initializer_list<PlayerId> members)
    : Group(std::vector<PlayerId>(members)) {}

bool Group::contains(PlayerId p) const {
  return std::binary_search(members_.begin(), members_.end(), p);
}

bool Group::subset_of(const Group& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  const int n = static_cast<int>(map_.size());
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int x : map_) {
    if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("Permutation: mapping is not a bijection");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int i = 0; i < size(); ++i)
    inv[static_cast<std::size_t>(map_[static_cast<std::size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& inner) const {
  if (size() != inner.size())
    throw std::invalid_argument("Permutation: size mismatch in composition");
  std::vector<int> m(map_.size());
  for (int i = 0; i < size(); ++i)
    m[static_cast<std::size_t>(i)] = (*this)(inner(i));
  return Permutation(std::move(m));
}

LineupIndex rank_subset(const Group& subset, int n) {
  const int k = subset.size();
  if (k == 0) throw std::invalid_argument("rank_subset: empty subset");
  const auto& m = subset.members();
  if (m.back() >= n)
    throw std::invalid_argument("rank_subset: member " +
                                std::to_string(m.back()) + " >= n");
  long long rank = 0;
  for (int i = 0; i < k; ++i) rank += binomial(m[static_cast<std::size_t>(i)], i + 1);
  return rank;
}

Group unrank_subset(LineupIndex index, int n, int k) {
  if (k <= 0 || k > n) throw std::invalid_argument("unrank_subset: bad k");
  if (index < 0 || index >= binomial(n, k))
    throw std::out_of_range("unrank_subset: index out of range");
  std::vector<PlayerId> members(static_cast<std::size_t>(k));
  long long rest = index;
  int c = n - 1;
  for (int i = k; i >= 1; --i) {
    while (binomial(c, i) > rest) --c;
    members[static_cast<std::size_t>(i - 1)] = c;
    rest -= binomial(c, i);
  }
  return Group(std::move(members));
}

std::vector<LineupIndex> supersets_of(const Group& group, int n, int k) {
  const int g = group.size();
  if (g == 0) throw std::invalid_argument("supersets_of: empty group");
  if (g > k) throw std::invalid_argument("supersets_of: group larger than lineup");
  if (group.members().back() >= n)
    throw std::invalid_argument("supersets_of: member >= n");

  // Others: the ground set minus the group, in increasing order.
  std::vector<PlayerId> others;
  others.reserve(static_cast<std::size_t>(n - g));
  for (PlayerId p = 0; p < n; ++p)
    if (!group.contains(p)) others.push_back(p);

  const int m = k - g;
  std::vector<LineupIndex> out;
  out.reserve(static_cast<std::size_t>(binomial(n - g, m)));

  if (m == 0) {
    out.push_back(rank_subset(group, n));
    return out;
  }

  // Odometer over m-subsets of `others`, merged with the group and ranked.
  std::vector<int> pick(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i;
  std::vector<PlayerId> lineup(static_cast<std::size_t>(k));
  while (true) {
    std::vector<PlayerId> chosen(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      chosen[static_cast<std::size_t>(i)] =
          others[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    std::merge(group.members().begin(), group.members().end(), chosen.begin(),
               chosen.end(), lineup.begin());
    long long rank = 0;
    for (int i = 0; i < k; ++i)
      rank += binomial(lineup[static_cast<std::size_t>(i)], i + 1);
    out.push_back(rank);

    int pos = m - 1;
    while (pos >= 0 &&
           pick[static_cast<std::size_t>(pos)] == n - g - m + pos)
      --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < m; ++i)
      pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> apply_permutation(const Permutation& perm,
                                      std::span<const double> v, int n, int k) {
  if (perm.size() != n)
    throw std::invalid_argument("apply_permutation: permutation size != n");
  const long long num = binomial(n, k);
  if (static_cast<long long>(v.size()) != num)
    throw std::invalid_argument("apply_permutation: vector length mismatch");

  std::vector<double> out(v.size());
  std::vector<PlayerId> image(static_cast<std::size_t>(k));
  for (long long idx = 0; idx < num; ++idx) {
    const Group lineup = unrank_subset(idx, n, k);
    for (int i = 0; i < k; ++i)
      image[static_cast<std::size_t>(i)] =
          perm(lineup.members()[static_cast<std::size_t>(i)]);
    std::sort(image.begin(), image.end());
    long long target = 0;
    for (int i = 0; i < k; ++i)
      target += binomial(image[static_cast<std::size_t>(i)], i + 1);
    out[static_cast<std::size_t>(target)] = v[static_cast<std::size_t>(idx)];
  }
  return out;
}

}  // namespace lineups
