#include "lineups/johnson.hpp"

#include <stdexcept>
#include <string>

namespace lineups {

namespace {

// Cache the neighbor table up to this many entries (~128 MB of int32 at the
// bound); larger spaces fall back to on-the-fly enumeration.
constexpr long long kNeighborTableBudget = 1LL << 25;

// Appends the ranks of all neighbors of `lineup` (swap one member for one
// non-member) to `out`.
void neighbors_of(const Group& lineup, int n, int k,
                  std::vector<std::int32_t>* out) {
  const auto& m = lineup.members();
  std::vector<PlayerId> nbr(m.begin(), m.end());
  for (int drop = 0; drop < k; ++drop) {
    for (PlayerId add = 0; add < n; ++add) {
      if (lineup.contains(add)) continue;
      nbr.assign(m.begin(), m.end());
      nbr[static_cast<std::size_t>(drop)] = add;
      std::sort(nbr.begin(), nbr.end());
      long long rank = 0;
      for (int i = 0; i < k; ++i)
        rank += binomial(nbr[static_cast<std::size_t>(i)], i + 1);
      out->push_back(static_cast<std::int32_t>(rank));
    }
  }
}

}  // namespace

JohnsonSpace make_space(int n, int k) {
  if (k < 1 || k > n - k)
    throw std::invalid_argument(
        "make_space: requires 1 <= k <= n - k (got n=" + std::to_string(n) +
        ", k=" + std::to_string(k) + ")");

  JohnsonSpace space;
  space.n = n;
  space.k = k;
  space.num_lineups = binomial(n, k);
  space.degree = k * (n - k);

  space.eigenvalues.resize(static_cast<std::size_t>(k) + 1);
  space.dims.resize(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    space.eigenvalues[static_cast<std::size_t>(j)] =
        static_cast<double>((k - j) * (n - k - j) - j);
    space.dims[static_cast<std::size_t>(j)] =
        binomial(n, j) - (j > 0 ? binomial(n, j - 1) : 0);
  }

  if (space.num_lineups * space.degree <= kNeighborTableBudget) {
    space.neighbor_table.reserve(
        static_cast<std::size_t>(space.num_lineups * space.degree));
    for (long long idx = 0; idx < space.num_lineups; ++idx)
      neighbors_of(unrank_subset(idx, n, k), n, k, &space.neighbor_table);
  }
  return space;
}

double eigenvalue_of_order(const JohnsonSpace& space, int j) {
  if (j < 0 || j > space.k)
    throw std::out_of_range("eigenvalue_of_order: order out of range");
  return space.eigenvalues[static_cast<std::size_t>(j)];
}

std::vector<double> adjacency_apply(const JohnsonSpace& space,
                                    std::span<const double> v) {
  if (static_cast<long long>(v.size()) != space.num_lineups)
    throw std::invalid_argument("adjacency_apply: vector length mismatch");

  std::vector<double> out(v.size(), 0.0);
  if (!space.neighbor_table.empty()) {
    const std::int32_t* nbr = space.neighbor_table.data();
    for (long long idx = 0; idx < space.num_lineups; ++idx) {
      double acc = 0.0;
      for (int e = 0; e < space.degree; ++e)
        acc += v[static_cast<std::size_t>(*nbr++)];
      out[static_cast<std::size_t>(idx)] = acc;
    }
    return out;
  }

  std::vector<std::int32_t> scratch;
  scratch.reserve(static_cast<std::size_t>(space.degree));
  for (long long idx = 0; idx < space.num_lineups; ++idx) {
    scratch.clear();
    neighbors_of(unrank_subset(idx, space.n, space.k), space.n, space.k,
                 &scratch);
    double acc = 0.0;
    for (std::int32_t r : scratch) acc += v[static_cast<std::size_t>(r)];
    out[static_cast<std::size_t>(idx)] = acc;
  }
  return out;
}

std::vector<double> project_onto_order(const JohnsonSpace& space,
                                       std::span<const double> v, int j) {
  if (j < 0 || j > space.k)
    throw std::out_of_range("project_onto_order: order out of range");
  if (static_cast<long long>(v.size()) != space.num_lineups)
    throw std::invalid_argument("project_onto_order: vector length mismatch");

  std::vector<double> w(v.begin(), v.end());
  const double lambda_j = space.eigenvalues[static_cast<std::size_t>(j)];
  for (int i = 0; i <= space.k; ++i) {
    if (i == j) continue;
    const double lambda_i = space.eigenvalues[static_cast<std::size_t>(i)];
    const double scale = 1.0 / (lambda_j - lambda_i);
    std::vector<double> aw = adjacency_apply(space, w);
    for (std::size_t t = 0; t < w.size(); ++t)
      w[t] = (aw[t] - lambda_i * w[t]) * scale;
  }
  return w;
}

std::vector<double> SpectralDecomposition::reconstruct() const {
  std::vector<double> sum(components.empty() ? 0 : components.front().size(),
                          0.0);
  for (const auto& c : components)
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += c[i];
  return sum;
}

SpectralDecomposition decompose(const JohnsonSpace& space,
                                std::span<const double> v) {
  if (static_cast<long long>(v.size()) != space.num_lineups)
    throw std::invalid_argument("decompose: vector length mismatch");
  SpectralDecomposition d;
  d.n = space.n;
  d.k = space.k;
  d.components.reserve(static_cast<std::size_t>(space.k) + 1);
  for (int j = 0; j <= space.k; ++j)
    d.components.push_back(project_onto_order(space, v, j));
  return d;
}

}  // namespace lineups
