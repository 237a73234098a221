#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "lineups/johnson.hpp"

using lineups::Group;
using lineups::JohnsonSpace;

namespace {

double toy_component_at(const std::vector<double>& component,
                        const std::pair<int, int>& pair) {
  const Group g{pair.first, pair.second};
  return component[static_cast<std::size_t>(lineups::rank_subset(g, 5))];
}

}  // namespace

TEST_CASE("make_space dimensions and eigenvalues") {
  SUBCASE("(15,5)") {
    const JohnsonSpace space = lineups::make_space(15, 5);
    CHECK(space.num_lineups == 3003);
    CHECK(space.dims == std::vector<long long>{1, 14, 90, 350, 910, 1638});
    long long total = 0;
    for (long long d : space.dims) total += d;
    CHECK(total == 3003);
    CHECK(lineups::eigenvalue_of_order(space, 0) == 50.0);
    CHECK(lineups::eigenvalue_of_order(space, 5) == -5.0);
    for (int j = 1; j <= 5; ++j)
      CHECK(space.eigenvalues[j] < space.eigenvalues[j - 1]);
  }
  SUBCASE("(5,2)") {
    const JohnsonSpace space = lineups::make_space(5, 2);
    CHECK(space.dims == std::vector<long long>{1, 4, 5});
    CHECK(space.eigenvalues == std::vector<double>{6.0, 1.0, -2.0});
  }
  SUBCASE("eigenvalues match the dense oracle") {
    for (const auto [n, k] : {std::pair{5, 2}, {6, 3}, {7, 3}}) {
      const JohnsonSpace space = lineups::make_space(n, k);
      const auto oracle = testing::dense_eigen_oracle(n, k);
      REQUIRE(oracle.eigenvalues.size() == space.eigenvalues.size());
      for (std::size_t j = 0; j < oracle.eigenvalues.size(); ++j)
        REQUIRE(space.eigenvalues[j] ==
                doctest::Approx(oracle.eigenvalues[j]).epsilon(1e-12));
    }
  }
  SUBCASE("k beyond n/2 rejected") {
    CHECK_THROWS(lineups::make_space(5, 3));
    CHECK_THROWS(lineups::make_space(4, 0));
  }
  SUBCASE("eigenvalue_of_order range checks") {
    const JohnsonSpace space = lineups::make_space(7, 3);
    CHECK(lineups::eigenvalue_of_order(space, 3) == -3.0);
    CHECK_THROWS(lineups::eigenvalue_of_order(space, 4));
    CHECK_THROWS(lineups::eigenvalue_of_order(space, -1));
  }
}

TEST_CASE("adjacency_apply") {
  SUBCASE("constant vector scales by the regular degree") {
    const JohnsonSpace space = lineups::make_space(7, 3);
    const std::vector<double> ones(static_cast<std::size_t>(space.num_lineups),
                                   1.0);
    const auto out = lineups::adjacency_apply(space, ones);
    for (double x : out) REQUIRE(x == doctest::Approx(12.0));  // k(n-k)
  }
  SUBCASE("indicator neighborhood at (5,2)") {
    const JohnsonSpace space = lineups::make_space(5, 2);
    std::vector<double> v(10, 0.0);
    v[static_cast<std::size_t>(lineups::rank_subset(Group{0, 1}, 5))] = 1.0;
    const auto out = lineups::adjacency_apply(space, v);
    int ones = 0;
    for (long long idx = 0; idx < 10; ++idx) {
      const Group lineup = lineups::unrank_subset(idx, 5, 2);
      const bool shares_one = (lineup.contains(0) != lineup.contains(1));
      if (shares_one) {
        REQUIRE(out[static_cast<std::size_t>(idx)] == 1.0);
        ++ones;
      } else {
        REQUIRE(out[static_cast<std::size_t>(idx)] == 0.0);
      }
    }
    CHECK(ones == 6);
  }
  SUBCASE("matches the dense matrix product at (6,3)") {
    const JohnsonSpace space = lineups::make_space(6, 3);
    const Eigen::MatrixXd dense = testing::dense_adjacency(6, 3);
    const auto v = testing::random_vector(space.num_lineups, 3);
    const auto out = lineups::adjacency_apply(space, v);
    const Eigen::Map<const Eigen::VectorXd> vv(v.data(),
                                               static_cast<Eigen::Index>(v.size()));
    const Eigen::VectorXd expected = dense * vv;
    for (std::size_t i = 0; i < out.size(); ++i)
      REQUIRE(out[i] == doctest::Approx(expected[static_cast<Eigen::Index>(i)])
                            .epsilon(1e-12));
  }
  SUBCASE("length mismatch rejected") {
    const JohnsonSpace space = lineups::make_space(5, 2);
    CHECK_THROWS(lineups::adjacency_apply(space, std::vector<double>(9, 0.0)));
  }
}

TEST_CASE("toy season projections") {
  const JohnsonSpace space = lineups::make_space(5, 2);
  const auto f = testing::toy_success_vector();

  SUBCASE("order 0 is the constant mean") {
    const auto f0 = lineups::project_onto_order(space, f, 0);
    for (double x : f0) REQUIRE(x == doctest::Approx(testing::kToyMean));
  }
  SUBCASE("order 1 matches the hand-computed column") {
    const auto f1 = lineups::project_onto_order(space, f, 1);
    for (const auto& [pair, expected] : testing::toy_order1())
      REQUIRE(std::abs(toy_component_at(f1, pair) - expected) < 0.01);
  }
  SUBCASE("order 2 matches the hand-computed column") {
    const auto f2 = lineups::project_onto_order(space, f, 2);
    for (const auto& [pair, expected] : testing::toy_order2())
      REQUIRE(std::abs(toy_component_at(f2, pair) - expected) < 0.01);
  }
  SUBCASE("decompose returns all three columns") {
    const auto decomp = lineups::decompose(space, f);
    REQUIRE(decomp.components.size() == 3);
    for (const auto& [pair, expected] : testing::toy_order1())
      REQUIRE(std::abs(toy_component_at(decomp.components[1], pair) - expected) <
              0.01);
    for (const auto& [pair, expected] : testing::toy_order2())
      REQUIRE(std::abs(toy_component_at(decomp.components[2], pair) - expected) <
              0.01);
    const auto recon = decomp.reconstruct();
    REQUIRE(testing::max_abs_diff(recon, f) < 1e-9);
  }
}

TEST_CASE("decompose edge cases") {
  const JohnsonSpace space = lineups::make_space(7, 3);
  SUBCASE("zero vector decomposes to zero components") {
    const std::vector<double> zero(static_cast<std::size_t>(space.num_lineups),
                                   0.0);
    const auto decomp = lineups::decompose(space, zero);
    for (const auto& component : decomp.components)
      for (double x : component) REQUIRE(x == 0.0);
  }
  SUBCASE("a vector already in an eigenspace projects to itself") {
    const auto v = testing::random_vector(space.num_lineups, 17);
    for (int j = 0; j <= 3; ++j) {
      const auto in_space = lineups::project_onto_order(space, v, j);
      const auto decomp = lineups::decompose(space, in_space);
      REQUIRE(testing::max_abs_diff(decomp.components[static_cast<std::size_t>(j)],
                                    in_space) < 1e-9);
      for (int l = 0; l <= 3; ++l) {
        if (l == j) continue;
        for (double x : decomp.components[static_cast<std::size_t>(l)])
          REQUIRE(std::abs(x) < 1e-9);
      }
    }
  }
  SUBCASE("length mismatch rejected") {
    CHECK_THROWS(lineups::decompose(space, std::vector<double>(3, 1.0)));
    CHECK_THROWS(lineups::project_onto_order(
        space, std::vector<double>(static_cast<std::size_t>(space.num_lineups)),
        4));
  }
}

TEST_CASE("projector algebra on random vectors") {
  for (const auto [n, k] : {std::pair{5, 2}, {7, 3}, {9, 4}, {15, 5}}) {
    const JohnsonSpace space = lineups::make_space(n, k);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto v = testing::random_vector(space.num_lineups, seed, 100.0);
      const auto decomp = lineups::decompose(space, v);

      // Reconstruction.
      REQUIRE(testing::max_abs_diff(decomp.reconstruct(), v) < 1e-9);

      // Parseval.
      double parts = 0.0;
      for (const auto& component : decomp.components)
        parts += testing::dot(component, component);
      const double total = testing::dot(v, v);
      REQUIRE(std::abs(parts - total) / total < 1e-9);

      // Idempotence and mutual annihilation.
      for (int j = 0; j <= k; ++j) {
        const auto& pj = decomp.components[static_cast<std::size_t>(j)];
        for (int l = 0; l <= k; ++l) {
          const auto again = lineups::project_onto_order(space, pj, l);
          if (l == j) {
            REQUIRE(testing::max_abs_diff(again, pj) < 1e-9);
          } else {
            for (double x : again) REQUIRE(std::abs(x) < 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("projection commutes with the permutation action") {
  for (const auto [n, k] : {std::pair{5, 2}, {7, 3}}) {
    const JohnsonSpace space = lineups::make_space(n, k);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto v = testing::random_vector(space.num_lineups, seed, 50.0);
      const auto perm = testing::random_permutation(n, seed + 100);
      for (int j = 0; j <= k; ++j) {
        const auto project_then_move = lineups::apply_permutation(
            perm, lineups::project_onto_order(space, v, j), n, k);
        const auto move_then_project = lineups::project_onto_order(
            space, lineups::apply_permutation(perm, v, n, k), j);
        REQUIRE(testing::max_abs_diff(project_then_move, move_then_project) <
                1e-9);
      }
    }
  }
}

TEST_CASE("projectors match the dense eigendecomposition oracle") {
  for (const auto [n, k] : {std::pair{5, 2}, {6, 3}}) {
    const JohnsonSpace space = lineups::make_space(n, k);
    const auto oracle = testing::dense_eigen_oracle(n, k);
    const auto v = testing::random_vector(space.num_lineups, 23, 100.0);
    const Eigen::Map<const Eigen::VectorXd> vv(v.data(),
                                               static_cast<Eigen::Index>(v.size()));
    for (int j = 0; j <= k; ++j) {
      const auto mine = lineups::project_onto_order(space, v, j);
      const Eigen::VectorXd expected =
          oracle.projectors[static_cast<std::size_t>(j)] * vv;
      for (std::size_t i = 0; i < mine.size(); ++i)
        REQUIRE(std::abs(mine[i] - expected[static_cast<Eigen::Index>(i)]) <
                1e-8);
    }
  }
}

TEST_CASE("numerical rank of each projector equals the space dimension") {
  for (const auto [n, k] : {std::pair{5, 2}, {7, 3}}) {
    const JohnsonSpace space = lineups::make_space(n, k);
    const auto size = static_cast<Eigen::Index>(space.num_lineups);
    for (int j = 0; j <= k; ++j) {
      Eigen::MatrixXd projector(size, size);
      for (Eigen::Index col = 0; col < size; ++col) {
        std::vector<double> basis(static_cast<std::size_t>(size), 0.0);
        basis[static_cast<std::size_t>(col)] = 1.0;
        const auto image = lineups::project_onto_order(space, basis, j);
        for (Eigen::Index row = 0; row < size; ++row)
          projector(row, col) = image[static_cast<std::size_t>(row)];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(projector);
      lu.setThreshold(1e-8);
      CHECK(lu.rank() == space.dims[static_cast<std::size_t>(j)]);
    }
  }
}
