#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lineups/bootstrap.hpp"

using lineups::Group;

namespace {

// Standard synthetic fixture: one strong planted pair, moderate skew.
std::vector<lineups::PlayRecord> fixture_plays() {
  lineups::SynthConfig config;
  config.n = 10;
  config.k = 4;
  config.num_plays = 20000;
  config.seed = 404;
  config.planted.push_back({Group{1, 4}, 0.4});
  return lineups::generate_synthetic_season(config);
}

}  // namespace

TEST_CASE("pearson_r") {
  const std::vector<double> xs{1.0, 2.0, 3.0};
  SUBCASE("affine increasing relation gives 1") {
    const std::vector<double> ys{3.0, 5.0, 7.0};
    CHECK(lineups::pearson_r(xs, ys) == doctest::Approx(1.0));
  }
  SUBCASE("negation gives -1") {
    const std::vector<double> ys{-1.0, -2.0, -3.0};
    CHECK(lineups::pearson_r(xs, ys) == doctest::Approx(-1.0));
  }
  SUBCASE("hand-computed half correlation") {
    const std::vector<double> ys{1.0, 3.0, 2.0};
    CHECK(lineups::pearson_r(xs, ys) == doctest::Approx(0.5));
  }
  SUBCASE("degenerate inputs rejected") {
    CHECK_THROWS(lineups::pearson_r(xs, std::vector<double>{1.0, 2.0}));
    CHECK_THROWS(lineups::pearson_r(std::vector<double>{1.0},
                                    std::vector<double>{1.0}));
    CHECK_THROWS(lineups::pearson_r(xs, std::vector<double>{2.0, 2.0, 2.0}));
  }
}

TEST_CASE("resample_plays") {
  SUBCASE("single-play season resamples to copies of that play") {
    lineups::PlayRecord play;
    play.game_id = "G1";
    play.sequence = 1;
    play.team_players = {"a", "b"};
    play.opp_players = {"c", "d"};
    play.pts_for = 2;
    play.poss_for = 1;
    const std::vector<lineups::PlayRecord> season{play};
    const auto resampled = lineups::resample_plays(season, 3);
    REQUIRE(resampled.size() == 1);
    CHECK(resampled[0].team_players == play.team_players);
    CHECK(resampled[0].pts_for == 2);
  }
  SUBCASE("count preserved and deterministic per seed") {
    const auto plays = fixture_plays();
    const auto a = lineups::resample_plays(plays, 8);
    const auto b = lineups::resample_plays(plays, 8);
    REQUIRE(a.size() == plays.size());
    bool identical = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      identical = identical && a[i].sequence == b[i].sequence;
    CHECK(identical);
    const auto c = lineups::resample_plays(plays, 9);
    bool different = false;
    for (std::size_t i = 0; i < a.size() && !different; ++i)
      different = a[i].sequence != c[i].sequence;
    CHECK(different);
  }
  SUBCASE("empty input rejected") {
    CHECK_THROWS(lineups::resample_plays({}, 1));
  }
  SUBCASE("bootstrapped possessions track the actual season") {
    const auto plays = fixture_plays();
    const auto roster = lineups::synthetic_roster(10);
    const auto original = lineups::build_success_function(
        lineups::build_stints(plays), roster, 4);
    const Group pair{1, 4};
    const double actual =
        static_cast<double>(lineups::group_possessions(original, pair));

    double mean = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      const auto fn = lineups::build_success_function(
          lineups::build_stints(
              lineups::resample_plays(plays, static_cast<std::uint64_t>(t))),
          roster, 4);
      mean += static_cast<double>(lineups::group_possessions(fn, pair));
    }
    mean /= trials;
    CHECK(std::abs(mean - actual) / actual < 0.05);
  }
}

TEST_CASE("bootstrap_group_stats") {
  const auto plays = fixture_plays();
  const auto roster = lineups::synthetic_roster(10);

  SUBCASE("B=1 is reproducible") {
    const std::vector<Group> groups{Group{1, 4}};
    const auto a = lineups::bootstrap_group_stats(plays, roster, 4, groups, 1, 55);
    const auto b = lineups::bootstrap_group_stats(plays, roster, 4, groups, 1, 55);
    REQUIRE(a.size() == 1);
    CHECK(a[0].pm_mean == b[0].pm_mean);
    CHECK(a[0].poss_mean == b[0].poss_mean);
    CHECK(a[0].sclp_values == b[0].sclp_values);
    CHECK(a[0].pm_sd == 0.0);
  }

  SUBCASE("planted positive pair stays positive and correlated") {
    const std::vector<Group> groups{Group{1, 4}};
    const auto reports =
        lineups::bootstrap_group_stats(plays, roster, 4, groups, 60, 99);
    REQUIRE(reports.size() == 1);
    const auto& report = reports[0];
    CHECK(report.valid);
    CHECK(report.frac_sclp_negative < 0.1);
    CHECK(report.pearson_r > 0.5);
    CHECK(report.sclp_values.size() == 60);
    CHECK(report.frac_pm_negative < 0.1);
  }

  SUBCASE("possessions vary less than plus-minus") {
    const std::vector<Group> groups{Group{0, 2}, Group{2, 7}, Group{1, 4}};
    const auto reports =
        lineups::bootstrap_group_stats(plays, roster, 4, groups, 60, 7);
    for (const auto& report : reports) {
      REQUIRE(report.poss_mean > 500.0);
      const double poss_cv = report.poss_sd / report.poss_mean;
      const double pm_cv = report.pm_sd / std::max(std::abs(report.pm_mean), 1.0);
      REQUIRE(poss_cv < pm_cv);
    }
  }

  SUBCASE("group never on the floor is flagged") {
    // Restrict to a tiny season where one pair never appears together.
    lineups::SynthConfig config;
    config.n = 10;
    config.k = 4;
    config.num_plays = 40;
    config.seed = 12;
    const auto tiny = lineups::generate_synthetic_season(config);
    const auto fn = lineups::build_success_function(
        lineups::build_stints(tiny), roster, 4);
    std::optional<Group> missing;
    for (long long gi = 0; gi < lineups::binomial(10, 2) && !missing; ++gi) {
      Group g = lineups::unrank_subset(gi, 10, 2);
      if (lineups::group_possessions(fn, g) == 0) missing = g;
    }
    REQUIRE(missing.has_value());
    const std::vector<Group> groups{*missing};
    const auto reports =
        lineups::bootstrap_group_stats(tiny, roster, 4, groups, 5, 3);
    REQUIRE(reports.size() == 1);
    CHECK_FALSE(reports[0].valid);
    CHECK(std::isnan(reports[0].pearson_r));
  }

  SUBCASE("bad arguments rejected") {
    const std::vector<Group> groups{Group{0}};
    CHECK_THROWS(lineups::bootstrap_group_stats(plays, roster, 4, groups, 0, 1));
    CHECK_THROWS(lineups::bootstrap_group_stats({}, roster, 4, groups, 1, 1));
  }
}
