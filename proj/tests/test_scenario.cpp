#include <doctest.h>

#include <algorithm>
#include <random>

#include "fdisac/config.hpp"
#include "fdisac/scenario.hpp"
#include "fdisac/units.hpp"
#include "helpers.hpp"

using namespace fdisac;

namespace {

bool has_code(const std::vector<Violation>& v, const std::string& code) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.code == code; });
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("default scenario values") {
    const Scenario s = default_paper_scenario(1);
    CHECK(validate(s).empty());
    CHECK(s.nt == 32);
    CHECK(s.nr == 32);
    CHECK(s.p_max == doctest::Approx(50.12).epsilon(1e-3));
    CHECK(s.p0 == doctest::Approx(db_to_linear(1.0)));
    REQUIRE(s.num_dl() == 2);
    REQUIRE(s.num_ul() == 2);
    REQUIRE(s.num_targets() == 1);
    CHECK(s.targets[0].rcs == 1.0);
    CHECK(s.dl_users[0].min_sinr == doctest::Approx(15.85).epsilon(1e-3));
    CHECK(s.ul_users[0].min_sinr == doctest::Approx(10.0));
    CHECK(s.dl_users[0].placement.distance == 250.0);
    CHECK(s.ul_users[0].placement.distance == 200.0);
    CHECK(s.targets[0].placement.distance == 100.0);
    CHECK(s.si_gain == doctest::Approx(1e-11));
    CHECK(s.array_separation == doctest::Approx(2.0 * s.wavelength()));
    for (int m = 1; m <= 4; ++m) CHECK(validate(default_paper_scenario(m)).empty());
    CHECK(validate(fast_profile_scenario(3)).empty());
  }

  TEST_CASE("default angular table keeps entities apart") {
    std::vector<Direction> dirs;
    for (std::size_t i = 0; i < 4; ++i) {
      dirs.push_back(default_dl_direction(i));
      dirs.push_back(default_ul_direction(i));
      dirs.push_back(default_target_direction(i));
    }
    for (std::size_t a = 0; a < dirs.size(); ++a) {
      CHECK(dirs[a].theta == doctest::Approx(deg_to_rad(20.0)));
      for (std::size_t b = a + 1; b < dirs.size(); ++b) {
        double d = std::abs(dirs[a].phi - dirs[b].phi);
        d = std::min(d, kTwoPi - d);
        CHECK(rad_to_deg(d) >= 15.0 - 1e-9);
      }
    }
  }

  TEST_CASE("validation codes") {
    Scenario s = default_paper_scenario(1);
    s.rho = 1.5;
    CHECK(has_code(validate(s), "rho_out_of_range"));

    Scenario empty = default_paper_scenario(0);
    empty.dl_users.clear();
    empty.ul_users.clear();
    CHECK(has_code(validate(empty), "no_entities"));

    Scenario bad = default_paper_scenario(1);
    bad.p_max = 0.0;
    bad.targets[0].rcs = -1.0;
    bad.dl_users[0].min_sinr = 0.0;
    bad.bandwidth = -1.0;
    bad.ga.elite_count = bad.ga.population_size;
    const auto v = validate(bad);
    CHECK(has_code(v, "nonpositive_power"));
    CHECK(has_code(v, "negative_rcs"));
    CHECK(has_code(v, "nonpositive_threshold"));
    CHECK(has_code(v, "nonpositive_bandwidth"));
    CHECK(has_code(v, "invalid_elite_count"));
    CHECK(v.size() >= 5);
  }

  TEST_CASE("noise power") {
    const double t = reference_temperature();
    CHECK(watts_to_dbm(noise_power(10e6, t, 0.0)) == doctest::Approx(-103.78).epsilon(1e-9));
    CHECK(watts_to_dbm(noise_power(10e6, t, 9.0)) == doctest::Approx(-94.78).epsilon(1e-9));
    CHECK(watts_to_dbm(noise_power(1.0, 290.0, 0.0)) == doctest::Approx(-173.98).epsilon(1e-4));
    for (double temp : {290.0, 295.0, 300.0})
      CHECK(std::abs(watts_to_dbm(noise_power(10e6, temp, 0.0)) + 103.78) <= 0.25);
    CHECK_THROWS_AS(noise_power(0.0, 290.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(noise_power(1e6, -1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(noise_power(1e6, 290.0, -1.0), InvalidArgument);

    const NoiseModel n = default_paper_scenario(1).noise();
    CHECK(watts_to_dbm(n.user_noise_power) == doctest::Approx(-94.78).epsilon(1e-9));
    CHECK(watts_to_dbm(n.bs_noise_power) == doctest::Approx(-103.78).epsilon(1e-9));
  }

  TEST_CASE("property: noise power is monotone in every argument") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> b(1e3, 1e8), t(200.0, 400.0), nf(0.0, 15.0), f(1.001, 1.5);
    for (int i = 0; i < 200; ++i) {
      const double bw = b(rng), temp = t(rng), fig = nf(rng), k = f(rng);
      const double base = noise_power(bw, temp, fig);
      CHECK(noise_power(bw * k, temp, fig) > base);
      CHECK(noise_power(bw, temp * k, fig) > base);
      CHECK(noise_power(bw, temp, fig + k) > base);
    }
  }

  TEST_CASE("target count and threshold helpers") {
    Scenario s = default_paper_scenario(1);
    set_sensing_threshold_db(s, 20.0);
    set_target_count(s, 3);
    REQUIRE(s.num_targets() == 3);
    for (const auto& t : s.targets) CHECK(t.min_sinr == doctest::Approx(100.0));
    CHECK(s.targets[2].placement.direction == default_target_direction(2));
    set_target_count(s, 0);
    CHECK(s.num_targets() == 0);
    CHECK_THROWS_AS(set_target_count(s, -1), InvalidArgument);
  }

  TEST_CASE("array layouts are coaxial and separated") {
    const Scenario s = default_paper_scenario(1);
    const auto tx = s.tx_layout();
    const auto rx = s.rx_layout();
    REQUIRE(tx.count() == 32);
    for (std::size_t n = 0; n < tx.count(); ++n) {
      const Vec3 d = tx.elements()[n] - rx.elements()[n];
      CHECK(d.norm() == doctest::Approx(s.array_separation));
      CHECK(std::abs(d.x()) + std::abs(d.y()) < 1e-15);
    }
  }
}

TEST_SUITE("config") {
  TEST_CASE("round trip of the rendered document") {
    for (int m = 0; m <= 4; ++m) {
      const Scenario s = default_paper_scenario(m);
      CHECK(parse_scenario(render_scenario(s)) == s);
      const Scenario f = fast_profile_scenario(m);
      CHECK(parse_scenario(render_scenario(f)) == f);
    }
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
      Scenario s = testing::small_scenario(rng, 2 + i % 5, i % 3, (i + 1) % 3, i % 4);
      s.seed = 1234567890123ull + i;
      s.antenna_constraint = i % 2 ? AntennaConstraint::beam_norm : AntennaConstraint::element;
      if (i % 3 == 0) {
        s.si_gain_matrix.assign(static_cast<std::size_t>(s.nr), std::vector<double>(static_cast<std::size_t>(s.nt), 1e-12 * (i + 1)));
      }
      if (s.num_dl() + s.num_ul() + s.num_targets() == 0) continue;
      CHECK(parse_scenario(render_scenario(s)) == s);
    }
  }

  TEST_CASE("profiles and unit variants") {
    CHECK(parse_scenario("{}") == default_paper_scenario(1));
    CHECK(parse_scenario(R"({"profile": "fast"})") == fast_profile_scenario(1));
    const Scenario s = parse_scenario(R"({"power": {"p_max_dbw": 17, "p0_dbm": 30},
                                          "self_interference": {"gain_db": -120},
                                          "arrays": {"separation_wavelengths": 3}})");
    CHECK(s.p_max == doctest::Approx(db_to_linear(17.0)));
    CHECK(s.p0 == doctest::Approx(1.0));
    CHECK(s.si_gain == doctest::Approx(1e-12));
    CHECK(s.array_separation == doctest::Approx(3.0 * s.wavelength()));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(parse_scenario(R"({"radio": {"bandwith_hz": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"power": {"p_max_w": 10, "p_max_dbw": 10}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"schema_version": 7})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"profile": "huge"})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"arrays": {"nt": "eight"}})"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/config.json"), ConfigError);
  }

  TEST_CASE("overrides replace unit variants") {
    const Scenario s = parse_scenario(R"({"targets": [{"distance_m": 80, "theta_deg": 20, "phi_deg": 10,
                                                       "rcs_dbsm": 0, "min_sinr_linear": 25}]})",
                                      {"targets.0.min_sinr_db=20", "power.p_max_dbw=15", "ga.population_size=30"});
    REQUIRE(s.num_targets() == 1);
    CHECK(s.targets[0].min_sinr == doctest::Approx(100.0));
    CHECK(s.targets[0].placement.distance == 80.0);
    CHECK(s.p_max == doctest::Approx(db_to_linear(15.0)));
    CHECK(s.ga.population_size == 30);
    CHECK_THROWS_AS(parse_scenario("{}", {"no_equals_sign"}), ConfigError);
    CHECK_THROWS_AS(parse_scenario("{}", {"radio.unknown_key=3"}), ConfigError);
  }
}
