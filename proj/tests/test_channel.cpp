#include <doctest.h>

#include <random>

#include "fdisac/channel.hpp"
#include "fdisac/units.hpp"
#include "helpers.hpp"

using namespace fdisac;

namespace {

// Term-by-term evaluation of the downlink model, independent of the library
// beyond steering_vector.
CVector downlink_oracle(const Scenario& s, std::size_t j) {
  const double lambda = kSpeedOfLight / s.carrier_frequency;
  const auto tx = s.tx_layout();
  const auto& u = s.dl_users[j].placement;
  const double d_bj = u.distance;
  CVector h = (lambda / (4.0 * kPi * d_bj)) * std::exp(Complex(0, -2.0 * kPi * d_bj / lambda)) *
              steering_vector(tx, u.direction);
  for (const auto& t : s.targets) {
    const double d_bm = t.placement.distance;
    const double d_mj = (t.placement.position() - u.position()).norm();
    const double c = lambda * t.rcs / (std::pow(4.0 * kPi, 1.5) * d_bm * d_mj);
    h += c * std::exp(Complex(0, -2.0 * kPi * (d_bm + d_bj) / lambda)) * steering_vector(tx, t.placement.direction);
  }
  return std::sqrt(static_cast<double>(s.nt)) * h;
}

Scenario single_user(int targets) {
  Scenario s = default_paper_scenario(targets);
  s.ul_users.clear();
  s.dl_users.resize(1);
  return s;
}

}  // namespace

TEST_SUITE("channel") {
  TEST_CASE("line-of-sight magnitudes") {
    const Scenario s = default_paper_scenario(0);
    const double lambda = s.wavelength();
    const auto ch = build_channels(s);
    CHECK(ch.h[0].norm() == doctest::Approx(std::sqrt(32.0) * lambda / (4 * kPi * 250.0)).epsilon(1e-12));
    CHECK(ch.h[0].norm() == doctest::Approx(1.385e-5).epsilon(1e-3));
    CHECK(ch.g[0].norm() == doctest::Approx(1.731e-5).epsilon(1e-3));
  }

  TEST_CASE("downlink and uplink channels match the term-by-term oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      Scenario s = testing::small_scenario(rng, 4 + trial % 5, 2, 1, trial % 4);
      const auto ch = build_channels(s);
      for (std::size_t j = 0; j < s.num_dl(); ++j) {
        const CVector ref = downlink_oracle(s, j);
        CHECK((ch.h[j] - ref).norm() <= 1e-12 * ref.norm());
      }
    }
  }

  TEST_CASE("zero RCS reduces to line of sight") {
    Scenario s = default_paper_scenario(2);
    Scenario los = default_paper_scenario(0);
    for (auto& t : s.targets) t.rcs = 0.0;
    const auto a = build_channels(s);
    const auto b = build_channels(los);
    for (std::size_t j = 0; j < 2; ++j) CHECK((a.h[j] - b.h[j]).norm() == 0.0);
    for (std::size_t k = 0; k < 2; ++k) CHECK((a.g[k] - b.g[k]).norm() == 0.0);
    for (const auto& alpha : a.alpha) CHECK(alpha == Complex(0.0, 0.0));
  }

  TEST_CASE("co-directional target strengthens the user's beam gain") {
    Scenario s = single_user(1);
    const double lambda = s.wavelength();
    s.targets[0].placement.direction = s.dl_users[0].placement.direction;
    // Whole number of wavelengths to the target: the scattered phasor adds in
    // phase with the direct one.
    s.targets[0].placement.distance = lambda * std::round(100.0 / lambda);
    Scenario los = s;
    los.targets.clear();
    const CVector a = steering_vector(s.tx_layout(), s.dl_users[0].placement.direction);
    const double with = std::abs(a.dot(build_channels(s).h[0]));
    const double without = std::abs(a.dot(build_channels(los).h[0]));
    CHECK(with == doctest::Approx(std::abs(a.dot(downlink_oracle(s, 0)))).epsilon(1e-12));
    CHECK(with > without);
  }

  TEST_CASE("target gain") {
    const Scenario s = default_paper_scenario(2);
    const double lambda = s.wavelength();
    const double expected = 32.0 * lambda / (std::pow(4 * kPi, 1.5) * 1e4);
    CHECK(std::abs(target_gain(s, 0)) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(target_gain(s, 0)) == doctest::Approx(5.53e-7).epsilon(2e-3));
    CHECK(std::abs(target_gain(s, 0)) == doctest::Approx(std::abs(target_gain(s, 1))));
    Scenario far = s;
    far.targets[0].placement.distance = 200.0;
    CHECK(std::abs(target_gain(far, 0)) == doctest::Approx(std::abs(target_gain(s, 0)) / 4.0));
    Scenario zero = s;
    zero.targets[0].rcs = 0.0;
    CHECK(target_gain(zero, 0) == Complex(0.0, 0.0));
    Scenario at_bs = s;
    at_bs.targets[0].placement.distance = 0.0;
    CHECK_THROWS_AS(target_gain(at_bs, 0), InvalidGeometry);
    CHECK_THROWS_AS(target_gain(s, 5), InvalidArgument);
  }

  TEST_CASE("self-interference channel") {
    Scenario s = default_paper_scenario(1);
    const auto tx = s.tx_layout();
    const auto rx = s.rx_layout();
    const CMatrix h = si_channel(s, tx, rx);
    for (Eigen::Index a = 0; a < h.rows(); ++a)
      for (Eigen::Index b = 0; b < h.cols(); ++b) CHECK(std::abs(h(a, b)) == doctest::Approx(3.1623e-6).epsilon(1e-4));
    // Element n faces element n across the same gap, so those pairs match.
    for (Eigen::Index n = 1; n < h.rows(); ++n) CHECK(std::abs(h(n, n) - h(0, 0)) < 1e-18);
    s.si_gain = 0.0;
    CHECK(si_channel(s, tx, rx).norm() == 0.0);
    CHECK_THROWS_AS(si_channel(s, tx, tx), InvalidGeometry);
    Scenario wrong = default_paper_scenario(1);
    wrong.si_gain_matrix.assign(3, std::vector<double>(3, 1e-11));
    CHECK_THROWS_AS(si_channel(wrong, tx, rx), InvalidArgument);
  }

  TEST_CASE("assembly invariants") {
    const Scenario s = default_paper_scenario(3);
    const auto a = build_channels(s);
    const auto b = build_channels(s);
    for (std::size_t m = 0; m < 3; ++m) {
      Eigen::JacobiSVD<CMatrix> svd(a.response[m]);
      const auto sv = svd.singularValues();
      CHECK(sv(1) < 1e-10 * sv(0));
      CHECK(std::abs(a.response[m].norm() - 1.0) < 1e-10);
      CHECK(a.alpha[m] == b.alpha[m]);
      CHECK((a.response[m] - b.response[m]).norm() == 0.0);
    }
    for (std::size_t j = 0; j < 2; ++j) CHECK((a.h[j] - b.h[j]).norm() == 0.0);
    CHECK((a.h_si - b.h_si).norm() == 0.0);
  }

  TEST_CASE("property: permuting targets permutes gains and responses") {
    Scenario s = default_paper_scenario(3);
    s.targets[1].rcs = 2.0;
    s.targets[2].placement.distance = 150.0;
    Scenario p = s;
    std::swap(p.targets[0], p.targets[2]);
    const auto a = build_channels(s);
    const auto b = build_channels(p);
    CHECK(a.alpha[0] == b.alpha[2]);
    CHECK(a.alpha[2] == b.alpha[0]);
    CHECK(a.alpha[1] == b.alpha[1]);
    CHECK((a.response[0] - b.response[2]).norm() == 0.0);
    // Channel sums are order dependent only through rounding.
    for (std::size_t j = 0; j < 2; ++j) CHECK((a.h[j] - b.h[j]).norm() <= 1e-14 * a.h[j].norm());
  }

  TEST_CASE("property: leading coefficients scale linearly with wavelength") {
    Scenario s = default_paper_scenario(0);
    Scenario t = s;
    t.carrier_frequency = s.carrier_frequency / 2.0;
    const auto a = build_channels(s);
    const auto b = build_channels(t);
    CHECK(b.h[0].norm() == doctest::Approx(2.0 * a.h[0].norm()).epsilon(1e-12));
    CHECK(b.g[1].norm() == doctest::Approx(2.0 * a.g[1].norm()).epsilon(1e-12));
    Scenario u = default_paper_scenario(1);
    Scenario v = u;
    v.carrier_frequency = u.carrier_frequency / 2.0;
    CHECK(std::abs(target_gain(v, 0)) == doctest::Approx(2.0 * std::abs(target_gain(u, 0))).epsilon(1e-12));
  }

  TEST_CASE("invalid scenarios and geometry") {
    Scenario s = default_paper_scenario(1);
    s.rho = 2.0;
    CHECK_THROWS_AS(build_channels(s), InvalidArgument);
    Scenario c = default_paper_scenario(1);
    c.targets[0].placement = c.dl_users[0].placement;
    CHECK_THROWS_AS(build_channels(c), InvalidGeometry);
    CHECK_THROWS_AS(downlink_channel(default_paper_scenario(1), s.tx_layout(), 9), InvalidArgument);
  }
}
