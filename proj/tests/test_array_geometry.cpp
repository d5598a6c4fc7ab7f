#include <doctest.h>

#include <random>

#include "fdisac/array_geometry.hpp"
#include "fdisac/units.hpp"

using namespace fdisac;

TEST_SUITE("array_geometry") {
  TEST_CASE("circular layout radius and element angles") {
    const auto one = circular_layout(1, 0.01);
    REQUIRE(one.count() == 1);
    CHECK(one.elements()[0].x() == doctest::Approx(0.01 / (4.0 * kPi)).epsilon(1e-12));
    CHECK(one.elements()[0].y() == doctest::Approx(0.0));
    CHECK(0.01 / (4.0 * kPi) == doctest::Approx(7.96e-4).epsilon(1e-3));

    const auto four = circular_layout(4, 1.0);
    const double r = 1.0 / kPi;
    const double expected[4][2] = {{r, 0}, {0, r}, {-r, 0}, {0, -r}};
    for (int n = 0; n < 4; ++n) {
      CHECK(four.elements()[n].x() == doctest::Approx(expected[n][0]).epsilon(1e-12).scale(1.0));
      CHECK(four.elements()[n].y() == doctest::Approx(expected[n][1]).epsilon(1e-12).scale(1.0));
      CHECK(four.elements()[n].z() == 0.0);
    }

    const double lambda = kSpeedOfLight / 39e9;
    CHECK(lambda == doctest::Approx(7.6923e-3).epsilon(1e-4));
    CHECK(circular_radius(32, lambda) == doctest::Approx(0.01959).epsilon(1e-3));
  }

  TEST_CASE("invalid layouts are rejected") {
    CHECK_THROWS_AS(circular_layout(0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(circular_layout(-3, 1.0), InvalidArgument);
    CHECK_THROWS_AS(circular_layout(4, 0.0), InvalidArgument);
    CHECK_THROWS_AS(circular_layout(4, -1.0), InvalidArgument);
    CHECK_THROWS_AS(ArrayLayout({}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(ArrayLayout({Vec3(std::nan(""), 0, 0)}, 1.0), InvalidArgument);
  }

  TEST_CASE("wavevector axis cases") {
    const Vec3 k0 = wavevector({0.0, 1.234}, 1.0);
    CHECK(k0.x() == doctest::Approx(0.0).scale(1.0));
    CHECK(k0.y() == doctest::Approx(0.0).scale(1.0));
    CHECK(k0.z() == doctest::Approx(kTwoPi));
    const Vec3 kx = wavevector({kPi / 2, 0.0}, 1.0);
    CHECK(kx.x() == doctest::Approx(kTwoPi));
    CHECK(std::abs(kx.z()) < 1e-12);
    const Vec3 ky = wavevector({kPi / 2, kPi / 2}, 0.5);
    CHECK(std::abs(ky.x()) < 1e-12);
    CHECK(ky.y() == doctest::Approx(4.0 * kPi));
    CHECK(wavevector({0.7, 2.1}, 0.3).norm() == doctest::Approx(kTwoPi / 0.3));
  }

  TEST_CASE("steering vector examples") {
    const auto planar = circular_layout(6, 1.0);
    const CVector a = steering_vector(planar, {0.0, 0.0});
    for (Eigen::Index n = 0; n < a.size(); ++n) {
      CHECK(a(n).real() == doctest::Approx(1.0 / std::sqrt(6.0)));
      CHECK(std::abs(a(n).imag()) < 1e-15);
    }

    const ArrayLayout pair({Vec3(0.25, 0, 0), Vec3(-0.25, 0, 0)}, 1.0);
    const CVector b = steering_vector(pair, {kPi / 2, 0.0});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(b(0) - Complex(0, s)) < 1e-12);
    CHECK(std::abs(b(1) - Complex(0, -s)) < 1e-12);
  }

  TEST_CASE("direction normalization") {
    const Direction d = Direction{-0.3, 0.5}.normalized();
    CHECK(d.theta == doctest::Approx(0.3));
    CHECK(d.phi == doctest::Approx(0.5 + kPi));
    const Direction wrapped = Direction{0.4, -kPi / 2}.normalized();
    CHECK(wrapped.phi == doctest::Approx(1.5 * kPi));
    CHECK((Direction{-0.3, 0.5}.unit_vector() - d.unit_vector()).norm() < 1e-12);
  }

  TEST_CASE("rotation maps +z onto the normal") {
    const Direction n{0.8, 2.0};
    const Vec3 z = rotation_z_to(n) * Vec3::UnitZ();
    CHECK((z - n.unit_vector()).norm() < 1e-12);
    CHECK((rotation_z_to({0.0, 0.0}) - Eigen::Matrix3d::Identity()).norm() < 1e-15);
  }

  TEST_CASE("property: unit norm, periodicity, conjugate symmetry") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, kTwoPi), pos(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + trial % 9;
      std::vector<Vec3> el;
      for (int i = 0; i < n; ++i) el.emplace_back(pos(rng), pos(rng), pos(rng));
      const ArrayLayout layout(el, 0.1 + 0.01 * trial);
      const Direction d1{th(rng), ph(rng)}, d2{th(rng), ph(rng)};
      const CVector a1 = steering_vector(layout, d1);
      const CVector a2 = steering_vector(layout, d2);
      CHECK(std::abs(a1.norm() - 1.0) < 1e-12);
      const CVector shifted = steering_vector(layout, {d1.theta, d1.phi + kTwoPi});
      CHECK((shifted - a1).norm() <= 1e-13);
      CHECK(std::abs(a1.dot(a2) - std::conj(a2.dot(a1))) < 1e-14);
    }
  }
}
