#include <doctest.h>

#include <random>

#include "fdisac/grq.hpp"
#include "helpers.hpp"

using namespace fdisac;
using testing::random_cvector;
using testing::rel_err;

namespace {

CMatrix random_pd(std::mt19937_64& rng, Eigen::Index n, double floor) {
  CMatrix x(n, n);
  for (Eigen::Index c = 0; c < n; ++c) x.col(c) = random_cvector(rng, n);
  return x * x.adjoint() + floor * CMatrix::Identity(n, n);
}

double quotient(const CVector& w, const CVector& a, const CMatrix& d) {
  return std::norm(w.dot(a)) / w.dot(d * w).real();
}

}  // namespace

TEST_SUITE("grq") {
  TEST_CASE("identity covariance gives the matched filter") {
    std::mt19937_64 rng(1);
    const CVector a = random_cvector(rng, 5);
    const CVector w = optimal_sensing_rx(0.3 * CMatrix::Identity(5, 5), a);
    CHECK(std::abs(w.norm() - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(w.dot(a)) - a.norm()) < 1e-12 * a.norm());
    const CVector g = optimal_ul_rx(2.0 * CMatrix::Identity(5, 5), a);
    CHECK((g - w).norm() < 1e-14);
  }

  TEST_CASE("diagonal solve") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    CVector a(2);
    a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const CVector w = optimal_sensing_rx(d, a);
    CHECK(std::abs(w(1) / w(0) - Complex(0.5, 0.0)) < 1e-14);
  }

  TEST_CASE("sensing and uplink solvers agree on the same input") {
    std::mt19937_64 rng(2);
    const CMatrix d = random_pd(rng, 6, 0.1);
    const CVector a = random_cvector(rng, 6);
    CHECK((optimal_sensing_rx(d, a) - optimal_ul_rx(d, a)).norm() == 0.0);
  }

  TEST_CASE("failures") {
    CMatrix bad = -CMatrix::Identity(3, 3);
    CVector a = CVector::Ones(3);
    CHECK_THROWS_AS(solve_hermitian(bad, a), NumericalFailure);
    CHECK_THROWS_AS(solve_hermitian(CMatrix::Identity(3, 3), CVector::Ones(2)), InvalidArgument);
  }

  TEST_CASE("property: solve accuracy and generalized eigenvalue agreement") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      const Eigen::Index n = 2 + trial % 7;
      const CMatrix d = random_pd(rng, n, 0.05);
      const CVector a = random_cvector(rng, n);
      const CVector x = solve_hermitian(d, a);
      CHECK((d * x - a).norm() <= 1e-10 * a.norm());
      const CVector w = optimal_sensing_rx(d, a);
      Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(a * a.adjoint(), d);
      const double lmax = ges.eigenvalues().maxCoeff();
      CHECK(rel_err(quotient(w, a, d), lmax) <= 1e-9);
      CHECK(rel_err(quotient(Complex(2.0, -1.0) * w, a, d), quotient(w, a, d)) <= 1e-12);
    }
  }

  TEST_CASE("optimal sinr expressions match the quotient at the optimum") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
      Scenario s = testing::small_scenario(rng, 4 + trial % 4, 1, 2, 2);
      const auto ch = build_channels(s);
      const auto noise = s.noise();
      BeamformerSet b = testing::random_transmit(rng, s, 2);
      const auto cov = interference_covariances(ch, b, noise);
      assign_optimal_receivers(ch, cov, b);
      for (std::size_t m = 0; m < 2; ++m)
        CHECK(rel_err(sensing_sinr(ch, b, cov, m), optimal_sensing_sinr(ch, b, cov, m)) <= 1e-10);
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(rel_err(ul_sinr(ch, b, cov, k), optimal_ul_sinr(ch, b, cov, k)) <= 1e-10);

      // Random search never beats the closed form.
      for (int i = 0; i < 500; ++i) {
        BeamformerSet probe = b;
        probe.w_s[0] = random_cvector(rng, s.nr);
        probe.w_c[1] = random_cvector(rng, s.nr);
        CHECK(sensing_sinr(ch, probe, cov, 0) <= optimal_sensing_sinr(ch, b, cov, 0) * (1.0 + 1e-9));
        CHECK(ul_sinr(ch, probe, cov, 1) <= optimal_ul_sinr(ch, b, cov, 1) * (1.0 + 1e-9));
      }
    }
  }

  TEST_CASE("degenerate optimal sinrs") {
    Scenario s = default_paper_scenario(1);
    s.si_gain = 0.0;
    s.dl_users.clear();
    const auto ch = build_channels(s);
    const auto noise = s.noise();
    BeamformerSet b;
    b.v_s = {CVector::Zero(s.nt)};
    b.e = {0.0, 1.0};
    const auto cov = interference_covariances(ch, b, noise);
    CHECK(optimal_sensing_sinr(ch, b, cov, 0) == 0.0);
    CHECK(optimal_ul_sinr(ch, b, cov, 0) == 0.0);

    BeamformerSet lone;
    lone.v_s = {ch.a_tx_targets[0] * 2.0};
    lone.e = {0.0, 0.0};
    const double expect = std::norm(ch.alpha[0]) * 4.0 / noise.bs_noise_power;
    CHECK(optimal_sensing_sinr(ch, lone, noise, 0) == doctest::Approx(expect).epsilon(1e-12));
    BeamformerSet up;
    up.v_s = {CVector::Zero(s.nt)};
    up.e = {0.7, 0.0};
    CHECK(optimal_ul_sinr(ch, up, noise, 0) ==
          doctest::Approx(0.7 * ch.g[0].squaredNorm() / noise.bs_noise_power).epsilon(1e-12));
  }
}
