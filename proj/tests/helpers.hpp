#pragma once

#include <random>

#include "fdisac/ga.hpp"
#include "fdisac/scenario.hpp"
#include "fdisac/units.hpp"

namespace fdisac::testing {

// Small scenario with random placements; used by the property tests.
inline Scenario small_scenario(std::mt19937_64& rng, int n, int dl, int ul, int targets) {
  Scenario s = default_paper_scenario(0);
  s.nt = n;
  s.nr = n;
  std::uniform_real_distribution<double> theta(0.2, 1.2), phi(0.0, kTwoPi), dist(60.0, 250.0);
  auto place = [&] { return EntityPlacement{dist(rng), Direction{theta(rng), phi(rng)}}; };
  s.dl_users.clear();
  s.ul_users.clear();
  s.targets.clear();
  for (int j = 0; j < dl; ++j) s.dl_users.push_back({place(), db_to_linear(12.0)});
  for (int k = 0; k < ul; ++k) s.ul_users.push_back({place(), db_to_linear(10.0), dbw_to_watts(1.0)});
  for (int m = 0; m < targets; ++m) s.targets.push_back({place(), 1.0, db_to_linear(14.0)});
  return s;
}

inline CVector random_cvector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * Complex(g(rng), g(rng));
  return v;
}

// Random transmit side at roughly the per-element power p0.
inline BeamformerSet random_transmit(std::mt19937_64& rng, const Scenario& s, std::size_t sensing_beams) {
  BeamformerSet b;
  const double scale = std::sqrt(s.p0 / 2.0);
  for (std::size_t j = 0; j < s.num_dl(); ++j) b.v_c.push_back(random_cvector(rng, s.nt, scale));
  for (std::size_t m = 0; m < sensing_beams; ++m) b.v_s.push_back(random_cvector(rng, s.nt, scale));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& user : s.ul_users) b.e.push_back(u(rng) * user.max_power);
  return b;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace fdisac::testing
