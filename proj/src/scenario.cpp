#include "fdisac/scenario.hpp"

#include <array>
#include <cmath>

#include "fdisac/units.hpp"

namespace fdisac {

namespace {

constexpr double kDefaultTheta = 20.0;  // degrees, polar

// Azimuths in degrees. Roles interleave at 45 degree spacing for the first
// two entries of each; later entries fill in halfway between.
constexpr std::array<double, 4> kTargetAzimuths{0.0, 180.0, 90.0, 270.0};
constexpr std::array<double, 4> kDlAzimuths{45.0, 225.0, 22.5, 202.5};
constexpr std::array<double, 4> kUlAzimuths{135.0, 315.0, 112.5, 292.5};

template <std::size_t N>
Direction table_direction(const std::array<double, N>& table, std::size_t index) {
  const double base = table[index % N];
  const double shift = 11.25 * static_cast<double>(index / N);
  return Direction{deg_to_rad(kDefaultTheta), deg_to_rad(base + shift)}.normalized();
}

void add(std::vector<Violation>& out, std::string code, std::string message) {
  out.push_back({std::move(code), std::move(message)});
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

Direction default_dl_direction(std::size_t index) { return table_direction(kDlAzimuths, index); }
Direction default_ul_direction(std::size_t index) { return table_direction(kUlAzimuths, index); }
Direction default_target_direction(std::size_t index) {
  return table_direction(kTargetAzimuths, index);
}

double Scenario::wavelength() const { return wavelength_from_frequency(carrier_frequency); }

NoiseModel Scenario::noise() const {
  return NoiseModel{noise_power(bandwidth, temperature, noise_figure_db),
                    noise_power(bandwidth, temperature, bs_noise_figure_db)};
}

ArrayLayout Scenario::tx_layout() const {
  const Eigen::Matrix3d rot = rotation_z_to(array_normal);
  const Vec3 axis = array_normal.unit_vector();
  return circular_layout(nt, wavelength()).transformed(rot, 0.5 * array_separation * axis);
}

ArrayLayout Scenario::rx_layout() const {
  const Eigen::Matrix3d rot = rotation_z_to(array_normal);
  const Vec3 axis = array_normal.unit_vector();
  return circular_layout(nr, wavelength()).transformed(rot, -0.5 * array_separation * axis);
}

double noise_power(double bandwidth, double temperature, double noise_figure_db) {
  if (!(bandwidth > 0.0)) throw InvalidArgument("noise_power: bandwidth must be > 0");
  if (!(temperature > 0.0)) throw InvalidArgument("noise_power: temperature must be > 0");
  if (!(noise_figure_db >= 0.0)) throw InvalidArgument("noise_power: noise figure must be >= 0 dB");
  return kBoltzmann * temperature * bandwidth * db_to_linear(noise_figure_db);
}

double reference_temperature() {
  return dbm_to_watts(-103.78) / (kBoltzmann * 10e6);
}

std::vector<Violation> validate(const Scenario& s) {
  std::vector<Violation> v;
  if (!positive_finite(s.carrier_frequency))
    add(v, "nonpositive_frequency", "carrier_frequency must be > 0");
  if (!positive_finite(s.bandwidth)) add(v, "nonpositive_bandwidth", "bandwidth must be > 0");
  if (!positive_finite(s.temperature)) add(v, "nonpositive_temperature", "temperature must be > 0");
  if (!(s.noise_figure_db >= 0.0) || !(s.bs_noise_figure_db >= 0.0))
    add(v, "negative_noise_figure", "noise figures must be >= 0 dB");
  if (s.nt < 1 || s.nr < 1) add(v, "invalid_array_size", "nt and nr must be >= 1");
  if (s.dl_users.empty() && s.ul_users.empty() && s.targets.empty())
    add(v, "no_entities", "at least one downlink user, uplink user or target is required");
  if (!(s.rho >= 0.0 && s.rho <= 1.0)) add(v, "rho_out_of_range", "rho must lie in [0, 1]");
  if (!positive_finite(s.p_max) || !positive_finite(s.p0))
    add(v, "nonpositive_power", "p_max and p0 must be > 0");

  auto check_placement = [&](const EntityPlacement& p, const std::string& who) {
    if (!positive_finite(p.distance))
      add(v, "nonpositive_distance", who + ": distance must be > 0");
    if (!std::isfinite(p.direction.theta) || !std::isfinite(p.direction.phi))
      add(v, "nonfinite_direction", who + ": direction must be finite");
  };
  for (std::size_t j = 0; j < s.dl_users.size(); ++j) {
    const std::string who = "dl_users[" + std::to_string(j) + "]";
    check_placement(s.dl_users[j].placement, who);
    if (!positive_finite(s.dl_users[j].min_sinr))
      add(v, "nonpositive_threshold", who + ": min_sinr must be > 0");
  }
  for (std::size_t k = 0; k < s.ul_users.size(); ++k) {
    const std::string who = "ul_users[" + std::to_string(k) + "]";
    check_placement(s.ul_users[k].placement, who);
    if (!positive_finite(s.ul_users[k].min_sinr))
      add(v, "nonpositive_threshold", who + ": min_sinr must be > 0");
    if (!positive_finite(s.ul_users[k].max_power))
      add(v, "nonpositive_power", who + ": max_power must be > 0");
  }
  for (std::size_t m = 0; m < s.targets.size(); ++m) {
    const std::string who = "targets[" + std::to_string(m) + "]";
    check_placement(s.targets[m].placement, who);
    if (!positive_finite(s.targets[m].min_sinr))
      add(v, "nonpositive_threshold", who + ": min_sinr must be > 0");
    if (!(s.targets[m].rcs >= 0.0) || !std::isfinite(s.targets[m].rcs))
      add(v, "negative_rcs", who + ": rcs must be >= 0");
  }

  if (!(s.si_gain >= 0.0) || !std::isfinite(s.si_gain))
    add(v, "negative_si_gain", "si_gain must be >= 0");
  if (!s.si_gain_matrix.empty()) {
    bool shape_ok = s.si_gain_matrix.size() == static_cast<std::size_t>(std::max(s.nr, 0));
    for (const auto& row : s.si_gain_matrix) {
      shape_ok = shape_ok && row.size() == static_cast<std::size_t>(std::max(s.nt, 0));
      for (double g : row) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
          add(v, "negative_si_gain", "si_gain_matrix entries must be >= 0");
          break;
        }
      }
    }
    if (!shape_ok) add(v, "si_gain_shape", "si_gain_matrix must be nr rows by nt columns");
  }
  if (!positive_finite(s.array_separation))
    add(v, "nonpositive_array_separation", "array_separation must be > 0");
  if (!(s.tdd_dl_fraction >= 0.0 && s.tdd_dl_fraction <= 1.0))
    add(v, "tdd_fraction_out_of_range", "tdd_dl_fraction must lie in [0, 1]");
  if (s.replicates < 1) add(v, "invalid_replicates", "replicates must be >= 1");
  if (!(s.placement_jitter_deg >= 0.0))
    add(v, "negative_jitter", "placement_jitter_deg must be >= 0");

  const GaParams& ga = s.ga;
  if (ga.population_size < 2) add(v, "invalid_population", "ga.population_size must be >= 2");
  if (ga.max_generations < 0) add(v, "invalid_generations", "ga.max_generations must be >= 0");
  if (ga.elite_count < 0 || ga.elite_count >= ga.population_size)
    add(v, "invalid_elite_count", "ga.elite_count must lie in [0, population_size)");
  if (!(ga.crossover_ratio >= 0.0 && ga.crossover_ratio <= 1.0))
    add(v, "crossover_ratio_out_of_range", "ga.crossover_ratio must lie in [0, 1]");
  if (!positive_finite(ga.penalty_weight))
    add(v, "nonpositive_penalty_weight", "ga.penalty_weight must be > 0");
  return v;
}

Scenario default_paper_scenario(int num_targets) {
  Scenario s;
  s.carrier_frequency = 39e9;
  s.bandwidth = 10e6;
  s.noise_figure_db = 9.0;
  s.bs_noise_figure_db = 0.0;
  s.temperature = reference_temperature();
  s.nt = 32;
  s.nr = 32;
  s.rho = 0.5;
  s.p_max = dbw_to_watts(17.0);
  s.p0 = dbw_to_watts(1.0);
  s.si_gain = db_to_linear(-110.0);
  s.array_separation = 2.0 * s.wavelength();
  for (std::size_t j = 0; j < 2; ++j)
    s.dl_users.push_back({{250.0, default_dl_direction(j)}, db_to_linear(12.0)});
  for (std::size_t k = 0; k < 2; ++k)
    s.ul_users.push_back({{200.0, default_ul_direction(k)}, db_to_linear(10.0), dbw_to_watts(1.0)});
  set_target_count(s, num_targets);
  set_sensing_threshold_db(s, 14.0);
  s.ga = GaParams{};
  s.replicates = 200;
  s.seed = 1;
  return s;
}

Scenario fast_profile_scenario(int num_targets) {
  Scenario s = default_paper_scenario(num_targets);
  s.nt = 8;
  s.nr = 8;
  // Keeps the per-beam power ceiling nt * p0 and the target gain
  // nt * nr * rcs^2 equal to the 32-element setup.
  s.p0 = dbw_to_watts(7.0);
  for (auto& t : s.targets) t.rcs = db_to_linear(20.0 * std::log10(4.0));
  s.ga.population_size = 60;
  s.ga.max_generations = 1500;
  s.replicates = 10;
  return s;
}

void set_sensing_threshold_db(Scenario& s, double mu_rad_db) {
  for (auto& t : s.targets) t.min_sinr = db_to_linear(mu_rad_db);
}

void set_target_count(Scenario& s, int num_targets) {
  if (num_targets < 0) throw InvalidArgument("set_target_count: count must be >= 0");
  const auto n = static_cast<std::size_t>(num_targets);
  Target proto{{100.0, default_target_direction(0)}, 1.0, db_to_linear(14.0)};
  if (!s.targets.empty()) proto = s.targets.front();
  while (s.targets.size() > n) s.targets.pop_back();
  while (s.targets.size() < n) {
    Target t = proto;
    t.placement.direction = default_target_direction(s.targets.size());
    s.targets.push_back(t);
  }
}

}  // namespace fdisac
