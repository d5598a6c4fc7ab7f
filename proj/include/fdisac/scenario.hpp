#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdisac/array_geometry.hpp"

namespace fdisac {

/// Position of a user or target relative to the base station, which sits at
/// the origin between its transmit and receive arrays.
struct EntityPlacement {
  double distance = 1.0;  // meters
  Direction direction;

  [[nodiscard]] Vec3 position() const { return distance * direction.unit_vector(); }
  bool operator==(const EntityPlacement&) const = default;
};

struct DownlinkUser {
  EntityPlacement placement;
  double min_sinr = 1.0;  // linear
  bool operator==(const DownlinkUser&) const = default;
};

struct UplinkUser {
  EntityPlacement placement;
  double min_sinr = 1.0;   // linear
  double max_power = 1.0;  // watts
  bool operator==(const UplinkUser&) const = default;
};

struct Target {
  EntityPlacement placement;
  double rcs = 1.0;       // m^2
  double min_sinr = 1.0;  // linear
  bool operator==(const Target&) const = default;
};

struct GaParams {
  int population_size = 200;
  int max_generations = 50;
  int elite_count = 10;
  double crossover_ratio = 0.8;
  double penalty_weight = 10.0;
  std::uint64_t seed = 0;
  // Blend phase genes along the shorter arc instead of as plain reals.
  bool wrap_aware_phase = false;
  bool operator==(const GaParams&) const = default;
};

/// How the per-antenna power limit P0 is enforced on each transmit beam.
enum class AntennaConstraint {
  element,    // |v[n]|^2 <= P0 for every element of every beam
  beam_norm,  // ||v||^2 <= P0 for every beam
};

struct NoiseModel {
  double user_noise_power = 0.0;  // watts
  double bs_noise_power = 0.0;    // watts
};

struct Scenario {
  double carrier_frequency = 39e9;   // Hz
  double bandwidth = 10e6;           // Hz
  double noise_figure_db = 9.0;      // applied at the users
  double bs_noise_figure_db = 0.0;   // applied at the BS receiver
  double temperature = 290.0;        // kelvin
  int nt = 32;
  int nr = 32;
  std::vector<DownlinkUser> dl_users;
  std::vector<UplinkUser> ul_users;
  std::vector<Target> targets;
  double rho = 0.5;
  double p_max = 1.0;  // watts
  double p0 = 1.0;     // watts
  AntennaConstraint antenna_constraint = AntennaConstraint::element;
  double si_gain = 1e-11;  // linear, applied to every element pair
  // Optional per-pair gains, nr rows by nt columns. Overrides si_gain.
  std::vector<std::vector<double>> si_gain_matrix;
  double array_separation = 0.0;  // meters, along the array normal
  Direction array_normal;         // +z by default
  double tdd_dl_fraction = 0.5;   // time share of the DL slot in the TDD baseline
  int replicates = 1;
  bool randomize_placements = false;
  double placement_jitter_deg = 5.0;
  GaParams ga;
  std::uint64_t seed = 1;

  [[nodiscard]] std::size_t num_dl() const { return dl_users.size(); }
  [[nodiscard]] std::size_t num_ul() const { return ul_users.size(); }
  [[nodiscard]] std::size_t num_targets() const { return targets.size(); }
  [[nodiscard]] double wavelength() const;
  [[nodiscard]] NoiseModel noise() const;

  /// Transmit and receive arrays as placed in the world frame: two coaxial
  /// circles, separated by array_separation along array_normal and centred
  /// on the BS origin.
  [[nodiscard]] ArrayLayout tx_layout() const;
  [[nodiscard]] ArrayLayout rx_layout() const;

  bool operator==(const Scenario&) const = default;
};

struct Violation {
  std::string code;
  std::string message;
};

/// Every invariant violation of `s`; empty means the scenario is usable.
std::vector<Violation> validate(const Scenario& s);

/// k_B * T * B scaled by the linear noise figure, in watts.
double noise_power(double bandwidth, double temperature, double noise_figure_db);

/// Temperature at which thermal noise over 10 MHz is exactly -103.78 dBm.
double reference_temperature();

/// 32 + 32 element circular arrays at 39 GHz with J = K = 2 users and
/// `num_targets` targets (1..4), GA settings from the published setup.
Scenario default_paper_scenario(int num_targets = 1);

/// Desk-scale variant: 8 + 8 elements, population 60 run for 1500
/// generations, and a link budget rebalanced so the sensing thresholds stay
/// reachable with the smaller arrays (see README).
Scenario fast_profile_scenario(int num_targets = 1);

/// Sets every target's minimum sensing SINR.
void set_sensing_threshold_db(Scenario& s, double mu_rad_db);

/// Truncates or extends the target list using the default angular table.
void set_target_count(Scenario& s, int num_targets);

/// Direction of the i-th entry of the default angular table for each role.
Direction default_dl_direction(std::size_t index);
Direction default_ul_direction(std::size_t index);
Direction default_target_direction(std::size_t index);

}  // namespace fdisac
