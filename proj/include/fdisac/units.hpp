#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fdisac {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kBoltzmann = 1.380649e-23;    // J/K
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Floor used wherever a linear power is shown in dB.
inline constexpr double kDbFloor = -100.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double linear_to_db_floored(double linear, double floor_db = kDbFloor) {
  if (!(linear > 0.0)) return floor_db;
  const double db = linear_to_db(linear);
  return db < floor_db ? floor_db : db;
}

inline double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }
inline double watts_to_dbm(double watts) { return linear_to_db(watts) + 30.0; }
inline double dbw_to_watts(double dbw) { return db_to_linear(dbw); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

inline double wavelength_from_frequency(double hz) { return kSpeedOfLight / hz; }

// Error categories surfaced by the library. All derive from the standard
// exception types so callers can catch them generically.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidGeometry : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fdisac
