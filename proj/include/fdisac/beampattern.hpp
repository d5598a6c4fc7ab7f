#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fdisac/array_geometry.hpp"
#include "fdisac/metrics.hpp"

namespace fdisac {

/// Expected transmit power toward `dir` over unit-power independent
/// symbols: sum of |a^H v|^2 over all DL and sensing beams.
double tx_pattern(const ArrayLayout& tx, const BeamformerSet& b, const Direction& dir);

/// |w^H a(dir)|^2.
double rx_pattern(const ArrayLayout& rx, const CVector& w, const Direction& dir);

/// Expected |w^H a_rx a_tx^H x|^2, which factorizes into rx times tx.
double two_way_pattern(const ArrayLayout& tx, const ArrayLayout& rx, const BeamformerSet& b, const CVector& w,
                       const Direction& dir);

enum class Cut { azimuth_at_theta, elevation_at_phi };

std::string to_string(Cut c);
/// Accepts "azimuth" / "azimuth_at_theta" and "elevation" / "elevation_at_phi".
Cut cut_from_string(const std::string& name);

/// An azimuth cut sweeps phi at a fixed polar angle; an elevation cut sweeps
/// a signed polar angle at a fixed azimuth, negative values pointing to
/// phi + pi.
struct CutSpec {
  Cut cut = Cut::azimuth_at_theta;
  double fixed_angle = 0.0;  // radians
  double start = 0.0;        // radians
  double stop = 0.0;         // radians, inclusive
  int resolution = 361;      // samples

  static CutSpec azimuth(double theta, int resolution = 361);
  static CutSpec elevation(double phi, int resolution = 181);

  [[nodiscard]] Direction direction(double angle) const;
};

struct PatternSample {
  double angle = 0.0;  // radians
  double p_tx_db = 0.0;
  double p_rx_db = 0.0;
  double p_two_way_db = 0.0;
};

struct PatternGrid {
  Cut cut = Cut::azimuth_at_theta;
  double fixed_angle = 0.0;
  std::vector<PatternSample> samples;
};

struct PatternPeaks {
  std::size_t main_index = 0;
  std::optional<std::size_t> secondary_index;  // highest other local maximum
};

/// Uniform sampling of the cut; every value in dB, floored at -100 dB.
/// Throws InvalidArgument for fewer than two samples or a reversed range.
PatternGrid sweep(const CutSpec& cut, const ArrayLayout& tx, const ArrayLayout& rx, const BeamformerSet& b,
                  const CVector& w);

/// Main and secondary peaks of one column of a grid.
enum class PatternColumn { tx, rx, two_way };
PatternPeaks find_peaks(const PatternGrid& grid, PatternColumn column);

/// CSV with columns cut, fixed_angle_deg, angle_deg, p_tx_db, p_rx_db,
/// p_two_way_db.
void write_pattern_csv(std::ostream& out, const PatternGrid& grid);

}  // namespace fdisac
