#include "fdisac/beampattern.hpp"

#include <cmath>
#include <iomanip>

#include "fdisac/units.hpp"

namespace fdisac {

double tx_pattern(const ArrayLayout& tx, const BeamformerSet& b, const Direction& dir) {
  const CVector a = steering_vector(tx, dir);
  double p = 0.0;
  for (const auto& v : b.v_c) p += std::norm(a.dot(v));
  for (const auto& v : b.v_s) p += std::norm(a.dot(v));
  return p;
}

double rx_pattern(const ArrayLayout& rx, const CVector& w, const Direction& dir) {
  if (static_cast<std::size_t>(w.size()) != rx.count())
    throw InvalidArgument("rx_pattern: combiner length does not match the receive array");
  return std::norm(w.dot(steering_vector(rx, dir)));
}

double two_way_pattern(const ArrayLayout& tx, const ArrayLayout& rx, const BeamformerSet& b, const CVector& w,
                       const Direction& dir) {
  return rx_pattern(rx, w, dir) * tx_pattern(tx, b, dir);
}

std::string to_string(Cut c) {
  return c == Cut::azimuth_at_theta ? "azimuth_at_theta" : "elevation_at_phi";
}

Cut cut_from_string(const std::string& name) {
  if (name == "azimuth" || name == "azimuth_at_theta") return Cut::azimuth_at_theta;
  if (name == "elevation" || name == "elevation_at_phi") return Cut::elevation_at_phi;
  throw InvalidArgument("unknown cut '" + name + "' (expected azimuth or elevation)");
}

CutSpec CutSpec::azimuth(double theta, int resolution) {
  return CutSpec{Cut::azimuth_at_theta, theta, 0.0, kTwoPi, resolution};
}

CutSpec CutSpec::elevation(double phi, int resolution) {
  return CutSpec{Cut::elevation_at_phi, phi, -kPi / 2.0, kPi / 2.0, resolution};
}

Direction CutSpec::direction(double angle) const {
  if (cut == Cut::azimuth_at_theta) return Direction{fixed_angle, angle}.normalized();
  return Direction{angle, fixed_angle}.normalized();
}

PatternGrid sweep(const CutSpec& cut, const ArrayLayout& tx, const ArrayLayout& rx, const BeamformerSet& b,
                  const CVector& w) {
  if (cut.resolution < 2) throw InvalidArgument("sweep: resolution must be at least 2 samples");
  if (!(cut.stop > cut.start)) throw InvalidArgument("sweep: stop angle must exceed start angle");
  PatternGrid grid;
  grid.cut = cut.cut;
  grid.fixed_angle = cut.fixed_angle;
  grid.samples.reserve(static_cast<std::size_t>(cut.resolution));
  const double step = (cut.stop - cut.start) / (cut.resolution - 1);
  for (int i = 0; i < cut.resolution; ++i) {
    const double angle = i + 1 == cut.resolution ? cut.stop : cut.start + i * step;
    const Direction dir = cut.direction(angle);
    const double ptx = tx_pattern(tx, b, dir);
    const double prx = rx_pattern(rx, w, dir);
    grid.samples.push_back(
        {angle, linear_to_db_floored(ptx), linear_to_db_floored(prx), linear_to_db_floored(ptx * prx)});
  }
  return grid;
}

namespace {

double column_value(const PatternSample& s, PatternColumn c) {
  switch (c) {
    case PatternColumn::tx: return s.p_tx_db;
    case PatternColumn::rx: return s.p_rx_db;
    case PatternColumn::two_way: return s.p_two_way_db;
  }
  return s.p_two_way_db;
}

}  // namespace

PatternPeaks find_peaks(const PatternGrid& grid, PatternColumn column) {
  if (grid.samples.empty()) throw InvalidArgument("find_peaks: empty grid");
  const auto& s = grid.samples;
  // A full azimuth circle repeats its first sample at the end; drop the
  // duplicate and let neighbours wrap around.
  const bool circular = grid.cut == Cut::azimuth_at_theta && s.size() > 2 &&
                        s.back().angle - s.front().angle >= kTwoPi - 1e-9;
  const std::size_t n = circular ? s.size() - 1 : s.size();
  auto value = [&](std::size_t i) { return column_value(s[i], column); };
  PatternPeaks peaks;
  for (std::size_t i = 1; i < n; ++i) {
    if (value(i) > value(peaks.main_index)) peaks.main_index = i;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (i == peaks.main_index) continue;
    const double v = value(i);
    bool left_ok = true;
    bool right_ok = true;
    if (i > 0 || circular) left_ok = v >= value(i > 0 ? i - 1 : n - 1);
    if (i + 1 < n || circular) right_ok = v > value(i + 1 < n ? i + 1 : 0);
    if (!left_ok || !right_ok) continue;
    if (!peaks.secondary_index || v > value(*peaks.secondary_index)) peaks.secondary_index = i;
  }
  return peaks;
}

void write_pattern_csv(std::ostream& out, const PatternGrid& grid) {
  out << "cut,fixed_angle_deg,angle_deg,p_tx_db,p_rx_db,p_two_way_db\n";
  const auto old_precision = out.precision();
  out << std::setprecision(10);
  for (const auto& s : grid.samples) {
    out << to_string(grid.cut) << ',' << rad_to_deg(grid.fixed_angle) << ',' << rad_to_deg(s.angle) << ','
        << s.p_tx_db << ',' << s.p_rx_db << ',' << s.p_two_way_db << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fdisac
