#include "fdisac/channel.hpp"

#include <cmath>
#include <string>

#include "fdisac/units.hpp"

namespace fdisac {

namespace {

// (4 pi)^{3/2}
const double kFourPiPow15 = std::pow(4.0 * kPi, 1.5);

Complex path_phasor(double magnitude, double path_length, double wavelength) {
  return std::polar(magnitude, -kTwoPi * path_length / wavelength);
}

double distance_between(const Vec3& a, const Vec3& b, const std::string& what) {
  const double d = (a - b).norm();
  if (!(d > 0.0)) throw InvalidGeometry(what + ": coincident positions");
  return d;
}

}  // namespace

CVector downlink_channel(const Scenario& s, const ArrayLayout& tx, std::size_t j) {
  if (j >= s.num_dl()) throw InvalidArgument("downlink_channel: user index out of range");
  const double lambda = s.wavelength();
  const auto& user = s.dl_users[j].placement;
  const double d_bj = user.distance;
  if (!(d_bj > 0.0)) throw InvalidGeometry("downlink_channel: user coincides with the BS");

  CVector h = path_phasor(lambda / (4.0 * kPi * d_bj), d_bj, lambda) * steering_vector(tx, user.direction);
  for (std::size_t m = 0; m < s.num_targets(); ++m) {
    const auto& t = s.targets[m];
    if (t.rcs == 0.0) continue;
    const double d_bm = t.placement.distance;
    const double d_mj =
        distance_between(t.placement.position(), user.position(), "downlink_channel: target/user");
    // The scattered phase follows the published model, which references
    // both legs to the BS.
    const double mag = lambda * t.rcs / (kFourPiPow15 * d_bm * d_mj);
    h += path_phasor(mag, d_bm + d_bj, lambda) * steering_vector(tx, t.placement.direction);
  }
  return std::sqrt(static_cast<double>(tx.count())) * h;
}

CVector uplink_channel(const Scenario& s, const ArrayLayout& rx, std::size_t k) {
  if (k >= s.num_ul()) throw InvalidArgument("uplink_channel: user index out of range");
  const double lambda = s.wavelength();
  const auto& user = s.ul_users[k].placement;
  const double d_bk = user.distance;
  if (!(d_bk > 0.0)) throw InvalidGeometry("uplink_channel: user coincides with the BS");

  CVector g = path_phasor(lambda / (4.0 * kPi * d_bk), d_bk, lambda) * steering_vector(rx, user.direction);
  for (std::size_t m = 0; m < s.num_targets(); ++m) {
    const auto& t = s.targets[m];
    if (t.rcs == 0.0) continue;
    const double d_bm = t.placement.distance;
    const double d_mk =
        distance_between(t.placement.position(), user.position(), "uplink_channel: target/user");
    const double mag = lambda * t.rcs / (kFourPiPow15 * d_mk * d_bm);
    g += path_phasor(mag, d_mk + d_bm, lambda) * steering_vector(rx, t.placement.direction);
  }
  return std::sqrt(static_cast<double>(rx.count())) * g;
}

Complex target_gain(const Scenario& s, std::size_t m) {
  if (m >= s.num_targets()) throw InvalidArgument("target_gain: target index out of range");
  const auto& t = s.targets[m];
  const double d = t.placement.distance;
  if (!(d > 0.0)) throw InvalidGeometry("target_gain: target coincides with the BS");
  const double lambda = s.wavelength();
  const double mag = std::sqrt(static_cast<double>(s.nt) * static_cast<double>(s.nr)) * lambda * t.rcs /
                     (kFourPiPow15 * d * d);
  return path_phasor(mag, 2.0 * d, lambda);
}

CMatrix si_channel(const Scenario& s, const ArrayLayout& tx, const ArrayLayout& rx) {
  const double lambda = s.wavelength();
  const auto nr = static_cast<Eigen::Index>(rx.count());
  const auto nt = static_cast<Eigen::Index>(tx.count());
  const bool per_pair = !s.si_gain_matrix.empty();
  if (per_pair && (s.si_gain_matrix.size() != rx.count() || s.si_gain_matrix.front().size() != tx.count()))
    throw InvalidArgument("si_channel: si_gain_matrix must be nr x nt");
  CMatrix hsi(nr, nt);
  for (Eigen::Index a = 0; a < nr; ++a) {
    for (Eigen::Index b = 0; b < nt; ++b) {
      const double d = distance_between(rx.elements()[static_cast<std::size_t>(a)],
                                        tx.elements()[static_cast<std::size_t>(b)], "si_channel: element pair");
      const double eta = per_pair ? s.si_gain_matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                                  : s.si_gain;
      hsi(a, b) = path_phasor(std::sqrt(eta), d, lambda);
    }
  }
  return hsi;
}

ChannelSet build_channels(const Scenario& s) {
  const auto violations = validate(s);
  if (!violations.empty()) {
    std::string msg = "build_channels: invalid scenario:";
    for (const auto& v : violations) msg += " " + v.code;
    throw InvalidArgument(msg);
  }
  const ArrayLayout tx = s.tx_layout();
  const ArrayLayout rx = s.rx_layout();

  ChannelSet c;
  for (std::size_t j = 0; j < s.num_dl(); ++j) c.h.push_back(downlink_channel(s, tx, j));
  for (std::size_t k = 0; k < s.num_ul(); ++k) c.g.push_back(uplink_channel(s, rx, k));
  for (std::size_t m = 0; m < s.num_targets(); ++m) {
    const Direction& dir = s.targets[m].placement.direction;
    c.alpha.push_back(target_gain(s, m));
    c.a_tx_targets.push_back(steering_vector(tx, dir));
    c.a_rx_targets.push_back(steering_vector(rx, dir));
    c.response.push_back(c.a_rx_targets.back() * c.a_tx_targets.back().adjoint());
  }
  c.h_si = si_channel(s, tx, rx);
  return c;
}

}  // namespace fdisac
