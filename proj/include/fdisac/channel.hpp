#pragma once

#include <vector>

#include "fdisac/array_geometry.hpp"
#include "fdisac/scenario.hpp"

namespace fdisac {

/// Every propagation quantity of one scenario. Immutable once built.
struct ChannelSet {
  std::vector<CVector> h;             // downlink channels, length nt each
  std::vector<CVector> g;             // uplink channels, length nr each
  std::vector<Complex> alpha;         // target gains
  std::vector<CVector> a_tx_targets;  // transmit steering toward each target
  std::vector<CVector> a_rx_targets;  // receive steering toward each target
  std::vector<CMatrix> response;      // a_rx a_tx^H per target, nr x nt
  CMatrix h_si;                       // self-interference, nr x nt

  [[nodiscard]] std::size_t num_dl() const { return h.size(); }
  [[nodiscard]] std::size_t num_ul() const { return g.size(); }
  [[nodiscard]] std::size_t num_targets() const { return alpha.size(); }
  [[nodiscard]] Eigen::Index nt() const { return h_si.cols(); }
  [[nodiscard]] Eigen::Index nr() const { return h_si.rows(); }
};

/// Line-of-sight path to user j plus one scattered path per target.
CVector downlink_channel(const Scenario& s, const ArrayLayout& tx, std::size_t j);

/// Uplink counterpart of downlink_channel on the receive array.
CVector uplink_channel(const Scenario& s, const ArrayLayout& rx, std::size_t k);

/// Round-trip gain of target m including both array gains and its RCS.
Complex target_gain(const Scenario& s, std::size_t m);

/// Element-pair coupling between the two arrays, nr x nt.
CMatrix si_channel(const Scenario& s, const ArrayLayout& tx, const ArrayLayout& rx);

/// Assembles the full channel set. Throws InvalidArgument when the scenario
/// does not validate and InvalidGeometry for coincident positions.
ChannelSet build_channels(const Scenario& s);

}  // namespace fdisac
