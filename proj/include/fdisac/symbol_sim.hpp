#pragma once

#include <cstdint>
#include <vector>

#include "fdisac/metrics.hpp"

namespace fdisac {

/// Monte-Carlo estimates from explicit symbol draws.
struct SymbolSimResult {
  std::vector<double> gamma_dl;
  std::vector<double> gamma_ul;
  std::vector<double> gamma_rad;
  // Sample covariance of everything but the wanted echo at the BS, per target.
  std::vector<CMatrix> d_empirical;
  // Sample covariance of everything but the wanted uplink signal, per user.
  std::vector<CMatrix> e_empirical;
  std::size_t draws = 0;
};

/// Draws i.i.d. unit-power circular Gaussian symbols c_j, s_m, t_k and
/// Gaussian noise, forms the received signal at every DL user and at the BS,
/// and measures signal and interference powers after the combiners in `b`.
///
/// The echo path and the SI path are driven by independent realizations of
/// the transmit signal x: the echoes arrive several symbol periods after the
/// direct leakage, so the two are uncorrelated at the receiver. Every target
/// reflects the complete x; with more than one target the cross reflections
/// (target m' echoing beam m) are therefore present in the samples.
SymbolSimResult simulate_symbols(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise,
                                 std::size_t num_draws, std::uint64_t seed);

}  // namespace fdisac
