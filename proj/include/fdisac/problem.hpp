#pragma once

#include "fdisac/channel.hpp"
#include "fdisac/metrics.hpp"
#include "fdisac/scenario.hpp"

namespace fdisac {

/// One optimization instance: the scenario, its channels and noise, and
/// whether dedicated sensing beams are part of the decision variables. With
/// sensing disabled the targets still scatter but carry no beams and no
/// sensing constraints.
struct Problem {
  Scenario scenario;
  ChannelSet channels;
  NoiseModel noise;
  bool sensing_beams = true;

  [[nodiscard]] std::size_t num_sensing_beams() const { return sensing_beams ? scenario.num_targets() : 0; }
};

Problem make_problem(const Scenario& s, bool sensing_beams = true);

/// Assigns the closed-form receivers to `b` and returns the full report:
/// SINRs, rates, powers and constraint residuals.
SinrReport evaluate(const Problem& p, BeamformerSet& b);

}  // namespace fdisac
