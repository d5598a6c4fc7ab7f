#include "fdisac/problem.hpp"

#include "fdisac/grq.hpp"
#include "fdisac/units.hpp"

namespace fdisac {

Problem make_problem(const Scenario& s, bool sensing_beams) {
  Problem p;
  p.scenario = s;
  p.channels = build_channels(s);
  p.noise = s.noise();
  p.sensing_beams = sensing_beams;
  return p;
}

SinrReport evaluate(const Problem& p, BeamformerSet& b) {
  const ChannelSet& ch = p.channels;
  if (b.v_c.size() != ch.num_dl() || b.v_s.size() != p.num_sensing_beams() || b.e.size() != ch.num_ul())
    throw InvalidArgument("evaluate: beamformer set does not match the problem dimensions");

  const CovarianceBundle cov = interference_covariances(ch, b, p.noise);
  assign_optimal_receivers(ch, cov, b);

  SinrReport r;
  for (std::size_t j = 0; j < ch.num_dl(); ++j) r.gamma_dl.push_back(dl_sinr(ch, b, p.noise, j));
  for (std::size_t k = 0; k < ch.num_ul(); ++k) r.gamma_ul.push_back(ul_sinr(ch, b, cov, k));
  for (std::size_t m = 0; m < b.v_s.size(); ++m) r.gamma_rad.push_back(sensing_sinr(ch, b, cov, m));

  const SumRates rates = sum_rates(r.gamma_dl, r.gamma_ul, p.scenario.rho);
  r.tau_dl = rates.tau_dl;
  r.tau_ul = rates.tau_ul;
  r.objective = rates.objective;
  fill_power_terms(b, r);
  r.residuals = constraint_residuals(p.scenario, r);
  return r;
}

}  // namespace fdisac
