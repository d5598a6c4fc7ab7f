#include "fdisac/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "fdisac/units.hpp"

namespace fdisac {

namespace {

double quad_form(const CVector& w, const CMatrix& m) { return std::real(w.dot(m * w)); }

void check_combiner(const CVector& w, const char* what) {
  if (w.size() == 0 || w.squaredNorm() == 0.0) throw InvalidArgument(std::string(what) + ": zero receive combiner");
}

void add_rank_one(CMatrix& m, const CVector& u, double weight) {
  m.noalias() += weight * (u * u.adjoint());
}

}  // namespace

std::string to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::sensing_sinr: return "sensing_sinr";
    case ConstraintKind::dl_sinr: return "dl_sinr";
    case ConstraintKind::ul_sinr: return "ul_sinr";
    case ConstraintKind::total_power: return "total_power";
    case ConstraintKind::antenna_power: return "antenna_power";
    case ConstraintKind::ul_power: return "ul_power";
  }
  return "unknown";
}

CMatrix CovarianceBundle::e_matrix(std::size_t k) const {
  if (k >= ul_terms.size()) throw InvalidArgument("e_matrix: uplink index out of range");
  // Rebuilt from the parts instead of subtracting user k from e_common.
  CMatrix e = e_without_ul;
  for (std::size_t i = 0; i < ul_terms.size(); ++i) {
    if (i != k) e += ul_terms[i];
  }
  return e;
}

bool SinrReport::feasible() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](const Residual& r) { return r.normalized() >= -kFeasibilityTolerance; });
}

std::size_t SinrReport::violation_count() const {
  return static_cast<std::size_t>(std::count_if(residuals.begin(), residuals.end(), [](const Residual& r) {
    return r.normalized() < -kFeasibilityTolerance;
  }));
}

double transmit_power(const BeamformerSet& b) {
  double p = 0.0;
  for (const auto& v : b.v_c) p += v.squaredNorm();
  for (const auto& v : b.v_s) p += v.squaredNorm();
  return p;
}

double dl_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t j) {
  if (j >= ch.num_dl() || j >= b.v_c.size()) throw InvalidArgument("dl_sinr: user index out of range");
  const CVector& h = ch.h[j];
  const double signal = std::norm(h.dot(b.v_c[j]));
  double interference = noise.user_noise_power;
  for (std::size_t jp = 0; jp < b.v_c.size(); ++jp) {
    if (jp != j) interference += std::norm(h.dot(b.v_c[jp]));
  }
  for (const auto& vs : b.v_s) interference += std::norm(h.dot(vs));
  return signal / interference;
}

CovarianceBundle interference_covariances(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise) {
  const Eigen::Index nr = ch.nr();
  const std::size_t num_sensing = b.v_s.size();
  if (num_sensing != 0 && num_sensing != ch.num_targets())
    throw InvalidArgument("interference_covariances: sensing beams must match the target count");
  if (b.e.size() != ch.num_ul()) throw InvalidArgument("interference_covariances: uplink power count mismatch");

  // Shared by every D_m and E_k: DL echoes off all targets, SI, noise.
  CMatrix shared = noise.bs_noise_power * CMatrix::Identity(nr, nr);
  for (std::size_t m = 0; m < ch.num_targets(); ++m) {
    double illumination = 0.0;
    for (const auto& vc : b.v_c) illumination += std::norm(ch.a_tx_targets[m].dot(vc));
    add_rank_one(shared, ch.a_rx_targets[m], std::norm(ch.alpha[m]) * illumination);
  }
  for (const auto& vc : b.v_c) add_rank_one(shared, ch.h_si * vc, 1.0);
  for (const auto& vs : b.v_s) add_rank_one(shared, ch.h_si * vs, 1.0);

  CovarianceBundle cov;
  CMatrix ul_all = CMatrix::Zero(nr, nr);
  for (std::size_t k = 0; k < ch.num_ul(); ++k) {
    CMatrix term = b.e[k] * (ch.g[k] * ch.g[k].adjoint());
    ul_all += term;
    cov.ul_terms.push_back(std::move(term));
  }

  std::vector<double> echo_power(num_sensing);
  for (std::size_t m = 0; m < num_sensing; ++m)
    echo_power[m] = std::norm(ch.alpha[m]) * std::norm(ch.a_tx_targets[m].dot(b.v_s[m]));

  const CMatrix base = shared + ul_all;
  for (std::size_t m = 0; m < num_sensing; ++m) {
    CMatrix d = base;
    for (std::size_t mp = 0; mp < num_sensing; ++mp) {
      if (mp != m) add_rank_one(d, ch.a_rx_targets[mp], echo_power[mp]);
    }
    cov.d_matrices.push_back(std::move(d));
  }
  cov.e_without_ul = shared;
  for (std::size_t m = 0; m < num_sensing; ++m) add_rank_one(cov.e_without_ul, ch.a_rx_targets[m], echo_power[m]);
  cov.e_common = cov.e_without_ul + ul_all;
  return cov;
}

double sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t m) {
  if (m >= b.v_s.size() || m >= b.w_s.size() || m >= cov.d_matrices.size())
    throw InvalidArgument("sensing_sinr: target index out of range");
  const CVector& w = b.w_s[m];
  check_combiner(w, "sensing_sinr");
  const double tx_gain = std::norm(ch.alpha[m]) * std::norm(ch.a_tx_targets[m].dot(b.v_s[m]));
  const double rx_gain = std::norm(w.dot(ch.a_rx_targets[m]));
  return tx_gain * rx_gain / quad_form(w, cov.d_matrices[m]);
}

double sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t m) {
  return sensing_sinr(ch, b, interference_covariances(ch, b, noise), m);
}

double ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t k) {
  if (k >= ch.num_ul() || k >= b.w_c.size()) throw InvalidArgument("ul_sinr: user index out of range");
  const CVector& w = b.w_c[k];
  check_combiner(w, "ul_sinr");
  const double signal = b.e[k] * std::norm(w.dot(ch.g[k]));
  return signal / quad_form(w, cov.e_matrix(k));
}

double ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t k) {
  return ul_sinr(ch, b, interference_covariances(ch, b, noise), k);
}

SumRates sum_rates(const std::vector<double>& gamma_dl, const std::vector<double>& gamma_ul, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidArgument("sum_rates: rho must lie in [0, 1]");
  SumRates r;
  for (double g : gamma_dl) r.tau_dl += std::log2(1.0 + g);
  for (double g : gamma_ul) r.tau_ul += std::log2(1.0 + g);
  r.objective = rho * r.tau_dl + (1.0 - rho) * r.tau_ul;
  return r;
}

void fill_power_terms(const BeamformerSet& b, SinrReport& report) {
  report.beam_power.clear();
  report.beam_peak_power.clear();
  auto add_beam = [&](const CVector& v) {
    report.beam_power.push_back(v.squaredNorm());
    report.beam_peak_power.push_back(v.size() == 0 ? 0.0 : v.cwiseAbs2().maxCoeff());
  };
  for (const auto& v : b.v_c) add_beam(v);
  for (const auto& v : b.v_s) add_beam(v);
  report.p_tx = transmit_power(b);
  report.ul_power = b.e;
}

std::vector<Residual> constraint_residuals(const Scenario& s, const SinrReport& report) {
  std::vector<Residual> out;
  auto sinr_slack = [](double gamma, double mu) { return linear_to_db_floored(gamma) - linear_to_db(mu); };

  for (std::size_t m = 0; m < report.gamma_rad.size(); ++m)
    out.push_back({ConstraintKind::sensing_sinr, m, sinr_slack(report.gamma_rad[m], s.targets.at(m).min_sinr), 1.0});
  for (std::size_t j = 0; j < report.gamma_dl.size(); ++j)
    out.push_back({ConstraintKind::dl_sinr, j, sinr_slack(report.gamma_dl[j], s.dl_users.at(j).min_sinr), 1.0});
  for (std::size_t k = 0; k < report.gamma_ul.size(); ++k)
    out.push_back({ConstraintKind::ul_sinr, k, sinr_slack(report.gamma_ul[k], s.ul_users.at(k).min_sinr), 1.0});

  out.push_back({ConstraintKind::total_power, 0, s.p_max - report.p_tx, s.p_max});

  const bool per_element = s.antenna_constraint == AntennaConstraint::element;
  const auto& per_beam = per_element ? report.beam_peak_power : report.beam_power;
  for (std::size_t i = 0; i < per_beam.size(); ++i)
    out.push_back({ConstraintKind::antenna_power, i, s.p0 - per_beam[i], s.p0});

  for (std::size_t k = 0; k < report.ul_power.size(); ++k) {
    const double cap = s.ul_users.at(k).max_power;
    out.push_back({ConstraintKind::ul_power, k, cap - report.ul_power[k], cap});
  }
  return out;
}

}  // namespace fdisac
