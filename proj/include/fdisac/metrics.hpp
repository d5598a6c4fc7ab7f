#pragma once

#include <string>
#include <vector>

#include "fdisac/channel.hpp"
#include "fdisac/scenario.hpp"

namespace fdisac {

/// Decision variables. v_s and w_s are either empty (sensing disabled; the
/// targets then act only as scatterers) or sized to the channel's targets.
struct BeamformerSet {
  std::vector<CVector> v_c;  // downlink transmit beams, length nt
  std::vector<CVector> v_s;  // sensing transmit beams, length nt
  std::vector<double> e;     // uplink powers, watts
  std::vector<CVector> w_c;  // uplink receive combiners, length nr
  std::vector<CVector> w_s;  // sensing receive combiners, length nr
};

/// Interference-plus-noise covariances at the BS receiver for one candidate.
struct CovarianceBundle {
  std::vector<CMatrix> d_matrices;  // one per sensing beam
  CMatrix e_common;                 // uplink covariance including every UL user
  std::vector<CMatrix> ul_terms;    // e_k g_k g_k^H
  CMatrix e_without_ul;             // e_common minus every ul_terms entry

  /// Covariance seen by uplink user k: e_common without user k's own term.
  [[nodiscard]] CMatrix e_matrix(std::size_t k) const;
};

enum class ConstraintKind { sensing_sinr, dl_sinr, ul_sinr, total_power, antenna_power, ul_power };

std::string to_string(ConstraintKind kind);

/// Signed slack of one constraint; slack >= 0 means satisfied. SINR slacks
/// are in dB with scale 1, power slacks in watts with scale = the bound.
struct Residual {
  ConstraintKind kind;
  std::size_t index;
  double slack;
  double scale;

  [[nodiscard]] double normalized() const { return slack / scale; }
};

// Tolerance on normalized slacks when declaring a candidate feasible; it only
// absorbs rounding when a gene sits exactly on its bound.
inline constexpr double kFeasibilityTolerance = 1e-9;

struct SinrReport {
  std::vector<double> gamma_dl;
  std::vector<double> gamma_ul;
  std::vector<double> gamma_rad;
  double tau_dl = 0.0;
  double tau_ul = 0.0;
  double objective = 0.0;
  double p_tx = 0.0;
  std::vector<double> beam_power;       // ||v||^2, downlink beams then sensing beams
  std::vector<double> beam_peak_power;  // max_n |v[n]|^2, same order
  std::vector<double> ul_power;         // e_k
  std::vector<Residual> residuals;

  [[nodiscard]] double sum_rate() const { return tau_dl + tau_ul; }
  [[nodiscard]] bool feasible() const;
  [[nodiscard]] std::size_t violation_count() const;
};

struct SumRates {
  double tau_dl = 0.0;
  double tau_ul = 0.0;
  double objective = 0.0;
};

double transmit_power(const BeamformerSet& b);

double dl_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t j);

CovarianceBundle interference_covariances(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise);

/// Sensing SINR of target m with the combiner b.w_s[m].
double sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t m);
double sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t m);

/// Uplink SINR of user k with the combiner b.w_c[k].
double ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t k);
double ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t k);

SumRates sum_rates(const std::vector<double>& gamma_dl, const std::vector<double>& gamma_ul, double rho);

/// Fills residuals for every constraint that applies to `report`: one SINR
/// constraint per reported SINR, the total power budget, the per-antenna
/// limit of each beam and each uplink power cap.
std::vector<Residual> constraint_residuals(const Scenario& s, const SinrReport& report);

/// Transmit-side fields of a report (power bookkeeping) for `b`.
void fill_power_terms(const BeamformerSet& b, SinrReport& report);

}  // namespace fdisac
