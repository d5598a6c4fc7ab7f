#pragma once

#include "fdisac/metrics.hpp"

namespace fdisac {

/// Solves matrix * x = rhs for Hermitian positive-definite `matrix` through a
/// Cholesky factorization. Throws NumericalFailure if the factorization fails.
CVector solve_hermitian(const CMatrix& matrix, const CVector& rhs);

/// Maximizer of the sensing quotient for target m, D^{-1} a_rx, scaled to
/// unit norm.
CVector optimal_sensing_rx(const CMatrix& d, const CVector& a_rx);

/// Maximizer of the uplink quotient, E^{-1} g, scaled to unit norm.
CVector optimal_ul_rx(const CMatrix& e, const CVector& g);

/// |alpha|^2 |a_tx^H v_s|^2 a_rx^H D^{-1} a_rx.
double optimal_sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t m);
double optimal_sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t m);

/// e_k g^H E_k^{-1} g.
double optimal_ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t k);
double optimal_ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t k);

/// Replaces b.w_s and b.w_c with the closed-form optimal combiners.
void assign_optimal_receivers(const ChannelSet& ch, const CovarianceBundle& cov, BeamformerSet& b);

}  // namespace fdisac
