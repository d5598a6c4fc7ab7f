#include "fdisac/grq.hpp"

#include "fdisac/units.hpp"

namespace fdisac {

namespace {

Eigen::LLT<CMatrix> factorize(const CMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw InvalidArgument("solve_hermitian: matrix must be square");
  Eigen::LLT<CMatrix> llt(matrix);
  if (llt.info() != Eigen::Success) throw NumericalFailure("solve_hermitian: matrix is not positive definite");
  return llt;
}

CVector unit(CVector w) {
  const double n = w.norm();
  if (n > 0.0) w /= n;
  return w;
}

}  // namespace

CVector solve_hermitian(const CMatrix& matrix, const CVector& rhs) {
  if (rhs.size() != matrix.rows()) throw InvalidArgument("solve_hermitian: dimension mismatch");
  return factorize(matrix).solve(rhs);
}

CVector optimal_sensing_rx(const CMatrix& d, const CVector& a_rx) { return unit(solve_hermitian(d, a_rx)); }

CVector optimal_ul_rx(const CMatrix& e, const CVector& g) { return unit(solve_hermitian(e, g)); }

double optimal_sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t m) {
  if (m >= b.v_s.size() || m >= cov.d_matrices.size())
    throw InvalidArgument("optimal_sensing_sinr: target index out of range");
  const CVector& a = ch.a_rx_targets[m];
  const double tx_gain = std::norm(ch.alpha[m]) * std::norm(ch.a_tx_targets[m].dot(b.v_s[m]));
  return tx_gain * std::real(a.dot(solve_hermitian(cov.d_matrices[m], a)));
}

double optimal_sensing_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t m) {
  return optimal_sensing_sinr(ch, b, interference_covariances(ch, b, noise), m);
}

double optimal_ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const CovarianceBundle& cov, std::size_t k) {
  if (k >= ch.num_ul()) throw InvalidArgument("optimal_ul_sinr: user index out of range");
  const CVector& g = ch.g[k];
  return b.e[k] * std::real(g.dot(solve_hermitian(cov.e_matrix(k), g)));
}

double optimal_ul_sinr(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise, std::size_t k) {
  return optimal_ul_sinr(ch, b, interference_covariances(ch, b, noise), k);
}

void assign_optimal_receivers(const ChannelSet& ch, const CovarianceBundle& cov, BeamformerSet& b) {
  b.w_s.clear();
  for (std::size_t m = 0; m < cov.d_matrices.size(); ++m)
    b.w_s.push_back(optimal_sensing_rx(cov.d_matrices[m], ch.a_rx_targets[m]));
  b.w_c.clear();
  for (std::size_t k = 0; k < ch.num_ul(); ++k) b.w_c.push_back(optimal_ul_rx(cov.e_matrix(k), ch.g[k]));
}

}  // namespace fdisac
