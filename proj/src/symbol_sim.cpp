#include "fdisac/symbol_sim.hpp"

#include <random>

#include "fdisac/units.hpp"

namespace fdisac {

namespace {

class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed), normal_(0.0, std::sqrt(0.5)) {}

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex draw(double variance = 1.0) {
    const double s = std::sqrt(variance);
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return s * Complex(re, im);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

}  // namespace

SymbolSimResult simulate_symbols(const ChannelSet& ch, const BeamformerSet& b, const NoiseModel& noise,
                                 std::size_t num_draws, std::uint64_t seed) {
  if (num_draws < 1) throw InvalidArgument("simulate_symbols: num_draws must be >= 1");
  const std::size_t J = b.v_c.size();
  const std::size_t Ms = b.v_s.size();
  const std::size_t K = ch.num_ul();
  const std::size_t M = ch.num_targets();
  const Eigen::Index nr = ch.nr();
  if (J != ch.num_dl() || (Ms != 0 && Ms != M) || b.e.size() != K)
    throw InvalidArgument("simulate_symbols: beamformer set does not match the channels");
  if (b.w_s.size() != Ms || b.w_c.size() != K)
    throw InvalidArgument("simulate_symbols: receive combiners missing");

  // Beam-domain responses, so each draw only combines scalars and vectors.
  // dl_gain(j, i): h_j^H times transmit beam i (DL beams first, then sensing).
  const std::size_t B = J + Ms;
  auto beam = [&](std::size_t i) -> const CVector& { return i < J ? b.v_c[i] : b.v_s[i - J]; };
  Eigen::MatrixXcd dl_gain(static_cast<Eigen::Index>(J), static_cast<Eigen::Index>(B));
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t i = 0; i < B; ++i) dl_gain(j, i) = ch.h[j].dot(beam(i));
  // Echo of beam i off target m at the BS: alpha_m a_rx_m (a_tx_m^H v_i).
  std::vector<std::vector<CVector>> echo(M, std::vector<CVector>(B));
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t i = 0; i < B; ++i)
      echo[m][i] = ch.alpha[m] * ch.a_tx_targets[m].dot(beam(i)) * ch.a_rx_targets[m];
  std::vector<CVector> leak(B);
  for (std::size_t i = 0; i < B; ++i) leak[i] = ch.h_si * beam(i);
  std::vector<CVector> ul(K);
  for (std::size_t k = 0; k < K; ++k) ul[k] = std::sqrt(b.e[k]) * ch.g[k];

  GaussianSource src(seed);
  std::vector<double> dl_sig(J, 0.0), dl_int(J, 0.0);
  std::vector<double> ul_sig(K, 0.0), ul_int(K, 0.0);
  std::vector<double> rad_sig(Ms, 0.0), rad_int(Ms, 0.0);
  std::vector<CMatrix> d_acc(Ms, CMatrix::Zero(nr, nr));
  std::vector<CMatrix> e_acc(K, CMatrix::Zero(nr, nr));

  std::vector<Complex> sym_echo(B), sym_leak(B), t(K);
  CVector y(nr), wanted(nr), rest(nr);
  for (std::size_t n = 0; n < num_draws; ++n) {
    for (std::size_t i = 0; i < B; ++i) sym_echo[i] = src.draw();
    for (std::size_t i = 0; i < B; ++i) sym_leak[i] = src.draw();
    for (std::size_t k = 0; k < K; ++k) t[k] = src.draw();

    // Downlink users see the current symbols (the leakage realization).
    for (std::size_t j = 0; j < J; ++j) {
      Complex total = src.draw(noise.user_noise_power);
      for (std::size_t i = 0; i < B; ++i) total += dl_gain(j, i) * sym_leak[i];
      const Complex sig = dl_gain(j, j) * sym_leak[j];
      dl_sig[j] += std::norm(sig);
      dl_int[j] += std::norm(total - sig);
    }

    for (Eigen::Index r = 0; r < nr; ++r) y(r) = src.draw(noise.bs_noise_power);
    for (std::size_t k = 0; k < K; ++k) y += ul[k] * t[k];
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t i = 0; i < B; ++i) y += echo[m][i] * sym_echo[i];
    for (std::size_t i = 0; i < B; ++i) y += leak[i] * sym_leak[i];

    for (std::size_t m = 0; m < Ms; ++m) {
      wanted = echo[m][J + m] * sym_echo[J + m];
      rest = y - wanted;
      const CVector& w = b.w_s[m];
      rad_sig[m] += std::norm(w.dot(wanted));
      rad_int[m] += std::norm(w.dot(rest));
      d_acc[m].noalias() += rest * rest.adjoint();
    }
    for (std::size_t k = 0; k < K; ++k) {
      wanted = ul[k] * t[k];
      rest = y - wanted;
      const CVector& w = b.w_c[k];
      ul_sig[k] += std::norm(w.dot(wanted));
      ul_int[k] += std::norm(w.dot(rest));
      e_acc[k].noalias() += rest * rest.adjoint();
    }
  }

  SymbolSimResult out;
  out.draws = num_draws;
  const double inv = 1.0 / static_cast<double>(num_draws);
  for (std::size_t j = 0; j < J; ++j) out.gamma_dl.push_back(dl_sig[j] / dl_int[j]);
  for (std::size_t k = 0; k < K; ++k) {
    out.gamma_ul.push_back(ul_sig[k] / ul_int[k]);
    out.e_empirical.push_back(e_acc[k] * inv);
  }
  for (std::size_t m = 0; m < Ms; ++m) {
    out.gamma_rad.push_back(rad_sig[m] / rad_int[m]);
    out.d_empirical.push_back(d_acc[m] * inv);
  }
  return out;
}

}  // namespace fdisac
