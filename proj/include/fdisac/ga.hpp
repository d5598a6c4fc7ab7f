#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fdisac/problem.hpp"

namespace fdisac {

using Rng = std::mt19937_64;

/// Real-valued genes: [amplitudes of DL beams | amplitudes of sensing beams |
/// phases of DL beams | phases of sensing beams | uplink powers].
struct Chromosome {
  std::vector<double> genes;
  bool operator==(const Chromosome&) const = default;
};

enum class GeneKind { amplitude, phase, power };

/// Index arithmetic and bounds of the gene vector for one problem shape.
class GeneLayout {
 public:
  GeneLayout(std::size_t num_dl, std::size_t num_sensing, std::size_t num_ul, std::size_t nt, double p0,
             std::vector<double> ul_caps);
  explicit GeneLayout(const Problem& p);

  [[nodiscard]] std::size_t size() const { return 2 * (num_dl_ + num_sensing_) * nt_ + num_ul_; }
  [[nodiscard]] std::size_t num_dl() const { return num_dl_; }
  [[nodiscard]] std::size_t num_sensing() const { return num_sensing_; }
  [[nodiscard]] std::size_t num_ul() const { return num_ul_; }
  [[nodiscard]] std::size_t nt() const { return nt_; }

  /// Beam index b counts DL beams first, then sensing beams.
  [[nodiscard]] std::size_t amplitude(std::size_t beam, std::size_t n) const { return beam * nt_ + n; }
  [[nodiscard]] std::size_t phase(std::size_t beam, std::size_t n) const {
    return (num_dl_ + num_sensing_ + beam) * nt_ + n;
  }
  [[nodiscard]] std::size_t power(std::size_t k) const { return 2 * (num_dl_ + num_sensing_) * nt_ + k; }

  [[nodiscard]] GeneKind kind(std::size_t gene) const;
  /// Closed lower bound. Amplitude and power upper bounds are closed, the
  /// phase upper bound 2 pi is open.
  [[nodiscard]] double lower(std::size_t gene) const;
  [[nodiscard]] double upper(std::size_t gene) const;
  [[nodiscard]] bool in_bounds(std::size_t gene, double value) const;
  [[nodiscard]] bool in_bounds(const Chromosome& c) const;

  /// Uniform draw from the interval of `gene`.
  double sample(std::size_t gene, Rng& rng) const;
  /// Moves a value that left its interval by rounding back inside it.
  [[nodiscard]] double clamp(std::size_t gene, double value) const;

 private:
  std::size_t num_dl_;
  std::size_t num_sensing_;
  std::size_t num_ul_;
  std::size_t nt_;
  double amplitude_cap_;
  std::vector<double> ul_caps_;
};

struct EvaluatedCandidate {
  Chromosome chromosome;
  BeamformerSet beamformers;
  SinrReport report;
  double fitness = 0.0;
};

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;  // best of the current population
  double mean_fitness = 0.0;
  std::size_t best_violations = 0;
  std::size_t infeasible_count = 0;
};

struct GaResult {
  EvaluatedCandidate best;  // feasible candidates rank above infeasible ones
  std::vector<GenerationStats> trace;
  bool feasible = false;
  std::size_t evaluations = 0;
};

/// Polar split of every transmit beam plus the uplink powers.
Chromosome encode(const BeamformerSet& b, const GeneLayout& layout);

/// Transmit beams v[n] = amplitude * exp(i phase) and uplink powers; receive
/// combiners are left empty. Throws InvalidArgument on an out-of-bounds gene.
BeamformerSet decode_transmit(const Chromosome& c, const GeneLayout& layout);

/// decode_transmit followed by the closed-form receivers.
BeamformerSet decode(const Chromosome& c, const Problem& p);

/// Objective minus penalty_weight * sum of squared normalized violations.
double fitness(const SinrReport& report, double penalty_weight);

EvaluatedCandidate evaluate_candidate(const Chromosome& c, const Problem& p, const GeneLayout& layout,
                                      double penalty_weight);

/// Binary tournament: two uniform draws (with replacement), the fitter one
/// wins and the first draw wins ties. Returns the population index.
std::size_t tournament_select(std::span<const EvaluatedCandidate> population, Rng& rng);

/// Gene-wise blend child = zeta * mother + (1 - zeta) * father with the
/// given per-gene weights.
Chromosome blend(const Chromosome& mother, const Chromosome& father, std::span<const double> zeta);

/// Scattered crossover with zeta ~ U[0, 1] drawn per gene. With `layout`
/// and wrap_aware set, phase genes blend along the shorter arc.
Chromosome crossover(const Chromosome& mother, const Chromosome& father, Rng& rng, const GeneLayout& layout,
                     bool wrap_aware = false);

/// Copy of `parent` with one uniformly chosen gene redrawn from its interval.
Chromosome mutate(const Chromosome& parent, const GeneLayout& layout, Rng& rng);

Chromosome random_chromosome(const GeneLayout& layout, Rng& rng);

/// Generational GA with elitism. Generation 0 is the random initial
/// population; params.max_generations further generations follow.
GaResult evolve(const Problem& p, const GaParams& params);

/// True when a ranks strictly above b for best-candidate bookkeeping.
bool better_candidate(const EvaluatedCandidate& a, const EvaluatedCandidate& b);

}  // namespace fdisac
