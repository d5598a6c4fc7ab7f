#include "fdisac/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fdisac/grq.hpp"
#include "fdisac/units.hpp"

namespace fdisac {

namespace {

// Largest double strictly below 2 pi; phase genes never reach 2 pi itself.
const double kPhaseMax = std::nextafter(kTwoPi, 0.0);

double wrap_phase(double x) {
  double w = std::fmod(x, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}

}  // namespace

GeneLayout::GeneLayout(std::size_t num_dl, std::size_t num_sensing, std::size_t num_ul, std::size_t nt, double p0,
                       std::vector<double> ul_caps)
    : num_dl_(num_dl),
      num_sensing_(num_sensing),
      num_ul_(num_ul),
      nt_(nt),
      amplitude_cap_(std::sqrt(p0)),
      ul_caps_(std::move(ul_caps)) {
  if (ul_caps_.size() != num_ul_) throw InvalidArgument("GeneLayout: one power cap per uplink user required");
  if (!(p0 > 0.0)) throw InvalidArgument("GeneLayout: p0 must be > 0");
}

GeneLayout::GeneLayout(const Problem& p)
    : GeneLayout(p.scenario.num_dl(), p.num_sensing_beams(), p.scenario.num_ul(),
                 static_cast<std::size_t>(p.scenario.nt), p.scenario.p0, [&] {
                   std::vector<double> caps;
                   for (const auto& u : p.scenario.ul_users) caps.push_back(u.max_power);
                   return caps;
                 }()) {}

GeneKind GeneLayout::kind(std::size_t gene) const {
  const std::size_t block = (num_dl_ + num_sensing_) * nt_;
  if (gene < block) return GeneKind::amplitude;
  if (gene < 2 * block) return GeneKind::phase;
  if (gene < size()) return GeneKind::power;
  throw InvalidArgument("GeneLayout: gene index out of range");
}

double GeneLayout::lower(std::size_t) const { return 0.0; }

double GeneLayout::upper(std::size_t gene) const {
  switch (kind(gene)) {
    case GeneKind::amplitude: return amplitude_cap_;
    case GeneKind::phase: return kTwoPi;
    case GeneKind::power: return ul_caps_[gene - 2 * (num_dl_ + num_sensing_) * nt_];
  }
  return 0.0;
}

bool GeneLayout::in_bounds(std::size_t gene, double value) const {
  if (!std::isfinite(value) || value < 0.0) return false;
  if (kind(gene) == GeneKind::phase) return value < kTwoPi;
  return value <= upper(gene);
}

bool GeneLayout::in_bounds(const Chromosome& c) const {
  if (c.genes.size() != size()) return false;
  for (std::size_t i = 0; i < c.genes.size(); ++i) {
    if (!in_bounds(i, c.genes[i])) return false;
  }
  return true;
}

double GeneLayout::sample(std::size_t gene, Rng& rng) const {
  const double hi = upper(gene);
  std::uniform_real_distribution<double> dist(0.0, hi);
  return clamp(gene, dist(rng));
}

double GeneLayout::clamp(std::size_t gene, double value) const {
  if (kind(gene) == GeneKind::phase) return std::clamp(value, 0.0, kPhaseMax);
  return std::clamp(value, 0.0, upper(gene));
}

Chromosome encode(const BeamformerSet& b, const GeneLayout& layout) {
  if (b.v_c.size() != layout.num_dl() || b.v_s.size() != layout.num_sensing() || b.e.size() != layout.num_ul())
    throw InvalidArgument("encode: beamformer set does not match the gene layout");
  Chromosome c;
  c.genes.assign(layout.size(), 0.0);
  const std::size_t beams = layout.num_dl() + layout.num_sensing();
  for (std::size_t i = 0; i < beams; ++i) {
    const CVector& v = i < layout.num_dl() ? b.v_c[i] : b.v_s[i - layout.num_dl()];
    if (static_cast<std::size_t>(v.size()) != layout.nt()) throw InvalidArgument("encode: beam length mismatch");
    for (std::size_t n = 0; n < layout.nt(); ++n) {
      const Complex z = v(static_cast<Eigen::Index>(n));
      c.genes[layout.amplitude(i, n)] = std::abs(z);
      c.genes[layout.phase(i, n)] = wrap_phase(std::arg(z));
    }
  }
  for (std::size_t k = 0; k < layout.num_ul(); ++k) c.genes[layout.power(k)] = b.e[k];
  return c;
}

BeamformerSet decode_transmit(const Chromosome& c, const GeneLayout& layout) {
  if (c.genes.size() != layout.size()) throw InvalidArgument("decode: chromosome length mismatch");
  for (std::size_t i = 0; i < c.genes.size(); ++i) {
    if (!layout.in_bounds(i, c.genes[i]))
      throw InvalidArgument("decode: gene " + std::to_string(i) + " outside its interval");
  }
  BeamformerSet b;
  const auto nt = static_cast<Eigen::Index>(layout.nt());
  const std::size_t beams = layout.num_dl() + layout.num_sensing();
  for (std::size_t i = 0; i < beams; ++i) {
    CVector v(nt);
    for (std::size_t n = 0; n < layout.nt(); ++n)
      v(static_cast<Eigen::Index>(n)) = std::polar(c.genes[layout.amplitude(i, n)], c.genes[layout.phase(i, n)]);
    (i < layout.num_dl() ? b.v_c : b.v_s).push_back(std::move(v));
  }
  for (std::size_t k = 0; k < layout.num_ul(); ++k) b.e.push_back(c.genes[layout.power(k)]);
  return b;
}

BeamformerSet decode(const Chromosome& c, const Problem& p) {
  BeamformerSet b = decode_transmit(c, GeneLayout(p));
  assign_optimal_receivers(p.channels, interference_covariances(p.channels, b, p.noise), b);
  return b;
}

double fitness(const SinrReport& report, double penalty_weight) {
  double penalty = 0.0;
  for (const auto& r : report.residuals) {
    const double violation = std::max(0.0, -r.normalized());
    penalty += violation * violation;
  }
  return report.objective - penalty_weight * penalty;
}

EvaluatedCandidate evaluate_candidate(const Chromosome& c, const Problem& p, const GeneLayout& layout,
                                      double penalty_weight) {
  EvaluatedCandidate out;
  out.chromosome = c;
  out.beamformers = decode_transmit(c, layout);
  out.report = evaluate(p, out.beamformers);
  out.fitness = fitness(out.report, penalty_weight);
  return out;
}

std::size_t tournament_select(std::span<const EvaluatedCandidate> population, Rng& rng) {
  if (population.empty()) throw InvalidArgument("tournament_select: empty population");
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  const std::size_t first = pick(rng);
  const std::size_t second = pick(rng);
  return population[second].fitness > population[first].fitness ? second : first;
}

Chromosome blend(const Chromosome& mother, const Chromosome& father, std::span<const double> zeta) {
  if (mother.genes.size() != father.genes.size() || zeta.size() != mother.genes.size())
    throw InvalidArgument("blend: chromosome length mismatch");
  Chromosome child;
  child.genes.resize(mother.genes.size());
  for (std::size_t i = 0; i < child.genes.size(); ++i)
    child.genes[i] = father.genes[i] + zeta[i] * (mother.genes[i] - father.genes[i]);
  return child;
}

Chromosome crossover(const Chromosome& mother, const Chromosome& father, Rng& rng, const GeneLayout& layout,
                     bool wrap_aware) {
  if (mother.genes.size() != layout.size() || father.genes.size() != layout.size())
    throw InvalidArgument("crossover: chromosome length mismatch");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> zeta(layout.size());
  for (double& z : zeta) z = unit(rng);
  Chromosome child = blend(mother, father, zeta);
  for (std::size_t i = 0; i < child.genes.size(); ++i) {
    if (wrap_aware && layout.kind(i) == GeneKind::phase) {
      double diff = mother.genes[i] - father.genes[i];
      if (diff > kPi) diff -= kTwoPi;
      if (diff < -kPi) diff += kTwoPi;
      child.genes[i] = wrap_phase(father.genes[i] + zeta[i] * diff);
    }
    child.genes[i] = layout.clamp(i, child.genes[i]);
  }
  return child;
}

Chromosome mutate(const Chromosome& parent, const GeneLayout& layout, Rng& rng) {
  if (parent.genes.size() != layout.size()) throw InvalidArgument("mutate: chromosome length mismatch");
  if (parent.genes.empty()) return parent;
  Chromosome child = parent;
  std::uniform_int_distribution<std::size_t> pick(0, child.genes.size() - 1);
  const std::size_t gene = pick(rng);
  child.genes[gene] = layout.sample(gene, rng);
  return child;
}

Chromosome random_chromosome(const GeneLayout& layout, Rng& rng) {
  Chromosome c;
  c.genes.resize(layout.size());
  for (std::size_t i = 0; i < c.genes.size(); ++i) c.genes[i] = layout.sample(i, rng);
  return c;
}

bool better_candidate(const EvaluatedCandidate& a, const EvaluatedCandidate& b) {
  const bool fa = a.report.feasible();
  const bool fb = b.report.feasible();
  if (fa != fb) return fa;
  return a.fitness > b.fitness;
}

namespace {

GenerationStats summarize(int generation, const std::vector<EvaluatedCandidate>& pop) {
  GenerationStats st;
  st.generation = generation;
  const auto best = std::max_element(pop.begin(), pop.end(), [](const auto& a, const auto& b) {
    return a.fitness < b.fitness;
  });
  st.best_fitness = best->fitness;
  st.best_violations = best->report.violation_count();
  double sum = 0.0;
  for (const auto& c : pop) {
    sum += c.fitness;
    if (!c.report.feasible()) ++st.infeasible_count;
  }
  st.mean_fitness = sum / static_cast<double>(pop.size());
  return st;
}

}  // namespace

GaResult evolve(const Problem& p, const GaParams& params) {
  if (params.population_size < 2) throw InvalidArgument("evolve: population_size must be >= 2");
  if (params.elite_count < 0 || params.elite_count >= params.population_size)
    throw InvalidArgument("evolve: elite_count must lie in [0, population_size)");
  if (params.max_generations < 0) throw InvalidArgument("evolve: max_generations must be >= 0");
  if (!(params.crossover_ratio >= 0.0 && params.crossover_ratio <= 1.0))
    throw InvalidArgument("evolve: crossover_ratio must lie in [0, 1]");

  const GeneLayout layout(p);
  const auto pop_size = static_cast<std::size_t>(params.population_size);
  const auto elites = static_cast<std::size_t>(params.elite_count);
  const std::size_t offspring = pop_size - elites;
  const auto crossovers =
      static_cast<std::size_t>(std::lround(params.crossover_ratio * static_cast<double>(offspring)));

  Rng rng(params.seed);
  GaResult result;
  auto eval = [&](const Chromosome& c) {
    ++result.evaluations;
    return evaluate_candidate(c, p, layout, params.penalty_weight);
  };

  std::vector<EvaluatedCandidate> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) pop.push_back(eval(random_chromosome(layout, rng)));

  auto track_best = [&](const std::vector<EvaluatedCandidate>& candidates, bool first) {
    for (const auto& c : candidates) {
      if (first || better_candidate(c, result.best)) {
        result.best = c;
        first = false;
      }
    }
  };
  track_best(pop, true);
  result.trace.push_back(summarize(0, pop));

  std::vector<std::size_t> order(pop_size);
  for (int gen = 1; gen <= params.max_generations; ++gen) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].fitness > pop[b].fitness; });

    std::vector<EvaluatedCandidate> next;
    next.reserve(pop_size);
    for (std::size_t i = 0; i < elites; ++i) next.push_back(pop[order[i]]);

    // Breed every child from the current population before evaluating, so
    // the random stream does not depend on evaluation results.
    std::vector<Chromosome> children;
    children.reserve(offspring);
    for (std::size_t i = 0; i < crossovers; ++i) {
      const std::size_t mother = tournament_select(pop, rng);
      const std::size_t father = tournament_select(pop, rng);
      children.push_back(
          crossover(pop[mother].chromosome, pop[father].chromosome, rng, layout, params.wrap_aware_phase));
    }
    for (std::size_t i = crossovers; i < offspring; ++i)
      children.push_back(mutate(pop[tournament_select(pop, rng)].chromosome, layout, rng));

    for (const auto& c : children) next.push_back(eval(c));
    pop = std::move(next);
    track_best(pop, false);
    result.trace.push_back(summarize(gen, pop));
  }

  result.feasible = result.best.report.feasible();
  return result;
}

}  // namespace fdisac
