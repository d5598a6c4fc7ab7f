#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdisac/baselines.hpp"

namespace fdisac {

/// Raised when a candidate file does not match the scenario it is used with.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

nlohmann::json report_to_json(const SinrReport& r);

/// Complex vectors are stored as lists of [re, im] pairs.
nlohmann::json cvector_to_json(const CVector& v);
CVector cvector_from_json(const nlohmann::json& j);

nlohmann::json beamformers_to_json(const BeamformerSet& b);
BeamformerSet beamformers_from_json(const nlohmann::json& j);

nlohmann::json channels_to_json(const ChannelSet& ch);

/// A solved candidate together with the dimensions it was solved for.
struct CandidateFile {
  int nt = 0;
  int nr = 0;
  std::size_t num_dl = 0;
  std::size_t num_ul = 0;
  std::size_t num_targets = 0;
  std::string scheme;
  std::uint64_t seed = 0;
  double fitness = 0.0;
  BeamformerSet beamformers;
};

CandidateFile make_candidate_file(const SlotResult& slot, Scheme scheme, std::uint64_t seed);
nlohmann::json candidate_to_json(const CandidateFile& c, const SinrReport* report = nullptr);
CandidateFile candidate_from_json(const nlohmann::json& j);
CandidateFile load_candidate(const std::string& path);

/// Throws DimensionMismatch unless the candidate's arrays, user counts and
/// vector lengths agree with `p`.
void check_candidate_dimensions(const CandidateFile& c, const Problem& p);

/// One row per generation: generation, best_fitness, mean_fitness,
/// best_violations, infeasible_count.
void write_trace_csv(std::ostream& out, const std::vector<GenerationStats>& trace);

}  // namespace fdisac
