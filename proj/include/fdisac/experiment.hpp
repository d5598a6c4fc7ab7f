#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fdisac/baselines.hpp"

namespace fdisac {

/// Summary of one replicate. For tdd_hd the SINR lists concatenate slot A
/// and slot B in that order.
struct RunRecord {
  std::string scenario_hash;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::full;
  double best_fitness = 0.0;
  double tau_dl = 0.0;
  double tau_ul = 0.0;
  double sum_rate = 0.0;
  std::vector<double> gamma_dl_db;
  std::vector<double> gamma_ul_db;
  std::vector<double> gamma_rad_db;
  bool feasible = false;
  double wall_time_s = 0.0;
};

struct Aggregate {
  std::size_t count = 0;
  std::size_t feasible_count = 0;
  double mean_sum_rate = 0.0;
  double std_sum_rate = 0.0;  // sample standard deviation, 0 for one record
  double mean_tau_dl = 0.0;
  double mean_tau_ul = 0.0;
  double mean_fitness = 0.0;
};

Aggregate aggregate(const std::vector<RunRecord>& records);

struct ExperimentOptions {
  /// Worker threads; 0 picks FDISAC_WORKERS or the hardware concurrency.
  unsigned workers = 0;
  /// Called once per finished replicate, serialized and in replicate order.
  std::function<void(const RunRecord&, const BaselineResult&)> on_record;
};

struct ExperimentResult {
  Scheme scheme = Scheme::full;
  std::string scenario_hash;
  std::vector<RunRecord> records;  // ordered by replicate index
  std::vector<BaselineResult> results;
  Aggregate summary;
  double wall_time_s = 0.0;
};

/// Worker count after applying the FDISAC_WORKERS override.
unsigned resolve_workers(unsigned requested);

/// 16 hex digits of the FNV-1a hash of the rendered scenario.
std::string scenario_hash(const Scenario& s);

/// Seed of replicate `index`: base seed plus index.
std::uint64_t replicate_seed(const Scenario& s, std::size_t index);

/// The scenario a replicate runs on. Equal to `s` unless placement
/// randomization is on, in which case every entity's angles receive a
/// uniform jitter drawn from a stream keyed by the replicate seed.
Scenario replicate_scenario(const Scenario& s, std::size_t index);

RunRecord make_record(const BaselineResult& r, const std::string& hash, std::size_t replicate, std::uint64_t seed);

/// Runs s.replicates independent replicates of `scheme`.
ExperimentResult run_experiment(const Scenario& s, Scheme scheme, const ExperimentOptions& options = {});

/// Per-replicate CSV. Wall times are left out so identical inputs produce
/// identical files.
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);

struct SweepRow {
  std::string axis;
  double value = 0.0;
  Scheme scheme = Scheme::full;
  Aggregate summary;
};

void write_aggregate_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace fdisac
