#pragma once

#include <string>
#include <vector>

#include "fdisac/ga.hpp"

namespace fdisac {

enum class Scheme { full, comm_only, tdd_hd };

std::string to_string(Scheme s);
/// Accepts "full", "comm_only" and "tdd_hd"; throws InvalidArgument otherwise.
Scheme scheme_from_string(const std::string& name);

/// One GA run per slot: a single slot for full and comm_only, slots A (DL +
/// sensing) and B (UL + sensing) for tdd_hd.
struct SlotResult {
  std::string label;
  Problem problem;
  GaResult ga;
};

struct BaselineResult {
  Scheme scheme = Scheme::full;
  double sum_rate = 0.0;  // bps/Hz, averaged over slots for tdd_hd
  double dl_rate = 0.0;
  double ul_rate = 0.0;
  std::vector<SlotResult> slots;

  [[nodiscard]] bool feasible() const;
  /// Sum of best fitness values, weighted like sum_rate for tdd_hd.
  [[nodiscard]] double fitness() const;
};

/// The same problem without sensing beams or sensing constraints. Targets
/// stay in the channel model as passive scatterers.
Problem comm_only_problem(const Scenario& s);

/// Slot A keeps the DL users and the targets and optimizes the DL rate
/// alone; slot B keeps the UL users and the targets and optimizes the UL
/// rate alone.
Problem tdd_slot_a_problem(const Scenario& s);
Problem tdd_slot_b_problem(const Scenario& s);

BaselineResult run_full(const Scenario& s, const GaParams& params);
BaselineResult comm_only(const Scenario& s, const GaParams& params);
BaselineResult tdd_hd(const Scenario& s, const GaParams& params);
BaselineResult run_scheme(Scheme scheme, const Scenario& s, const GaParams& params);

}  // namespace fdisac
