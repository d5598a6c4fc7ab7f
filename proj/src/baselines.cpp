#include "fdisac/baselines.hpp"

#include "fdisac/units.hpp"

namespace fdisac {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::full: return "full";
    case Scheme::comm_only: return "comm_only";
    case Scheme::tdd_hd: return "tdd_hd";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "full") return Scheme::full;
  if (name == "comm_only") return Scheme::comm_only;
  if (name == "tdd_hd") return Scheme::tdd_hd;
  throw InvalidArgument("unknown scheme '" + name + "' (expected full, comm_only or tdd_hd)");
}

bool BaselineResult::feasible() const {
  for (const auto& slot : slots) {
    if (!slot.ga.feasible) return false;
  }
  return !slots.empty();
}

double BaselineResult::fitness() const {
  if (scheme != Scheme::tdd_hd) return slots.empty() ? 0.0 : slots.front().ga.best.fitness;
  const double f = slots.front().problem.scenario.tdd_dl_fraction;
  return f * slots[0].ga.best.fitness + (1.0 - f) * slots[1].ga.best.fitness;
}

Problem comm_only_problem(const Scenario& s) { return make_problem(s, false); }

Problem tdd_slot_a_problem(const Scenario& s) {
  Scenario a = s;
  a.ul_users.clear();
  a.rho = 1.0;
  return make_problem(a, true);
}

Problem tdd_slot_b_problem(const Scenario& s) {
  Scenario b = s;
  b.dl_users.clear();
  b.rho = 0.0;
  return make_problem(b, true);
}

namespace {

BaselineResult single_slot(Scheme scheme, Problem p, const GaParams& params) {
  BaselineResult r;
  r.scheme = scheme;
  GaResult ga = evolve(p, params);
  r.dl_rate = ga.best.report.tau_dl;
  r.ul_rate = ga.best.report.tau_ul;
  r.sum_rate = r.dl_rate + r.ul_rate;
  r.slots.push_back({to_string(scheme), std::move(p), std::move(ga)});
  return r;
}

}  // namespace

BaselineResult run_full(const Scenario& s, const GaParams& params) {
  return single_slot(Scheme::full, make_problem(s, true), params);
}

BaselineResult comm_only(const Scenario& s, const GaParams& params) {
  return single_slot(Scheme::comm_only, comm_only_problem(s), params);
}

BaselineResult tdd_hd(const Scenario& s, const GaParams& params) {
  BaselineResult r;
  r.scheme = Scheme::tdd_hd;
  Problem a = tdd_slot_a_problem(s);
  Problem b = tdd_slot_b_problem(s);
  GaResult ga_a = evolve(a, params);
  GaResult ga_b = evolve(b, params);
  const double f = s.tdd_dl_fraction;
  r.dl_rate = f * ga_a.best.report.tau_dl;
  r.ul_rate = (1.0 - f) * ga_b.best.report.tau_ul;
  r.sum_rate = r.dl_rate + r.ul_rate;
  r.slots.push_back({"slot_a", std::move(a), std::move(ga_a)});
  r.slots.push_back({"slot_b", std::move(b), std::move(ga_b)});
  return r;
}

BaselineResult run_scheme(Scheme scheme, const Scenario& s, const GaParams& params) {
  switch (scheme) {
    case Scheme::full: return run_full(s, params);
    case Scheme::comm_only: return comm_only(s, params);
    case Scheme::tdd_hd: return tdd_hd(s, params);
  }
  throw InvalidArgument("run_scheme: unknown scheme");
}

}  // namespace fdisac
