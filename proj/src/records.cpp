#include "fdisac/records.hpp"

#include <fstream>
#include <iomanip>

#include "fdisac/config.hpp"
#include "fdisac/units.hpp"

namespace fdisac {

using nlohmann::json;

json report_to_json(const SinrReport& r) {
  json j;
  j["gamma_dl"] = r.gamma_dl;
  j["gamma_ul"] = r.gamma_ul;
  j["gamma_rad"] = r.gamma_rad;
  j["tau_dl"] = r.tau_dl;
  j["tau_ul"] = r.tau_ul;
  j["sum_rate"] = r.sum_rate();
  j["objective"] = r.objective;
  j["p_tx"] = r.p_tx;
  j["beam_power"] = r.beam_power;
  j["beam_peak_power"] = r.beam_peak_power;
  j["ul_power"] = r.ul_power;
  j["feasible"] = r.feasible();
  json res = json::array();
  for (const auto& x : r.residuals) {
    res.push_back({{"kind", to_string(x.kind)}, {"index", x.index}, {"slack", x.slack}, {"scale", x.scale}});
  }
  j["residuals"] = res;
  return j;
}

json cvector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

CVector cvector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("complex vector must be a list of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& p = j[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw InvalidArgument("complex vector entry must be a numeric [re, im] pair");
    v(static_cast<Eigen::Index>(i)) = Complex(p[0].get<double>(), p[1].get<double>());
  }
  return v;
}

namespace {

json vectors_to_json(const std::vector<CVector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(cvector_to_json(v));
  return out;
}

std::vector<CVector> vectors_from_json(const json& j, const char* key) {
  std::vector<CVector> out;
  if (!j.contains(key)) return out;
  for (const auto& v : j.at(key)) out.push_back(cvector_from_json(v));
  return out;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(cvector_to_json(m.row(r).transpose()));
  return out;
}

}  // namespace

json beamformers_to_json(const BeamformerSet& b) {
  return {{"v_c", vectors_to_json(b.v_c)}, {"v_s", vectors_to_json(b.v_s)}, {"e", b.e},
          {"w_c", vectors_to_json(b.w_c)}, {"w_s", vectors_to_json(b.w_s)}};
}

BeamformerSet beamformers_from_json(const json& j) {
  BeamformerSet b;
  b.v_c = vectors_from_json(j, "v_c");
  b.v_s = vectors_from_json(j, "v_s");
  if (j.contains("e")) b.e = j.at("e").get<std::vector<double>>();
  b.w_c = vectors_from_json(j, "w_c");
  b.w_s = vectors_from_json(j, "w_s");
  return b;
}

json channels_to_json(const ChannelSet& ch) {
  json alpha = json::array();
  for (const auto& a : ch.alpha) alpha.push_back({a.real(), a.imag()});
  return {{"h", vectors_to_json(ch.h)},
          {"g", vectors_to_json(ch.g)},
          {"alpha", alpha},
          {"a_tx_targets", vectors_to_json(ch.a_tx_targets)},
          {"a_rx_targets", vectors_to_json(ch.a_rx_targets)},
          {"h_si", matrix_to_json(ch.h_si)}};
}

CandidateFile make_candidate_file(const SlotResult& slot, Scheme scheme, std::uint64_t seed) {
  const Scenario& s = slot.problem.scenario;
  CandidateFile c;
  c.nt = s.nt;
  c.nr = s.nr;
  c.num_dl = s.num_dl();
  c.num_ul = s.num_ul();
  c.num_targets = slot.problem.num_sensing_beams();
  c.scheme = to_string(scheme);
  c.seed = seed;
  c.fitness = slot.ga.best.fitness;
  c.beamformers = slot.ga.best.beamformers;
  return c;
}

json candidate_to_json(const CandidateFile& c, const SinrReport* report) {
  json j = {{"schema_version", kConfigSchemaVersion},
            {"dims",
             {{"nt", c.nt}, {"nr", c.nr}, {"num_dl", c.num_dl}, {"num_ul", c.num_ul}, {"num_targets", c.num_targets}}},
            {"scheme", c.scheme},
            {"seed", c.seed},
            {"fitness", c.fitness},
            {"beamformers", beamformers_to_json(c.beamformers)}};
  if (report) j["report"] = report_to_json(*report);
  return j;
}

CandidateFile candidate_from_json(const json& j) {
  try {
    if (j.value("schema_version", 0) != kConfigSchemaVersion)
      throw InvalidArgument("candidate file: unsupported schema_version");
    const auto& d = j.at("dims");
    CandidateFile c;
    c.nt = d.at("nt").get<int>();
    c.nr = d.at("nr").get<int>();
    c.num_dl = d.at("num_dl").get<std::size_t>();
    c.num_ul = d.at("num_ul").get<std::size_t>();
    c.num_targets = d.at("num_targets").get<std::size_t>();
    c.scheme = j.value("scheme", std::string("full"));
    c.seed = j.value("seed", std::uint64_t{0});
    c.fitness = j.value("fitness", 0.0);
    c.beamformers = beamformers_from_json(j.at("beamformers"));
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("candidate file: ") + e.what());
  }
}

CandidateFile load_candidate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open candidate file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidArgument("candidate file '" + path + "': " + e.what());
  }
  return candidate_from_json(j);
}

void check_candidate_dimensions(const CandidateFile& c, const Problem& p) {
  const Scenario& s = p.scenario;
  auto fail = [](const std::string& what) { throw DimensionMismatch("candidate does not match scenario: " + what); };
  if (c.nt != s.nt) fail("nt " + std::to_string(c.nt) + " vs " + std::to_string(s.nt));
  if (c.nr != s.nr) fail("nr " + std::to_string(c.nr) + " vs " + std::to_string(s.nr));
  if (c.num_dl != s.num_dl()) fail("number of DL users");
  if (c.num_ul != s.num_ul()) fail("number of UL users");
  if (c.num_targets != p.num_sensing_beams()) fail("number of sensing beams");
  const auto& b = c.beamformers;
  if (b.v_c.size() != c.num_dl || b.v_s.size() != c.num_targets || b.e.size() != c.num_ul)
    fail("beam counts disagree with the declared dimensions");
  auto check_len = [&](const std::vector<CVector>& vs, int n, const char* name) {
    for (const auto& v : vs) {
      if (v.size() != n) fail(std::string(name) + " length");
    }
  };
  check_len(b.v_c, s.nt, "v_c");
  check_len(b.v_s, s.nt, "v_s");
  check_len(b.w_c, s.nr, "w_c");
  check_len(b.w_s, s.nr, "w_s");
}

void write_trace_csv(std::ostream& out, const std::vector<GenerationStats>& trace) {
  out << "generation,best_fitness,mean_fitness,best_violations,infeasible_count\n";
  const auto old_precision = out.precision();
  out << std::setprecision(12);
  for (const auto& g : trace) {
    out << g.generation << ',' << g.best_fitness << ',' << g.mean_fitness << ',' << g.best_violations << ','
        << g.infeasible_count << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fdisac
