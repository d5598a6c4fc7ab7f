// Command-line front end: optimize, sweep, baseline, beampattern and
// validate-config.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdisac/baselines.hpp"
#include "fdisac/beampattern.hpp"
#include "fdisac/config.hpp"
#include "fdisac/experiment.hpp"
#include "fdisac/records.hpp"
#include "fdisac/units.hpp"

namespace fs = std::filesystem;
using namespace fdisac;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitInfeasible = 3;

struct ScenarioArgs {
  std::string config;
  std::string profile;
  std::vector<std::string> overrides;
  std::optional<int> replicates;
  std::optional<int> generations;
  std::optional<int> population;
  std::optional<double> mu_rad_db;
  std::optional<int> targets;
  std::optional<std::uint64_t> seed;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("-c,--config", a.config, "Scenario config file (JSON)");
  cmd->add_option("--profile", a.profile, "Base profile when keys are missing: paper or fast");
  cmd->add_option("--set", a.overrides, "Override a config key, e.g. --set power.p_max_dbw=15")->take_all();
  cmd->add_option("--replicates", a.replicates, "Monte-Carlo replicates")->check(CLI::PositiveNumber);
  cmd->add_option("--generations", a.generations, "GA generations")->check(CLI::NonNegativeNumber);
  cmd->add_option("--population", a.population, "GA population size")->check(CLI::PositiveNumber);
  cmd->add_option("--mu-rad-db", a.mu_rad_db, "Sensing SINR threshold of every target, dB");
  cmd->add_option("--targets", a.targets, "Number of targets (default angular table)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", a.seed, "Base seed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario build_scenario(const ScenarioArgs& a) {
  nlohmann::json doc = nlohmann::json::object();
  if (!a.config.empty()) {
    try {
      doc = nlohmann::json::parse(read_file(a.config));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(a.config + ": " + e.what());
    }
  }
  if (!a.profile.empty()) doc["profile"] = a.profile;
  for (const auto& o : a.overrides) apply_override(doc, o);
  Scenario s = scenario_from_json(doc);
  if (a.targets) set_target_count(s, *a.targets);
  if (a.mu_rad_db) set_sensing_threshold_db(s, *a.mu_rad_db);
  if (a.replicates) s.replicates = *a.replicates;
  if (a.generations) s.ga.max_generations = *a.generations;
  if (a.population) s.ga.population_size = *a.population;
  if (a.seed) s.seed = *a.seed;
  const auto violations = validate(s);
  if (!violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  " + v.code + ": " + v.message;
    throw ConfigError(msg);
  }
  return s;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string replicate_tag(std::size_t i) {
  std::ostringstream out;
  out << "rep_" << std::setw(4) << std::setfill('0') << i;
  return out.str();
}

// Runs replicates of one scheme and writes records, aggregate, traces,
// candidates and a metadata file under `dir`.
ExperimentResult run_and_write(const Scenario& s, Scheme scheme, const fs::path& dir, unsigned workers,
                               bool quiet) {
  fs::create_directories(dir / "traces");
  fs::create_directories(dir / "candidates");
  {
    auto cfg = open_out(dir / "scenario.json");
    cfg << render_scenario(s) << '\n';
  }
  ExperimentOptions opts;
  opts.workers = workers;
  opts.on_record = [&](const RunRecord& rec, const BaselineResult& r) {
    const std::string tag = replicate_tag(rec.replicate);
    for (const auto& slot : r.slots) {
      const std::string suffix = r.slots.size() > 1 ? "_" + slot.label : "";
      auto trace = open_out(dir / "traces" / (tag + suffix + ".csv"));
      write_trace_csv(trace, slot.ga.trace);
      auto cand = open_out(dir / "candidates" / (tag + suffix + ".json"));
      cand << candidate_to_json(make_candidate_file(slot, scheme, rec.seed), &slot.ga.best.report).dump(2) << '\n';
    }
    if (!quiet) {
      std::cout << tag << " seed " << rec.seed << " sum_rate " << std::setprecision(6) << rec.sum_rate
                << (rec.feasible ? " feasible" : " infeasible") << '\n';
    }
  };
  ExperimentResult res = run_experiment(s, scheme, opts);
  {
    auto out = open_out(dir / "records.csv");
    write_records_csv(out, res.records);
  }
  {
    auto out = open_out(dir / "aggregate.csv");
    write_aggregate_csv(out, {{"replicates", static_cast<double>(s.replicates), scheme, res.summary}});
  }
  {
    nlohmann::json meta = {{"started_utc", timestamp_utc()},
                           {"scenario_hash", res.scenario_hash},
                           {"scheme", to_string(scheme)},
                           {"workers", resolve_workers(workers)},
                           {"wall_time_s", res.wall_time_s}};
    nlohmann::json walls = nlohmann::json::array();
    for (const auto& r : res.records) walls.push_back(r.wall_time_s);
    meta["replicate_wall_time_s"] = walls;
    auto out = open_out(dir / "metadata.json");
    out << meta.dump(2) << '\n';
  }
  return res;
}

void print_summary(const ExperimentResult& r) {
  const auto& a = r.summary;
  std::cout << to_string(r.scheme) << ": " << a.feasible_count << "/" << a.count << " feasible, mean sum rate "
            << std::setprecision(6) << a.mean_sum_rate << " bps/Hz (std " << a.std_sum_rate << ")\n";
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw ConfigError("bad value '" + item + "' in --values");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("--values must list at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-duplex ISAC joint beamforming optimizer"};
  app.require_subcommand(1);
  unsigned workers = 0;
  bool quiet = false;
  app.add_option("--workers", workers, "Worker threads (0: FDISAC_WORKERS or all cores)");
  app.add_flag("-q,--quiet", quiet, "Only print summaries");

  ScenarioArgs opt_args;
  std::string opt_out = "results/optimize";
  auto* optimize = app.add_subcommand("optimize", "Run the GA with receive beamforming over all replicates");
  add_scenario_options(optimize, opt_args);
  optimize->add_option("-o,--out", opt_out, "Output directory");

  ScenarioArgs base_args;
  std::string base_out = "results/baseline";
  std::string base_scheme = "comm_only";
  auto* baseline = app.add_subcommand("baseline", "Run a comparison scheme over all replicates");
  add_scenario_options(baseline, base_args);
  baseline->add_option("--scheme", base_scheme, "comm_only, tdd_hd or full")
      ->check(CLI::IsMember({"comm_only", "tdd_hd", "full"}));
  baseline->add_option("-o,--out", base_out, "Output directory");

  ScenarioArgs sweep_args;
  std::string sweep_out = "results/sweep";
  std::string sweep_axis = "mu_rad_db";
  std::string sweep_values;
  std::vector<std::string> sweep_schemes{"full"};
  auto* sweep_cmd = app.add_subcommand("sweep", "Aggregate sum rates over a list of axis values");
  add_scenario_options(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--axis", sweep_axis, "mu_rad_db or targets")->check(CLI::IsMember({"mu_rad_db", "targets"}));
  sweep_cmd->add_option("--values", sweep_values, "Comma separated axis values, e.g. 14,15,16")->required();
  sweep_cmd->add_option("--schemes", sweep_schemes, "Schemes to run at each point")
      ->delimiter(',')
      ->check(CLI::IsMember({"full", "comm_only", "tdd_hd"}));
  sweep_cmd->add_option("-o,--out", sweep_out, "Output directory");

  ScenarioArgs bp_args;
  std::string bp_candidate;
  std::string bp_cut = "azimuth";
  double bp_angle_deg = 20.0;
  int bp_resolution = 0;
  std::string bp_receiver = "target";
  std::size_t bp_index = 0;
  std::string bp_out = "beampattern.csv";
  auto* beampattern = app.add_subcommand("beampattern", "Export transmit, receive and two-way patterns");
  add_scenario_options(beampattern, bp_args);
  beampattern->add_option("--candidate", bp_candidate, "Solved candidate file")->required();
  beampattern->add_option("--cut", bp_cut, "azimuth (phi sweep) or elevation (theta sweep)")
      ->check(CLI::IsMember({"azimuth", "elevation"}));
  beampattern->add_option("--angle-deg", bp_angle_deg, "Fixed angle of the cut in degrees");
  beampattern->add_option("--resolution", bp_resolution, "Number of samples (default 361 azimuth, 181 elevation)")
      ->check(CLI::Range(2, 1000000));
  beampattern->add_option("--receiver", bp_receiver, "Receive combiner: target or ul")
      ->check(CLI::IsMember({"target", "ul"}));
  beampattern->add_option("--index", bp_index, "Index of the target or UL user");
  beampattern->add_option("-o,--out", bp_out, "Output CSV file");

  ScenarioArgs val_args;
  bool val_print = false;
  auto* validate_cmd = app.add_subcommand("validate-config", "Check a config and print the resolved scenario");
  add_scenario_options(validate_cmd, val_args);
  validate_cmd->add_flag("--print", val_print, "Print the fully resolved config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*optimize) {
      const Scenario s = build_scenario(opt_args);
      const auto res = run_and_write(s, Scheme::full, opt_out, workers, quiet);
      print_summary(res);
      return res.summary.feasible_count > 0 ? kExitOk : kExitInfeasible;
    }
    if (*baseline) {
      const Scenario s = build_scenario(base_args);
      const auto res = run_and_write(s, scheme_from_string(base_scheme), base_out, workers, quiet);
      print_summary(res);
      return res.summary.feasible_count > 0 ? kExitOk : kExitInfeasible;
    }
    if (*sweep_cmd) {
      const Scenario base = build_scenario(sweep_args);
      const auto values = parse_values(sweep_values);
      std::vector<SweepRow> rows;
      bool any_feasible = false;
      for (double v : values) {
        Scenario s = base;
        std::ostringstream label;
        if (sweep_axis == "mu_rad_db") {
          set_sensing_threshold_db(s, v);
          label << "mu_rad_db_" << v;
        } else {
          if (v < 0 || v != static_cast<int>(v)) throw ConfigError("targets values must be non-negative integers");
          set_target_count(s, static_cast<int>(v));
          label << "targets_" << static_cast<int>(v);
        }
        for (const auto& name : sweep_schemes) {
          const Scheme scheme = scheme_from_string(name);
          const auto res = run_and_write(s, scheme, fs::path(sweep_out) / label.str() / name, workers, true);
          if (!quiet) {
            std::cout << sweep_axis << "=" << v << " ";
            print_summary(res);
          }
          any_feasible = any_feasible || res.summary.feasible_count > 0;
          rows.push_back({sweep_axis, v, scheme, res.summary});
        }
      }
      auto out = open_out(fs::path(sweep_out) / "aggregate.csv");
      write_aggregate_csv(out, rows);
      return any_feasible ? kExitOk : kExitInfeasible;
    }
    if (*beampattern) {
      const Scenario s = build_scenario(bp_args);
      const CandidateFile cand = load_candidate(bp_candidate);
      const Problem p = make_problem(s, cand.num_targets > 0 || s.num_targets() == 0);
      check_candidate_dimensions(cand, p);
      BeamformerSet b = cand.beamformers;
      if (b.w_c.size() != s.num_ul() || b.w_s.size() != p.num_sensing_beams()) evaluate(p, b);
      const auto& receivers = bp_receiver == "target" ? b.w_s : b.w_c;
      if (bp_index >= receivers.size()) throw DimensionMismatch("--index exceeds the number of receivers");
      const double angle = deg_to_rad(bp_angle_deg);
      CutSpec cut = cut_from_string(bp_cut) == Cut::azimuth_at_theta ? CutSpec::azimuth(angle) : CutSpec::elevation(angle);
      if (bp_resolution > 0) cut.resolution = bp_resolution;
      const PatternGrid grid = sweep(cut, s.tx_layout(), s.rx_layout(), b, receivers[bp_index]);
      if (fs::path(bp_out).has_parent_path()) fs::create_directories(fs::path(bp_out).parent_path());
      auto out = open_out(bp_out);
      write_pattern_csv(out, grid);
      const auto peaks = find_peaks(grid, PatternColumn::two_way);
      const auto& pk = grid.samples[peaks.main_index];
      std::cout << "two-way peak " << pk.p_two_way_db << " dB at " << rad_to_deg(pk.angle) << " deg";
      if (peaks.secondary_index) {
        const auto& sec = grid.samples[*peaks.secondary_index];
        std::cout << ", secondary " << sec.p_two_way_db << " dB at " << rad_to_deg(sec.angle) << " deg";
      }
      std::cout << '\n';
      return kExitOk;
    }
    if (*validate_cmd) {
      const Scenario s = build_scenario(val_args);
      if (val_print) {
        std::cout << render_scenario(s) << '\n';
      } else {
        std::cout << "ok: " << s.num_dl() << " DL, " << s.num_ul() << " UL, " << s.num_targets() << " targets, "
                  << s.nt << "x" << s.nr << " elements, hash " << scenario_hash(s) << '\n';
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
