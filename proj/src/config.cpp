#include "fdisac/config.hpp"

#include <array>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "fdisac/units.hpp"

namespace fdisac {

using nlohmann::json;

namespace {

// Unit variants that name the same field. Longest suffixes first so that
// "_dbw" is not mistaken for "_db".
const std::vector<std::vector<std::string>> kUnitFamilies = {
    {"_dbsm", "_m2"},
    {"_dbw", "_dbm", "_w"},
    {"_wavelengths", "_m"},
    {"_linear", "_db"},
    {"_deg", "_rad"},
};

std::vector<std::string> unit_siblings(const std::string& key) {
  std::string best_suffix;
  const std::vector<std::string>* best_family = nullptr;
  for (const auto& family : kUnitFamilies) {
    for (const auto& suffix : family) {
      if (key.size() > suffix.size() && key.ends_with(suffix) && suffix.size() > best_suffix.size()) {
        best_suffix = suffix;
        best_family = &family;
      }
    }
  }
  std::vector<std::string> out;
  if (best_family == nullptr) return out;
  const std::string stem = key.substr(0, key.size() - best_suffix.size());
  for (const auto& suffix : *best_family) {
    if (suffix != best_suffix) out.push_back(stem + suffix);
  }
  return out;
}

void set_key(json& obj, const std::string& key, json value) {
  for (const auto& sib : unit_siblings(key)) obj.erase(sib);
  obj[key] = std::move(value);
}

void merge_into(json& base, const json& patch) {
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (it.value().is_object() && base.contains(it.key()) && base[it.key()].is_object()) {
      merge_into(base[it.key()], it.value());
    } else {
      for (const auto& sib : unit_siblings(it.key())) {
        if (patch.contains(sib)) throw ConfigError("conflicting keys '" + sib + "' and '" + it.key() + "'");
      }
      set_key(base, it.key(), it.value());
    }
  }
}

class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  [[nodiscard]] const json* find(const std::string& key) {
    auto it = obj_.find(key);
    if (it == obj_.end()) return nullptr;
    used_.insert(key);
    return &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) throw ConfigError(where(key) + ": missing required key");
    return *v;
  }

  double number(const std::string& key) {
    const json& v = require(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key) {
    const json& v = require(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
    return v.get<int>();
  }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = require(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      throw ConfigError(where(key) + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key) {
    const json& v = require(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = require(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.get<std::string>();
  }

  /// Exactly one of the unit variants must be present; its value is mapped
  /// into the internal unit.
  double quantity(const std::vector<std::pair<std::string, std::function<double(double)>>>& variants) {
    const std::pair<std::string, std::function<double(double)>>* chosen = nullptr;
    for (const auto& v : variants) {
      if (obj_.contains(v.first)) {
        if (chosen != nullptr)
          throw ConfigError(path_ + ": conflicting keys '" + chosen->first + "' and '" + v.first + "'");
        chosen = &v;
      }
    }
    if (chosen == nullptr) {
      std::string names;
      for (const auto& v : variants) names += (names.empty() ? "" : " or ") + v.first;
      throw ConfigError(path_ + ": missing " + names);
    }
    return chosen->second(number(chosen->first));
  }

  ObjectReader child(const std::string& key) { return ObjectReader(require(key), where(key)); }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.contains(it.key())) throw ConfigError(where(it.key()) + ": unknown key");
    }
  }

  [[nodiscard]] std::string where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

double identity(double x) { return x; }

double read_angle(ObjectReader& r, const std::string& stem) {
  return r.quantity({{stem + "_rad", identity}, {stem + "_deg", deg_to_rad}});
}

EntityPlacement read_placement(ObjectReader& r) {
  EntityPlacement p;
  p.distance = r.number("distance_m");
  p.direction.theta = read_angle(r, "theta");
  p.direction.phi = read_angle(r, "phi");
  return p;
}

double read_ratio(ObjectReader& r, const std::string& stem) {
  return r.quantity({{stem + "_linear", identity}, {stem + "_db", db_to_linear}});
}

double read_power(ObjectReader& r, const std::string& stem) {
  return r.quantity({{stem + "_w", identity}, {stem + "_dbw", dbw_to_watts}, {stem + "_dbm", dbm_to_watts}});
}

const json& require_array(ObjectReader& r, const std::string& key) {
  const json& v = r.require(key);
  if (!v.is_array()) throw ConfigError(r.where(key) + ": expected an array");
  return v;
}

json placement_json(const EntityPlacement& p) {
  return json{{"distance_m", p.distance},
              {"theta_rad", p.direction.theta},
              {"phi_rad", p.direction.phi}};
}

Scenario profile_base(const json& doc) {
  std::string profile = "paper";
  if (doc.contains("profile")) {
    if (!doc["profile"].is_string()) throw ConfigError("profile: expected a string");
    profile = doc["profile"].get<std::string>();
  }
  if (profile == "paper") return default_paper_scenario(1);
  if (profile == "fast") return fast_profile_scenario(1);
  throw ConfigError("profile: unknown profile '" + profile + "' (expected paper or fast)");
}

Scenario parse_complete(const json& doc) {
  ObjectReader top(doc, "");
  Scenario s;

  const int version = top.integer("schema_version");
  if (version != kConfigSchemaVersion)
    throw ConfigError("schema_version: unsupported version " + std::to_string(version));
  {
    ObjectReader r = top.child("radio");
    s.carrier_frequency = r.number("carrier_frequency_hz");
    s.bandwidth = r.number("bandwidth_hz");
    s.noise_figure_db = r.number("noise_figure_db");
    s.bs_noise_figure_db = r.number("bs_noise_figure_db");
    s.temperature = r.number("temperature_k");
    r.finish();
  }
  {
    ObjectReader r = top.child("arrays");
    s.nt = r.integer("nt");
    s.nr = r.integer("nr");
    const double lambda = s.carrier_frequency > 0.0 ? s.wavelength() : 0.0;
    s.array_separation = r.quantity(
        {{"separation_m", identity}, {"separation_wavelengths", [lambda](double x) { return x * lambda; }}});
    ObjectReader n = r.child("normal");
    s.array_normal.theta = read_angle(n, "theta");
    s.array_normal.phi = read_angle(n, "phi");
    n.finish();
    r.finish();
  }
  {
    ObjectReader r = top.child("power");
    s.p_max = read_power(r, "p_max");
    s.p0 = read_power(r, "p0");
    const std::string mode = r.string("antenna_constraint");
    if (mode == "element") {
      s.antenna_constraint = AntennaConstraint::element;
    } else if (mode == "beam_norm") {
      s.antenna_constraint = AntennaConstraint::beam_norm;
    } else {
      throw ConfigError("power.antenna_constraint: expected element or beam_norm, got '" + mode + "'");
    }
    r.finish();
  }
  {
    ObjectReader r = top.child("self_interference");
    s.si_gain = read_ratio(r, "gain");
    if (const json* m = r.find("gain_matrix_linear")) {
      if (!m->is_array()) throw ConfigError("self_interference.gain_matrix_linear: expected an array");
      for (const auto& row : *m) {
        if (!row.is_array()) throw ConfigError("self_interference.gain_matrix_linear: rows must be arrays");
        std::vector<double> values;
        for (const auto& x : row) {
          if (!x.is_number()) throw ConfigError("self_interference.gain_matrix_linear: expected numbers");
          values.push_back(x.get<double>());
        }
        s.si_gain_matrix.push_back(std::move(values));
      }
    }
    r.finish();
  }
  {
    ObjectReader r = top.child("objective");
    s.rho = r.number("rho");
    r.finish();
  }
  {
    const json& users = require_array(top, "dl_users");
    for (std::size_t j = 0; j < users.size(); ++j) {
      ObjectReader r(users[j], "dl_users." + std::to_string(j));
      DownlinkUser u;
      u.placement = read_placement(r);
      u.min_sinr = read_ratio(r, "min_sinr");
      r.finish();
      s.dl_users.push_back(u);
    }
  }
  {
    const json& users = require_array(top, "ul_users");
    for (std::size_t k = 0; k < users.size(); ++k) {
      ObjectReader r(users[k], "ul_users." + std::to_string(k));
      UplinkUser u;
      u.placement = read_placement(r);
      u.min_sinr = read_ratio(r, "min_sinr");
      u.max_power = read_power(r, "max_power");
      r.finish();
      s.ul_users.push_back(u);
    }
  }
  {
    const json& targets = require_array(top, "targets");
    for (std::size_t m = 0; m < targets.size(); ++m) {
      ObjectReader r(targets[m], "targets." + std::to_string(m));
      Target t;
      t.placement = read_placement(r);
      t.rcs = r.quantity({{"rcs_m2", identity}, {"rcs_dbsm", db_to_linear}});
      t.min_sinr = read_ratio(r, "min_sinr");
      r.finish();
      s.targets.push_back(t);
    }
  }
  {
    ObjectReader r = top.child("tdd");
    s.tdd_dl_fraction = r.number("dl_fraction");
    r.finish();
  }
  {
    ObjectReader r = top.child("experiment");
    s.replicates = r.integer("replicates");
    s.seed = r.unsigned_integer("seed");
    s.randomize_placements = r.boolean("randomize_placements");
    s.placement_jitter_deg = r.number("placement_jitter_deg");
    r.finish();
  }
  {
    ObjectReader r = top.child("ga");
    s.ga.population_size = r.integer("population_size");
    s.ga.max_generations = r.integer("max_generations");
    s.ga.elite_count = r.integer("elite_count");
    s.ga.crossover_ratio = r.number("crossover_ratio");
    s.ga.penalty_weight = r.number("penalty_weight");
    s.ga.seed = r.unsigned_integer("seed");
    s.ga.wrap_aware_phase = r.boolean("wrap_aware_phase");
    r.finish();
  }
  top.finish();
  return s;
}

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

}  // namespace

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["schema_version"] = kConfigSchemaVersion;
  doc["radio"] = {{"carrier_frequency_hz", s.carrier_frequency},
                  {"bandwidth_hz", s.bandwidth},
                  {"noise_figure_db", s.noise_figure_db},
                  {"bs_noise_figure_db", s.bs_noise_figure_db},
                  {"temperature_k", s.temperature}};
  doc["arrays"] = {{"nt", s.nt},
                   {"nr", s.nr},
                   {"separation_m", s.array_separation},
                   {"normal", {{"theta_rad", s.array_normal.theta}, {"phi_rad", s.array_normal.phi}}}};
  doc["power"] = {{"p_max_w", s.p_max},
                  {"p0_w", s.p0},
                  {"antenna_constraint",
                   s.antenna_constraint == AntennaConstraint::element ? "element" : "beam_norm"}};
  json si = {{"gain_linear", s.si_gain}};
  if (!s.si_gain_matrix.empty()) si["gain_matrix_linear"] = s.si_gain_matrix;
  doc["self_interference"] = si;
  doc["objective"] = {{"rho", s.rho}};
  doc["dl_users"] = json::array();
  for (const auto& u : s.dl_users) {
    json e = placement_json(u.placement);
    e["min_sinr_linear"] = u.min_sinr;
    doc["dl_users"].push_back(e);
  }
  doc["ul_users"] = json::array();
  for (const auto& u : s.ul_users) {
    json e = placement_json(u.placement);
    e["min_sinr_linear"] = u.min_sinr;
    e["max_power_w"] = u.max_power;
    doc["ul_users"].push_back(e);
  }
  doc["targets"] = json::array();
  for (const auto& t : s.targets) {
    json e = placement_json(t.placement);
    e["rcs_m2"] = t.rcs;
    e["min_sinr_linear"] = t.min_sinr;
    doc["targets"].push_back(e);
  }
  doc["tdd"] = {{"dl_fraction", s.tdd_dl_fraction}};
  doc["experiment"] = {{"replicates", s.replicates},
                       {"seed", s.seed},
                       {"randomize_placements", s.randomize_placements},
                       {"placement_jitter_deg", s.placement_jitter_deg}};
  doc["ga"] = {{"population_size", s.ga.population_size},
               {"max_generations", s.ga.max_generations},
               {"elite_count", s.ga.elite_count},
               {"crossover_ratio", s.ga.crossover_ratio},
               {"penalty_weight", s.ga.penalty_weight},
               {"seed", s.ga.seed},
               {"wrap_aware_phase", s.ga.wrap_aware_phase}};
  return doc;
}

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  json merged = scenario_to_json(profile_base(doc));
  json patch = doc;
  patch.erase("profile");
  merge_into(merged, patch);
  return parse_complete(merged);
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "': expected key.path=value");
  const std::string path = assignment.substr(0, eq);
  json value = parse_value(assignment.substr(eq + 1));

  std::vector<std::string> parts;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("override '" + assignment + "': empty path component");
    parts.push_back(part);
  }

  json* node = &doc;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(p);
      } catch (const std::exception&) {
        throw ConfigError("override '" + assignment + "': '" + p + "' is not an array index");
      }
      if (idx >= node->size()) throw ConfigError("override '" + assignment + "': index out of range");
      node = &(*node)[idx];
    } else {
      if (!node->is_object()) *node = json::object();
      node = &(*node)[p];
    }
  }
  const std::string& leaf = parts.back();
  if (node->is_array()) {
    const std::size_t idx = std::stoul(leaf);
    if (idx >= node->size()) throw ConfigError("override '" + assignment + "': index out of range");
    (*node)[idx] = std::move(value);
  } else {
    if (!node->is_object()) *node = json::object();
    set_key(*node, leaf, std::move(value));
  }
}

Scenario parse_scenario(const std::string& text, const std::vector<std::string>& overrides) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  if (overrides.empty()) return scenario_from_json(doc);

  // Overrides address the fully expanded document so that profile defaults
  // can be changed without restating them in the file.
  json merged = scenario_to_json(profile_base(doc));
  json patch = doc;
  patch.erase("profile");
  merge_into(merged, patch);
  for (const auto& o : overrides) apply_override(merged, o);
  return parse_complete(merged);
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), overrides);
}

std::string render_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

}  // namespace fdisac
