#include "fdisac/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "fdisac/config.hpp"
#include "fdisac/units.hpp"

namespace fdisac {

Aggregate aggregate(const std::vector<RunRecord>& records) {
  Aggregate a;
  a.count = records.size();
  if (records.empty()) return a;
  for (const auto& r : records) {
    a.feasible_count += r.feasible ? 1 : 0;
    a.mean_sum_rate += r.sum_rate;
    a.mean_tau_dl += r.tau_dl;
    a.mean_tau_ul += r.tau_ul;
    a.mean_fitness += r.best_fitness;
  }
  const double n = static_cast<double>(records.size());
  a.mean_sum_rate /= n;
  a.mean_tau_dl /= n;
  a.mean_tau_ul /= n;
  a.mean_fitness /= n;
  if (records.size() > 1) {
    double ss = 0.0;
    for (const auto& r : records) ss += (r.sum_rate - a.mean_sum_rate) * (r.sum_rate - a.mean_sum_rate);
    a.std_sum_rate = std::sqrt(ss / (n - 1.0));
  }
  return a;
}

unsigned resolve_workers(unsigned requested) {
  if (const char* env = std::getenv("FDISAC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string scenario_hash(const Scenario& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : render_scenario(s)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::uint64_t replicate_seed(const Scenario& s, std::size_t index) { return s.seed + index; }

Scenario replicate_scenario(const Scenario& s, std::size_t index) {
  Scenario out = s;
  out.ga.seed = replicate_seed(s, index);
  if (!s.randomize_placements) return out;
  // Separate stream from the GA so jitter does not shift the GA draws.
  std::seed_seq seq{replicate_seed(s, index), std::uint64_t{0x706c6163}};
  std::mt19937_64 rng(seq);
  const double j = deg_to_rad(s.placement_jitter_deg);
  std::uniform_real_distribution<double> jitter(-j, j);
  auto shake = [&](EntityPlacement& p) {
    p.direction.theta += jitter(rng);
    p.direction.phi += jitter(rng);
    p.direction = p.direction.normalized();
  };
  for (auto& u : out.dl_users) shake(u.placement);
  for (auto& u : out.ul_users) shake(u.placement);
  for (auto& t : out.targets) shake(t.placement);
  return out;
}

RunRecord make_record(const BaselineResult& r, const std::string& hash, std::size_t replicate, std::uint64_t seed) {
  RunRecord rec;
  rec.scenario_hash = hash;
  rec.replicate = replicate;
  rec.seed = seed;
  rec.scheme = r.scheme;
  rec.best_fitness = r.fitness();
  rec.tau_dl = r.dl_rate;
  rec.tau_ul = r.ul_rate;
  rec.sum_rate = r.sum_rate;
  rec.feasible = r.feasible();
  for (const auto& slot : r.slots) {
    const auto& rep = slot.ga.best.report;
    for (double g : rep.gamma_dl) rec.gamma_dl_db.push_back(linear_to_db_floored(g));
    for (double g : rep.gamma_ul) rec.gamma_ul_db.push_back(linear_to_db_floored(g));
    for (double g : rep.gamma_rad) rec.gamma_rad_db.push_back(linear_to_db_floored(g));
  }
  return rec;
}

ExperimentResult run_experiment(const Scenario& s, Scheme scheme, const ExperimentOptions& options) {
  if (s.replicates < 1) throw InvalidArgument("run_experiment: replicates must be at least 1");
  const auto started = std::chrono::steady_clock::now();
  const auto n = static_cast<std::size_t>(s.replicates);
  ExperimentResult out;
  out.scheme = scheme;
  out.scenario_hash = scenario_hash(s);
  out.records.resize(n);
  out.results.resize(n);

  std::vector<char> done(n, 0);
  std::mutex mutex;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const Scenario rs = replicate_scenario(s, i);
        BaselineResult r = run_scheme(scheme, rs, rs.ga);
        RunRecord rec = make_record(r, out.scenario_hash, i, rs.ga.seed);
        rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::lock_guard lock(mutex);
        out.records[i] = std::move(rec);
        out.results[i] = std::move(r);
        done[i] = 1;
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        done[i] = 1;
        next = n;
      }
      cv.notify_all();
    }
  };

  const unsigned count = std::min<unsigned>(resolve_workers(options.workers), static_cast<unsigned>(n));
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);

  // Collector: hands records to the callback strictly in replicate order.
  {
    std::unique_lock lock(mutex);
    for (std::size_t i = 0; i < n; ++i) {
      cv.wait(lock, [&] { return done[i] || failure; });
      if (failure) break;
      if (options.on_record) options.on_record(out.records[i], out.results[i]);
    }
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  out.summary = aggregate(out.records);
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

namespace {

void write_list(std::ostream& out, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ";" : "") << v[i];
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "scenario_hash,replicate,seed,scheme,feasible,best_fitness,tau_dl,tau_ul,sum_rate,"
         "gamma_dl_db,gamma_ul_db,gamma_rad_db\n";
  const auto old_precision = out.precision();
  out << std::setprecision(12);
  for (const auto& r : records) {
    out << r.scenario_hash << ',' << r.replicate << ',' << r.seed << ',' << to_string(r.scheme) << ','
        << (r.feasible ? 1 : 0) << ',' << r.best_fitness << ',' << r.tau_dl << ',' << r.tau_ul << ','
        << r.sum_rate << ',';
    write_list(out, r.gamma_dl_db);
    out << ',';
    write_list(out, r.gamma_ul_db);
    out << ',';
    write_list(out, r.gamma_rad_db);
    out << '\n';
  }
  out.precision(old_precision);
}

void write_aggregate_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "axis,value,scheme,replicates,feasible,mean_sum_rate,std_sum_rate,mean_tau_dl,mean_tau_ul,mean_fitness\n";
  const auto old_precision = out.precision();
  out << std::setprecision(12);
  for (const auto& r : rows) {
    const auto& a = r.summary;
    out << r.axis << ',' << r.value << ',' << to_string(r.scheme) << ',' << a.count << ',' << a.feasible_count << ','
        << a.mean_sum_rate << ',' << a.std_sum_rate << ',' << a.mean_tau_dl << ',' << a.mean_tau_ul << ','
        << a.mean_fitness << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fdisac
