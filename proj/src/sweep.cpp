#include "avm/sweep.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <sstream>
#include <thread>

namespace avm {

void SweepSpec::validate() const {
  if (alphas.empty()) throw ConfigError("--alphas: at least one value is required");
  if (us.empty()) throw ConfigError("--us: at least one value is required");
  for (const double a : alphas) {
    if (engine.semantics == Semantics::CtmcMassAction) {
      if (!(a > 0.0)) throw ConfigError("--alphas: rewire rates must be positive for ctmc-mass-action");
    } else if (!(a >= 0.0 && a <= 1.0)) {
      throw ConfigError("--alphas: values must lie in [0,1]");
    }
  }
  for (const double u : us) {
    if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("--us: values must lie in [0,1]");
  }
  if (init.n_agents == 0) throw ConfigError("--agents: must be positive");
  if (const auto* f = std::get_if<FixedCount>(&init.edge_mode)) {
    const std::size_t pairs = init.n_agents * (init.n_agents - 1) / 2;
    if (f->edges > pairs) throw ConfigError("--edges: exceeds the number of distinct agent pairs");
  } else {
    const double v = std::get<PerPair>(init.edge_mode).probability;
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("--pair-prob: must lie in [0,1]");
  }
  if (jobs == 0) throw ConfigError("--jobs: must be positive");
  if (engine.max_steps == 0) throw ConfigError("--max-steps: must be positive");
  if (!(engine.max_time > 0.0)) throw ConfigError("--max-time: must be positive");
}

EngineConfig engine_for(const SweepSpec& spec, double alpha) {
  EngineConfig cfg = spec.engine;
  if (cfg.semantics == Semantics::CtmcMassAction) {
    cfg.rates.kappa_rewire_one = alpha;
    cfg.rates.kappa_rewire_zero = alpha;
  } else {
    cfg.alpha = alpha;
  }
  cfg.record_events = false;
  cfg.sample_stride = 0;
  return cfg;
}

SweepRecord run_replicate(const SweepSpec& spec, std::size_t config, std::uint64_t run_index) {
  const double alpha = spec.alphas[config / spec.us.size()];
  const double u = spec.us[config % spec.us.size()];
  const auto started = std::chrono::steady_clock::now();

  RandomStream rng(derive_seed(spec.base_seed, config, run_index));
  InitSpec init = spec.init;
  init.u = u;
  VoterGraph g = generate(init, rng);
  const Trajectory t = run(g, engine_for(spec, alpha), rng);
  SweepRecord rec = summarize(t, g, {alpha, u, run_index});
  if (spec.wallclock) {
    rec.wallclock_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }
  return rec;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t total = spec.n_configs() * spec.runs_per_config;
  std::vector<SweepRecord> rows(total);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      rows[k] = run_replicate(spec, k / spec.runs_per_config, k % spec.runs_per_config);
    }
  };
  const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(spec.jobs, std::max<std::size_t>(total, 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_row(const SweepRecord& r) {
  std::ostringstream os;
  os << r.model << ',' << format_double(r.alpha) << ',' << format_double(r.u) << ',' << r.n_agents << ','
     << r.n_edges << ',' << r.run << ',' << r.seed << ',' << r.steps << ',' << r.effective_events << ','
     << format_double(r.sim_time) << ',' << to_string(r.absorb_reason) << ',' << format_double(r.minority_frac_final)
     << ',' << r.n_components << ',' << (r.fragmented ? "true" : "false") << ',';
  if (r.wallclock_ms) os << format_double(*r.wallclock_ms);
  return os.str();
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) out << csv_row(r) << '\n';
}

std::vector<ConfigMean> config_means(const std::vector<SweepRecord>& rows) {
  std::vector<ConfigMean> out;
  std::map<std::pair<double, double>, std::size_t> slot;
  for (const auto& r : rows) {
    const auto [it, fresh] = slot.emplace(std::pair{r.alpha, r.u}, out.size());
    if (fresh) out.push_back({r.alpha, r.u, 0, 0.0});
    ConfigMean& m = out[it->second];
    ++m.runs;
    m.mean_minority += r.minority_frac_final;
  }
  for (auto& m : out) m.mean_minority /= static_cast<double>(m.runs);
  return out;
}

std::optional<double> crossing_alpha(const std::vector<std::pair<double, double>>& alpha_mean, double level) {
  if (alpha_mean.empty()) return std::nullopt;
  if (alpha_mean.front().second >= level) return alpha_mean.front().first;
  for (std::size_t i = 1; i < alpha_mean.size(); ++i) {
    const auto [a0, m0] = alpha_mean[i - 1];
    const auto [a1, m1] = alpha_mean[i];
    if (m1 >= level) return a0 + (level - m0) / (m1 - m0) * (a1 - a0);
  }
  return std::nullopt;
}

}  // namespace avm
