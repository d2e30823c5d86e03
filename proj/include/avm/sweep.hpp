#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "avm/analysis.hpp"
#include "avm/engines.hpp"
#include "avm/generator.hpp"

namespace avm {

/// Nested alpha x u sweep with replicates.
///
/// For the mass-action semantics the swept alpha is the rewire base rate
/// (both kappas); adopt rates stay as configured. For every other semantics
/// it is the rewiring probability.
struct SweepSpec {
  EngineConfig engine;
  std::vector<double> alphas;
  std::vector<double> us;
  std::size_t runs_per_config = 0;
  InitSpec init;
  std::uint64_t base_seed = 1;
  unsigned jobs = 1;
  bool wallclock = false;

  std::size_t n_configs() const noexcept { return alphas.size() * us.size(); }
  /// Throws ConfigError naming the offending CLI flag.
  void validate() const;
};

/// Exact CSV header of sweep output.
inline constexpr std::string_view kCsvHeader =
    "model,alpha,u,n_agents,n_edges,run,seed,steps,effective_events,sim_time,absorb_reason,"
    "minority_frac_final,n_components,fragmented,wallclock_ms";

/// Engine configuration for one (alpha) point of the sweep.
EngineConfig engine_for(const SweepSpec& spec, double alpha);

/// Replicate `run` of configuration `config` (alpha-major, u-minor).
SweepRecord run_replicate(const SweepSpec& spec, std::size_t config, std::uint64_t run);

/// All replicates in (config, run) order, independent of `jobs`.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

/// Shortest round-trip decimal form.
std::string format_double(double x);
void write_csv(std::ostream& out, const std::vector<SweepRecord>& rows);
std::string csv_row(const SweepRecord& r);

struct ConfigMean {
  double alpha = 0.0;
  double u = 0.0;
  std::size_t runs = 0;
  double mean_minority = 0.0;
};

/// Per-(alpha, u) mean final minority fraction, in first-appearance order.
std::vector<ConfigMean> config_means(const std::vector<SweepRecord>& rows);

/// First alpha at which the mean series (ascending alpha) reaches `level`,
/// linearly interpolated between grid points; nullopt if never.
std::optional<double> crossing_alpha(const std::vector<std::pair<double, double>>& alpha_mean, double level);

}  // namespace avm
