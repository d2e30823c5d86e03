// Command-line front end: single runs and alpha x u sweeps.

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "avm/analysis.hpp"
#include "avm/engines.hpp"
#include "avm/generator.hpp"
#include "avm/graph_json.hpp"
#include "avm/sweep.hpp"
#include "json.hpp"

namespace {

struct CommonFlags {
  std::string model = "ctmc-weighted";
  std::size_t agents = 100;
  std::size_t edges = 400;
  std::optional<double> pair_prob;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = 10'000'000;
  double max_time = std::numeric_limits<double>::infinity();
  bool count_noop_steps = false;
  double kappa_rewire_one = 1.0;
  double kappa_rewire_zero = 1.0;
  double rate_adopt_one = 1.0;
  double rate_adopt_zero = 1.0;
  std::vector<double> uniform_probs;
};

void add_common(CLI::App& app, CommonFlags& f) {
  app.add_option("--model", f.model, "dtmc|ctmc-weighted|ctmc-mass-action|ctmc-uniform|ctmc-lcm")
      ->check(CLI::IsMember({"dtmc", "ctmc-weighted", "ctmc-mass-action", "ctmc-uniform", "ctmc-lcm"}))
      ->capture_default_str();
  app.add_option("--agents", f.agents, "number of agents")->capture_default_str();
  auto* edges = app.add_option("--edges", f.edges, "exact number of initial groups")->capture_default_str();
  app.add_option("--pair-prob", f.pair_prob, "link each agent pair with this probability instead of --edges")
      ->excludes(edges);
  app.add_option("--seed", f.seed, "base seed")->capture_default_str();
  app.add_option("--max-steps", f.max_steps)->capture_default_str();
  app.add_option("--max-time", f.max_time, "CTMC time limit");
  app.add_flag("--count-noop-steps", f.count_noop_steps, "DTMC: count inactive rounds as steps");
  app.add_option("--kappa-rewire-one", f.kappa_rewire_one)->capture_default_str();
  app.add_option("--kappa-rewire-zero", f.kappa_rewire_zero)->capture_default_str();
  app.add_option("--rate-adopt-one", f.rate_adopt_one)->capture_default_str();
  app.add_option("--rate-adopt-zero", f.rate_adopt_zero)->capture_default_str();
  app.add_option("--uniform-probs", f.uniform_probs, "ctmc-uniform: four rule probabilities")->expected(4);
}

avm::EngineConfig engine_config(const CommonFlags& f, double alpha) {
  avm::EngineConfig cfg;
  cfg.semantics = *avm::parse_semantics(f.model);
  cfg.alpha = alpha;
  cfg.rates = {f.kappa_rewire_one, f.kappa_rewire_zero, f.rate_adopt_one, f.rate_adopt_zero};
  if (!f.uniform_probs.empty()) {
    cfg.uniform_probs = avm::RuleProbabilities{f.uniform_probs[0], f.uniform_probs[1], f.uniform_probs[2],
                                               f.uniform_probs[3]};
  }
  cfg.max_steps = f.max_steps;
  cfg.max_time = f.max_time;
  cfg.count_noop_steps = f.count_noop_steps;
  return cfg;
}

avm::InitSpec init_spec(const CommonFlags& f, double u) {
  avm::InitSpec init;
  init.n_agents = f.agents;
  init.u = u;
  if (f.pair_prob) {
    init.edge_mode = avm::PerPair{*f.pair_prob};
  } else {
    init.edge_mode = avm::FixedCount{f.edges};
  }
  return init;
}

nlohmann::json report_json(const avm::ComponentReport& rep, const avm::FinalSummary& fin) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : rep.components) comps.push_back({{"size", c.size}, {"profile", avm::to_string(c.profile)}});
  return {{"absorbed", fin.absorbed},
          {"reason", avm::to_string(fin.reason)},
          {"steps", fin.steps},
          {"effective_events", fin.effective_events},
          {"time", fin.time},
          {"seed", fin.seed},
          {"n_components", rep.n_components},
          {"fragmented", rep.fragmented},
          {"minority_fraction", rep.minority_fraction},
          {"components", comps}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive voter model simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  double run_alpha = 0.5;
  double run_u = 0.5;
  std::string graph_in;
  std::string trajectory_out;
  std::uint64_t sample_stride = 0;
  auto* run_cmd = app.add_subcommand("run", "simulate one trajectory");
  add_common(*run_cmd, run_flags);
  run_cmd->add_option("--alpha", run_alpha, "rewiring probability")->capture_default_str();
  run_cmd->add_option("--u", run_u, "fraction of agents with opinion 0")->capture_default_str();
  run_cmd->add_option("--graph", graph_in, "start from this JSON graph instead of a random one");
  run_cmd->add_option("--trajectory-out", trajectory_out, "write the trajectory as JSON lines");
  run_cmd->add_option("--sample-stride", sample_stride, "record counts every N steps (0: first and last)");

  CommonFlags sweep_flags;
  std::vector<double> alphas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  std::vector<double> us{0.5};
  std::size_t runs = 40;
  unsigned jobs = 1;
  std::string out_path;
  bool wallclock = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "nested alpha x u parameter sweep");
  add_common(*sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--alphas,--alpha", alphas, "alpha grid (rewire rates for ctmc-mass-action)")
      ->delimiter(',');
  sweep_cmd->add_option("--us,--u", us, "initial Zero fractions")->delimiter(',');
  sweep_cmd->add_option("--runs", runs, "replicates per configuration")->capture_default_str();
  sweep_cmd->add_option("--jobs", jobs, "parallel replicates")->capture_default_str();
  sweep_cmd->add_option("--out", out_path, "CSV output path (stdout if omitted)");
  sweep_cmd->add_flag("--wallclock", wallclock, "fill wallclock_ms (makes output run-dependent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version keep exit code 0
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      const avm::EngineConfig cfg = [&] {
        auto c = engine_config(run_flags, run_alpha);
        c.sample_stride = sample_stride;
        c.record_events = !trajectory_out.empty();
        return c;
      }();
      avm::RandomStream rng(run_flags.seed);
      avm::VoterGraph g = graph_in.empty() ? avm::generate(init_spec(run_flags, run_u), rng) : avm::load_graph(graph_in);
      const avm::Trajectory t = avm::run(g, cfg, rng);
      if (!trajectory_out.empty()) {
        std::ofstream tout(trajectory_out);
        if (!tout) throw avm::ConfigError("--trajectory-out: cannot write " + trajectory_out);
        avm::write_trajectory_jsonl(t, tout);
      }
      std::cout << report_json(avm::components(g), t.final).dump() << '\n';
      return 0;
    }

    avm::SweepSpec spec;
    spec.engine = engine_config(sweep_flags, 0.5);
    spec.alphas = alphas;
    spec.us = us;
    spec.runs_per_config = runs;
    spec.init = init_spec(sweep_flags, 0.5);
    spec.base_seed = sweep_flags.seed;
    spec.jobs = jobs;
    spec.wallclock = wallclock;
    spec.validate();

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw avm::ConfigError("--out: cannot write " + out_path);
    }
    const auto rows = avm::run_sweep(spec);
    avm::write_csv(out_path.empty() ? std::cout : file, rows);

    std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
    for (const auto& m : avm::config_means(rows)) {
      summary << "alpha=" << avm::format_double(m.alpha) << " u=" << avm::format_double(m.u) << " runs=" << m.runs
              << " mean_minority=" << avm::format_double(m.mean_minority) << '\n';
    }
    return 0;
  } catch (const avm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
