// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Optional arguments select criteria by name (e.g. `acceptance P3 P8`).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "avm/analysis.hpp"
#include "avm/engines.hpp"
#include "avm/generator.hpp"
#include "avm/oracle.hpp"
#include "avm/patterns.hpp"
#include "avm/sweep.hpp"

using namespace avm;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

constexpr Semantics kEngines[] = {Semantics::Dtmc, Semantics::CtmcWeighted, Semantics::CtmcMassAction,
                                  Semantics::CtmcUniformized, Semantics::CtmcLcm};

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string name(Semantics s) { return std::string(to_string(s)); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

VoterGraph random_multigraph(std::size_t n, std::size_t m, RandomStream& rng) {
  std::vector<Opinion> ops(n);
  for (auto& o : ops) o = rng.bernoulli(0.5) ? Opinion::One : Opinion::Zero;
  std::vector<VoterGraph::Edge> edges;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t a = rng.uniform_index(n);
    std::size_t b = rng.uniform_index(n - 1);
    if (b >= a) ++b;
    edges.emplace_back(a, b);
  }
  return VoterGraph(ops, edges);
}

VoterGraph fixture(std::vector<int> ops, std::vector<VoterGraph::Edge> edges) {
  std::vector<Opinion> o;
  for (const int v : ops) o.push_back(v != 0 ? Opinion::One : Opinion::Zero);
  return VoterGraph(o, edges);
}

Verdict p1_conservation() {
  std::size_t checks = 0;
  std::size_t events = 0;
  for (std::uint64_t f = 0; f < 20; ++f) {
    RandomStream init(derive_seed(101, f, 0));
    const std::size_t n = 20 + init.uniform_index(41);
    const VoterGraph g0 = generate(InitSpec{n, 0.2 + 0.03 * static_cast<double>(f), FixedCount{3 * n}}, init);
    for (const Semantics s : kEngines) {
      VoterGraph g = g0;
      EngineConfig cfg;
      cfg.semantics = s;
      cfg.alpha = 0.05 * static_cast<double>(f);
      cfg.max_steps = 1000;
      cfg.count_noop_steps = true;
      cfg.sample_stride = 1;
      cfg.record_events = true;
      RandomStream rng(derive_seed(202, f, static_cast<std::uint64_t>(s)));
      const Trajectory t = run(g, cfg, rng);
      const auto bad = [&](const PatternCounts& c) {
        return c.n_agents() != static_cast<std::int64_t>(n) || c.n_groups() != static_cast<std::int64_t>(3 * n);
      };
      for (const Sample& smp : t.samples) {
        ++checks;
        if (bad(smp.counts)) return {false, name(s) + " changed N_V or N_E at step " + std::to_string(smp.step)};
      }
      for (const TimedEvent& e : t.events) {
        ++events;
        if (bad(e.event.before) || bad(e.event.after)) return {false, name(s) + " event changed N_V or N_E"};
      }
      if (g.n_agents() != n || g.n_groups() != 3 * n || g.recount() != g.counts() || bad(g.recount())) {
        return {false, name(s) + " final graph violates conservation"};
      }
    }
  }
  return {true, "20 fixtures x 5 engines, " + std::to_string(checks) + " step samples, " + std::to_string(events) +
                    " events, N_V and N_E constant"};
}

Verdict p2_counting_identity() {
  RandomStream rng(303);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + rng.uniform_index(11);
    const std::size_t m = rng.uniform_index(21);
    const VoterGraph g = random_multigraph(n, m, rng);
    if (!verify_counting_identity(g)) return {false, "identity fails on graph " + std::to_string(k)};
  }
  return {true, "100 random multigraphs (n <= 12, m <= 20), enumeration equals closed form"};
}

Verdict p3_embedded_chain() {
  const std::vector<VoterGraph> fixtures{
      fixture({1, 1, 0}, {{0, 2}, {1, 2}, {0, 2}}),
      fixture({1, 1, 0, 0}, {{0, 2}, {1, 3}, {0, 3}}),
      fixture({1, 0, 1, 0, 0}, {{0, 1}, {2, 3}, {1, 4}}),
  };
  std::size_t states = 0;
  double worst = 0.0;
  for (const VoterGraph& g0 : fixtures) {
    for (const double alpha : {0.0, 0.3, 0.5, 0.7, 1.0}) {
      const StateSpace sp = enumerate(g0, alpha);
      for (const CanonicalState& s : sp.states) {
        const VoterGraph g = s.to_graph();
        if (g.counts().n_01 == 0) continue;
        ++states;
        EngineConfig cfg;
        cfg.semantics = Semantics::CtmcWeighted;
        cfg.alpha = alpha;
        worst = std::max(worst, max_abs_difference(effective_successors(one_step_exact(g, alpha)),
                                                   ctmc_embedded_successors(g, cfg)));
      }
    }
  }
  return {worst <= 1e-12, std::to_string(states) + " non-absorbed states, max |diff| = " + fmt(worst)};
}

struct AbsorptionCase {
  std::string name;
  VoterGraph g0;
  double alpha;
  Semantics engine;
};

Verdict p4_absorption() {
  constexpr int kRuns = 10000;
  const VoterGraph two = fixture({1, 0}, {{0, 1}});
  const VoterGraph four = fixture({1, 1, 0, 0}, {{0, 2}, {1, 3}});
  std::vector<AbsorptionCase> cases;
  for (const Semantics s : {Semantics::Dtmc, Semantics::CtmcWeighted}) cases.push_back({"2-agent", two, 0.0, s});
  for (const double alpha : {0.3, 0.7}) {
    for (const Semantics s : {Semantics::Dtmc, Semantics::CtmcWeighted, Semantics::CtmcLcm}) {
      cases.push_back({"4-agent", four, alpha, s});
    }
  }
  std::size_t cells = 0;
  double worst_z = 0.0;
  std::string failures;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const AbsorptionCase& ac = cases[c];
    EnumerateOptions opts;
    // the common-motif chain halts once an opinion has a single holder
    opts.stop_below_two_holders = ac.engine == Semantics::CtmcLcm;
    const StateDistribution exact = absorption_distribution(enumerate(ac.g0, ac.alpha, opts));
    std::map<CanonicalState, int> seen;
    for (int r = 0; r < kRuns; ++r) {
      VoterGraph g = ac.g0;
      EngineConfig cfg;
      cfg.semantics = ac.engine;
      cfg.alpha = ac.alpha;
      RandomStream rng(derive_seed(404, c, static_cast<std::uint64_t>(r)));
      run(g, cfg, rng);
      ++seen[CanonicalState::of(g)];
    }
    for (const auto& [state, count] : seen) {
      if (!exact.contains(state)) {
        failures += " " + ac.name + "/" + name(ac.engine) + " reached a non-absorbing state;";
      }
    }
    for (const auto& [state, p] : exact) {
      ++cells;
      const double sigma = std::sqrt(kRuns * p * (1 - p));
      const double dev = std::abs(seen[state] - kRuns * p);
      const double z = sigma > 0 ? dev / sigma : (dev > 0 ? INFINITY : 0.0);
      worst_z = std::max(worst_z, z);
      if (dev > 3 * sigma) {
        failures += " " + ac.name + " alpha=" + fmt(ac.alpha) + " " + name(ac.engine) + " z=" + fmt(z) + ";";
      }
    }
  }
  if (!failures.empty()) return {false, "outside 3 sigma:" + failures};
  return {true, std::to_string(cases.size()) + " fixture/engine pairs, " + std::to_string(cells) +
                    " absorbing-state cells, 10^4 runs each, max |z| = " + fmt(worst_z)};
}

SweepSpec figure_sweep(Semantics s, std::vector<double> alphas, std::size_t n, std::size_t m, std::size_t runs) {
  SweepSpec spec;
  spec.engine.semantics = s;
  spec.alphas = std::move(alphas);
  spec.us = {0.5};
  spec.runs_per_config = runs;
  spec.init = InitSpec{n, 0.5, FixedCount{m}};
  spec.base_seed = 1;
  spec.jobs = default_jobs();
  return spec;
}

const std::vector<double> kAlphaGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};

std::vector<std::pair<double, double>> mean_series(const SweepSpec& spec) {
  std::vector<std::pair<double, double>> out;
  for (const ConfigMean& m : config_means(run_sweep(spec))) out.emplace_back(m.alpha, m.mean_minority);
  return out;
}

std::string describe(const std::vector<std::pair<double, double>>& series) {
  std::string s;
  for (const auto& [a, m] : series) s += (s.empty() ? "" : " ") + fmt(a) + ":" + fmt(m);
  return s;
}

Verdict p5_phase_transition() {
  const auto series = mean_series(figure_sweep(Semantics::CtmcWeighted, kAlphaGrid, 100, 400, 40));
  const auto cross = crossing_alpha(series, 0.1);
  const bool low = series.front().second < 0.05;
  const bool high = series.back().second > 0.30;
  const bool located = cross && *cross >= 0.3 && *cross <= 0.6;
  return {low && high && located, "means {" + describe(series) + "}, crossing 0.1 at " +
                                      (cross ? fmt(*cross) : std::string("none")) + " (required [0.3, 0.6])"};
}

Verdict p6_lcm_vs_weighted() {
  const auto lcm = mean_series(figure_sweep(Semantics::CtmcLcm, kAlphaGrid, 50, 200, 10));
  const auto m1 = mean_series(figure_sweep(Semantics::CtmcWeighted, kAlphaGrid, 50, 200, 10));
  const auto a = crossing_alpha(lcm, 0.1);
  const auto b = crossing_alpha(m1, 0.1);
  const std::string detail = "ctmc-lcm crossing " + (a ? fmt(*a) : std::string("none")) + ", ctmc-weighted crossing " +
                             (b ? fmt(*b) : std::string("none"));
  if (!a || !b) return {false, detail};
  return {std::abs(*a - *b) <= 0.1, detail + ", |diff| = " + fmt(std::abs(*a - *b)) + " (max 0.1)"};
}

Verdict p7_mass_action() {
  const auto series = mean_series(figure_sweep(Semantics::CtmcMassAction, {1.0, 0.1, 0.01, 0.001}, 100, 400, 40));
  const bool frag = series.front().second > 0.30;
  const bool consensus = series.back().second < 0.05;
  return {frag && consensus, "rewire rate:mean {" + describe(series) + "}"};
}

std::string sweep_csv(const SweepSpec& spec) {
  std::ostringstream out;
  write_csv(out, run_sweep(spec));
  return out.str();
}

Verdict p8_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "avm_acceptance_p8";
  std::filesystem::create_directories(dir);
  std::size_t compared = 0;
  for (const Semantics s : kEngines) {
    SweepSpec spec = figure_sweep(s, {0.2, 0.5}, 40, 120, 5);
    spec.us = {0.3, 0.5};
    spec.jobs = 1;
    const auto path = [&](int k) { return dir / (std::string(to_string(s)) + "_" + std::to_string(k) + ".csv"); };
    for (int k = 0; k < 2; ++k) {
      spec.jobs = k == 0 ? 1 : std::max(2u, default_jobs());
      std::ofstream(path(k), std::ios::binary) << sweep_csv(spec);
    }
    std::ifstream a(path(0), std::ios::binary);
    std::ifstream b(path(1), std::ios::binary);
    const std::string ca((std::istreambuf_iterator<char>(a)), {});
    const std::string cb((std::istreambuf_iterator<char>(b)), {});
    if (ca != cb || ca.empty()) return {false, name(s) + " sweep CSVs differ between re-runs"};
    ++compared;
  }
  const SweepSpec fig = figure_sweep(Semantics::CtmcWeighted, kAlphaGrid, 100, 400, 40);
  if (sweep_csv(fig) != sweep_csv(fig)) return {false, "figure-scale sweep CSVs differ"};
  std::filesystem::remove_all(dir);
  return {true, std::to_string(compared) + " engine sweeps re-run serial vs parallel plus the figure-scale sweep, "
                                           "byte-identical"};
}

struct Criterion {
  const char* id;
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"P1", "conservation", p1_conservation},
      {"P2", "counting identity", p2_counting_identity},
      {"P3", "embedded-chain equivalence", p3_embedded_chain},
      {"P4", "oracle absorption match", p4_absorption},
      {"P5", "phase transition (weighted)", p5_phase_transition},
      {"P6", "common-motif vs weighted threshold", p6_lcm_vs_weighted},
      {"P7", "mass-action bracketing", p7_mass_action},
      {"P8", "determinism", p8_determinism},
  };
  const std::vector<std::string> selected(argv + 1, argv + argc);
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::printf("%s %s %s: %s\n", c.id, v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
