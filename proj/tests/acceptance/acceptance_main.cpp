// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gridpolicy/archive_io.hpp"
#include "gridpolicy/benchmarks.hpp"
#include "gridpolicy/data.hpp"
#include "gridpolicy/environment.hpp"
#include "gridpolicy/grid_model.hpp"
#include "gridpolicy/moea.hpp"
#include "gridpolicy/training.hpp"
#include "gridpolicy/tvsa.hpp"
#include "support/helpers.hpp"

using namespace gridpolicy;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

bool report(int id, const std::string& name, double limit_s, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  bool pass = v.pass;
  std::string timing = std::to_string(s).substr(0, 6) + " s";
  if (limit_s > 0) {
    timing += " / limit " + std::to_string(static_cast<int>(limit_s)) + " s";
    if (s >= limit_s) pass = false;
  }
  std::cout << "criterion " << id << " " << (pass ? "PASS" : "FAIL") << "  " << name << ": " << v.detail << " ["
            << timing << "]" << std::endl;
  return pass;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ------------------------------------------------------------ criterion 1

Verdict component_models() {
  const MicrogridConfig c = default_config(Season::kWinter);
  struct Case {
    const char* what;
    double got;
    double want;
  };
  const std::vector<Case> cases{
      {"efficiency(16000)", chp_efficiency(16000, c.chp[0]), 0.705354},
      {"breakeven", c.chp[0].b_q / c.chp[0].a_q, 55.99269},
      {"boiler(100)", boiler_fuel(100, c.boiler, true), 122.4542},
      {"st(300)", steam_turbine_power(300, c.steam_turbine), 5462.37},
      {"st(215)", steam_turbine_power(215, c.steam_turbine), 8842.205},
  };
  Verdict v;
  double worst = 0;
  for (const Case& k : cases) {
    const double err = std::abs(k.got - k.want);
    worst = std::max(worst, err);
    if (!(err < 1e-6)) {
      v.pass = false;
      v.detail += std::string(k.what) + " off by " + fmt(err) + "; ";
    }
  }
  // Breakeven sanity: no extra steam fuel up to it, some right after.
  if (chp_steam_fuel(55.99, c.chp[0]) != 0.0 || !(chp_steam_fuel(56.0, c.chp[0]) > 0.0)) {
    v.pass = false;
    v.detail += "steam-fuel breakeven not at 55.99; ";
  }
  v.detail += std::to_string(cases.size()) + " worked examples, max abs error " + fmt(worst);
  return v;
}

// ------------------------------------------------------------ criterion 2

Verdict oracle_equivalence() {
  std::mt19937_64 rng(20190115);
  double worst = 0;
  int n = 0;
  for (int i = 0; i < 20; ++i) {
    const bool summer = i % 2 == 1;
    const MicrogridConfig mg = default_config(summer ? Season::kSummer : Season::kWinter);
    Scenario s = testing::random_scenario(rng, summer ? "2019-07-01" : "2019-01-15");
    if (i % 3 == 0) {
      Action init;
      init.chp = {{true, 12500, 40}, {i % 4 == 0, i % 4 == 0 ? 15500.0 : 0.0, 0}};
      init.boiler_steam_klbh = 100;
      s.initial_action = init;
    }
    const auto arch = policy_architecture(mg);
    InputNormalization norm = InputNormalization::fit(std::vector<Scenario>{s});
    const PolicyNetwork net(arch, norm, testing::random_weights(rng, arch.weight_count(), 2.5));
    const DayResult d = simulate_day(net, s, mg);
    const oracle::DayTotals o = oracle::simulate(testing::to_oracle(net), testing::to_oracle(s), testing::oracle_start(s), summer);
    worst = std::max({worst, std::abs(d.objectives.cost - o.cost), std::abs(d.objectives.emission_t - o.emission_t),
                      std::abs(d.objectives.heat_waste - o.waste)});
    ++n;
  }
  return {worst < 1e-9, std::to_string(n) + " random scenarios (winter and summer), max abs objective gap " + fmt(worst)};
}

// ------------------------------------------------------------ criterion 3

Verdict feasibility_invariants() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t violations = 0;
  double worst_residual = 0;
  const int cases = 10000;
  for (int i = 0; i < cases; ++i) {
    const bool summer = u(rng) < 0.5;
    const MicrogridConfig mg = default_config(summer ? Season::kSummer : Season::kWinter);
    Scenario s = testing::random_scenario(rng, summer ? "2019-07-01" : "2019-01-15");
    Action init;
    for (std::size_t c = 0; c < 2; ++c) {
      const bool on = !summer || c == 0 || u(rng) < 0.5;
      init.chp.push_back({on, on ? 12000 + 4000 * u(rng) : 0.0, 0.0});
    }
    init.boiler_steam_klbh = 540 * u(rng);
    s.initial_action = init;
    const auto arch = policy_architecture(mg);
    const PolicyNetwork net(arch, InputNormalization::fit(std::vector<Scenario>{s}),
                            testing::random_weights(rng, arch.weight_count(), 4.0));
    const int t = static_cast<int>(rng() % 24);
    const DayResult day = simulate_day(net, s, mg, true);
    const HourOutcome& h = day.trace[static_cast<std::size_t>(t)];
    const Action& prev = t == 0 ? init : day.trace[static_cast<std::size_t>(t - 1)].action;
    const Action& a = h.action;

    for (std::size_t c = 0; c < 2; ++c) {
      const auto& d = a.chp[c];
      const auto& p = mg.chp[c];
      if (!d.on) {
        if (d.power_kw != 0 || d.steam_klbh != 0) ++violations;
        if (!summer || c == 0) ++violations;  // only switchable units may be off
        continue;
      }
      if (d.power_kw < p.p_min_kw || d.power_kw > p.p_max_kw) ++violations;
      if (prev.chp[c].on) {
        const double step = d.power_kw - prev.chp[c].power_kw;
        if (step > p.ramp_up_kw || step < p.ramp_down_kw) ++violations;
      }
      if (d.steam_klbh < p.q_min_klbh || d.steam_klbh > p.q_max_klbh) ++violations;
    }
    if (a.boiler_on) {
      if (a.boiler_steam_klbh < mg.boiler.q_min_klbh || a.boiler_steam_klbh > mg.boiler.q_max_klbh) ++violations;
    } else if (a.boiler_steam_klbh != 0 || !summer) {
      ++violations;
    }

    const HiddenState& w = s.hours[static_cast<std::size_t>(t)].hidden;
    const double residual = h.exchange_kw + a.chp[0].power_kw + a.chp[1].power_kw + h.st_power_kw + w.hydro_output_kw +
                            w.solar_output_kw - w.electric_load_kw;
    worst_residual = std::max(worst_residual, std::abs(residual));
  }
  return {violations == 0 && worst_residual < 1e-9, std::to_string(cases) + " cases, " + std::to_string(violations) +
                                                        " limit violations, max balance residual " + fmt(worst_residual)};
}

// ------------------------------------------------------------ criterion 4

Verdict gradient_check() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  std::size_t compared = 0, failures = 0;
  for (int n = 0; n < 100; ++n) {
    const std::size_t outputs = n % 2 ? 7 : 5;
    const Architecture arch{kPolicyInputs, 15, outputs};
    InputNormalization norm = InputNormalization::identity();
    norm.offset = {-15, 0, 0, 0, -0.01, 0};
    norm.scale = {25, 10, 600, 30, 0.09, 23};
    const PolicyNetwork net(arch, norm, testing::random_weights(rng, arch.weight_count(), 2.0));
    std::vector<double> x(kPolicyInputs);
    for (std::size_t a = 0; a < kPolicyInputs; ++a) x[a] = norm.offset[a] + norm.scale[a] * u(rng);
    const Matrix g = net.input_gradient_raw(x);
    for (std::size_t a = 0; a < kPolicyInputs; ++a) {
      const double h = 1e-5 * norm.scale[a];
      auto xp = x, xm = x;
      xp[a] += h;
      xm[a] -= h;
      const auto up = net.forward_raw(xp);
      const auto um = net.forward_raw(xm);
      for (std::size_t k = 0; k < outputs; ++k) {
        const double fd = (up[k] - um[k]) / (2 * h);
        // Compare in normalized input units: pass within 1e-6 relative or
        // 1e-9 absolute, whichever is looser.
        const double abs_err = std::abs(g(k, a) - fd) * norm.scale[a];
        const double mag = std::max(std::abs(fd), std::abs(g(k, a))) * norm.scale[a];
        worst = std::max(worst, abs_err / std::max(mag, 1e-3));
        if (abs_err > std::max(1e-6 * mag, 1e-9)) ++failures;
        ++compared;
      }
    }
  }
  return {failures == 0, "100 nets, " + std::to_string(compared) + " entries, " + std::to_string(failures) +
                            " outside tolerance, max relative error " + fmt(worst)};
}

// ------------------------------------------------------------ criterion 5

Verdict tvsa_exactness() {
  Verdict v;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z(0, 1);

  // (a) Linear policy u = g.W on an arbitrary correlated ensemble. Var(u)
  // from the samples directly versus g' Sigma g from the library moments.
  double worst_linear = 0;
  for (int trial = 0; trial < 50; ++trial) {
    double mix[5][5];
    for (auto& row : mix)
      for (double& m : row) m = z(rng);
    std::vector<Scenario> ens;
    for (int s = 0; s < 60; ++s) {
      Scenario sc = testing::constant_scenario(20000, 100, add_days("2019-01-01", s));
      double e[5];
      for (double& x : e) x = z(rng);
      auto& o = sc.hours[9].observable;
      double w[5] = {0, 0, 0, 0, 0};
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) w[i] += mix[i][j] * e[j];
      o.temperature_c = w[0];
      o.wind_mps = w[1];
      o.solar_wm2 = w[2];
      o.streamflow_cms = w[3];
      o.prior_day_rt_price = w[4];
      ens.push_back(sc);
    }
    double g[5];
    for (double& x : g) x = z(rng);
    std::vector<double> lin;
    for (const auto& sc : ens) {
      const auto& o = sc.hours[9].observable;
      lin.push_back(g[0] * o.temperature_c + g[1] * o.wind_mps + g[2] * o.solar_wm2 + g[3] * o.streamflow_cms +
                    g[4] * o.prior_day_rt_price);
    }
    double mean = 0;
    for (double x : lin) mean += x;
    mean /= static_cast<double>(lin.size());
    double var = 0;
    for (double x : lin) var += (x - mean) * (x - mean);
    var /= static_cast<double>(lin.size() - 1);

    const tvsa::Moments m = tvsa::ensemble_moments(ens, 9);
    const auto d = tvsa::decompose_variance(std::vector<double>(g, g + 5), m.covariance);
    worst_linear = std::max(worst_linear, std::abs(d.total() - var) / std::max(1.0, var));
  }
  if (!(worst_linear < 1e-9)) v.pass = false;

  // (b) Near-linear sigmoid policy on a 200-scenario synthetic ensemble.
  SyntheticSpec spec = default_synthetic_spec(Season::kWinter);
  spec.days = 200;
  spec.seed = 77;
  const auto ens = generate_synthetic(spec);
  const MicrogridConfig mg = default_config(Season::kWinter);
  const auto arch = policy_architecture(mg);
  const PolicyNetwork net(arch, InputNormalization::fit(ens), testing::random_weights(rng, arch.weight_count(), 0.5));
  const tvsa::Report r = tvsa::analyze(net, ens, mg);
  double worst_rel = 0;
  double worst_share = 0;
  for (const tvsa::Cell& c : r.cells) {
    worst_rel = std::max(worst_rel, std::abs(c.decomposed_variance - c.empirical_variance) / c.empirical_variance);
    if (c.flagged()) continue;
    double s = 0;
    for (double x : c.first_normalized) s += std::abs(x);
    for (const auto& p : c.pairs) s += std::abs(p.normalized);
    worst_share = std::max(worst_share, std::abs(s - 1.0));
  }
  if (!(worst_rel <= 0.05) || !(worst_share <= 1e-9)) v.pass = false;
  v.detail = "linear max gap " + fmt(worst_linear) + "; sigmoid worst cell |decomp/empirical - 1| " + fmt(worst_rel) +
             " over " + std::to_string(r.cells.size()) + " cells; share sum error " + fmt(worst_share);
  return v;
}

// ------------------------------------------------------------ criterion 6

std::vector<long> box_of(const moea::Solution& s, const std::vector<double>& eps) {
  std::vector<long> b;
  for (std::size_t i = 0; i < eps.size(); ++i) b.push_back(static_cast<long>(std::floor(s.objectives[i] / eps[i])));
  return b;
}

bool weakly_box_dominates(const std::vector<long>& a, const std::vector<long>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Verdict archive_fuzz() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t insertions = 0, problems = 0;
  const int runs = 20;
  for (int run = 0; run < runs; ++run) {
    const std::size_t m = 2 + run % 3;
    std::vector<double> eps(m);
    for (double& e : eps) e = 0.02 + 0.1 * u(rng);
    moea::Archive archive(eps);
    bool seen_feasible = false;
    double least_violation = INFINITY;
    for (int i = 0; i < 5000; ++i, ++insertions) {
      moea::Solution s;
      double r = 0;
      for (std::size_t k = 0; k < m; ++k) {
        s.objectives.push_back(u(rng) * (1 + run % 4));
        r += s.objectives.back();
      }
      // Drift the front inward so that later points keep displacing members.
      for (double& f : s.objectives) f *= 1.0 - 0.5 * i / 5000.0;
      // Infeasible-only phase first, then a mix.
      s.violation = (i < 500 || u(rng) < 0.3) ? std::floor(10 * u(rng)) / 10 : 0.0;
      if (s.violation == 0) seen_feasible = true;
      least_violation = std::min(least_violation, s.violation);
      const auto res = archive.insert(s);
      const auto& mem = archive.members();

      for (const auto& x : mem) {
        if (seen_feasible ? !x.feasible() : x.violation != least_violation) ++problems;
      }
      if (res.accepted) {
        const auto& fresh = mem.back();
        const auto bf = box_of(fresh, eps);
        for (std::size_t j = 0; j + 1 < mem.size(); ++j) {
          const auto bj = box_of(mem[j], eps);
          if (weakly_box_dominates(bf, bj) || weakly_box_dominates(bj, bf)) ++problems;
        }
      }
    }
    // Full pairwise pass at the end of each run.
    const auto& mem = archive.members();
    for (std::size_t a = 0; a < mem.size(); ++a)
      for (std::size_t b = a + 1; b < mem.size(); ++b) {
        const auto ba = box_of(mem[a], eps), bb = box_of(mem[b], eps);
        if (weakly_box_dominates(ba, bb) || weakly_box_dominates(bb, ba)) ++problems;
      }
  }
  return {problems == 0 && insertions >= 100000,
          std::to_string(insertions) + " insertions over " + std::to_string(runs) + " archives, " +
              std::to_string(problems) + " invariant breaches"};
}

// ------------------------------------------------------------ criterion 7

// Distance to the unit-sphere front, computed here rather than by the library.
double sphere_gd(const moea::Archive& a) {
  double s = 0;
  for (const auto& m : a.members()) {
    const double r = std::sqrt(std::inner_product(m.objectives.begin(), m.objectives.end(), m.objectives.begin(), 0.0));
    s += (r - 1) * (r - 1);
  }
  return std::sqrt(s) / static_cast<double>(a.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

struct Dtlz2Outcome {
  double gd_moea = 0;
  double gd_random = 0;
  std::vector<std::string> archives;  // CSV text per seed
};

Dtlz2Outcome run_dtlz2() {
  moea::MoeaConfig c;
  c.num_variables = 12;
  c.lower_bound = 0;
  c.upper_bound = 1;
  c.epsilons = {0.05, 0.05, 0.05};
  c.max_nfe = 10000;
  const auto eval = bench::dtlz2_evaluator(3);
  std::vector<double> gm, gr;
  Dtlz2Outcome out;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto res = moea::run(c, eval, seed);
    gm.push_back(sphere_gd(res.archive));
    gr.push_back(sphere_gd(bench::random_search(eval, 12, 0, 1, c.epsilons, c.max_nfe, seed)));
    std::ostringstream csv;
    write_archive_csv(csv, res.archive, {"f1", "f2", "f3"});
    out.archives.push_back(csv.str());
  }
  out.gd_moea = median(gm);
  out.gd_random = median(gr);
  return out;
}

Dtlz2Outcome dtlz2_first;

Verdict optimizer_efficacy() {
  dtlz2_first = run_dtlz2();
  return {dtlz2_first.gd_moea < dtlz2_first.gd_random,
          "median GD over 5 seeds: moea " + fmt(dtlz2_first.gd_moea) + " vs random search " + fmt(dtlz2_first.gd_random)};
}

// ------------------------------------------------------------ criterion 8

fs::path workdir() { return fs::path(GRIDPOLICY_SCRATCH) / "acceptance"; }

int train_via_cli(const fs::path& out_csv) {
  std::ostringstream o, e;
  const int code = cli::run({"gridpolicy", "train", "--config", (workdir() / "config.json").string(), "--scenarios",
                             (workdir() / "winter7.csv").string(), "--seed", "1", "--seed", "2", "--seed", "3",
                             "--nfe", "20000", "--out", out_csv.string()},
                            o, e);
  if (code != 0) std::cerr << e.str();
  return code;
}

Verdict end_to_end() {
  fs::remove_all(workdir());
  fs::create_directories(workdir());
  SyntheticSpec spec = default_synthetic_spec(Season::kWinter);
  spec.days = 7;
  spec.seed = 2019;
  const auto scenarios = generate_synthetic(spec);
  save_scenarios(workdir() / "winter7.csv", scenarios);
  std::ofstream(workdir() / "config.json") << R"({"season": "winter"})";

  if (train_via_cli(workdir() / "run_a.csv") != 0) return {false, "train command failed"};
  const auto loaded = load_archive(workdir() / "run_a.csv");
  const auto& mem = loaded.archive.members();
  const auto eps = loaded.archive.epsilons();

  // (a) feasible, pairwise non-dominated in box space
  std::size_t feasible = 0;
  bool distinct = true;
  for (std::size_t a = 0; a < mem.size(); ++a) {
    feasible += mem[a].feasible();
    for (std::size_t b = a + 1; b < mem.size(); ++b) {
      const auto ba = box_of(mem[a], eps), bb = box_of(mem[b], eps);
      if (weakly_box_dominates(ba, bb) || weakly_box_dominates(bb, ba)) distinct = false;
    }
  }
  const bool a_ok = distinct && feasible >= 5;

  // (b) weakly better than the zero-weight policy on every objective
  const PolicyProblem problem = PolicyProblem::make(default_config(Season::kWinter), scenarios);
  const auto base = zero_policy_baseline(problem);
  std::size_t improving = 0;
  for (const auto& s : mem) {
    // Re-evaluate independently of the stored objectives.
    const PolicyNetwork net = decode(s.genome, problem.architecture, problem.normalization);
    const auto e = evaluate_policy(net, problem.scenarios, problem.config);
    if (e.objectives.cost <= base.objectives.cost && e.objectives.emission_t <= base.objectives.emission_t &&
        e.objectives.heat_waste <= base.objectives.heat_waste && e.objectives.cost == s.objectives[0])
      ++improving;
  }
  const bool b_ok = improving >= 1;

  // (c) heat reliability everywhere
  const bool c_ok = std::all_of(mem.begin(), mem.end(), [](const moea::Solution& s) { return s.violation == 0.0; });

  return {a_ok && b_ok && c_ok,
          "(a) " + std::to_string(feasible) + "/" + std::to_string(mem.size()) + " feasible, " +
              (distinct ? "distinct boxes" : "box collision") + "; (b) " + std::to_string(improving) +
              " members dominate-or-match baseline (cost " + fmt(base.objectives.cost) + ", " +
              fmt(base.objectives.emission_t) + " t, waste " + fmt(base.objectives.heat_waste) + "); (c) " +
              (c_ok ? "all reliable" : "violations present")};
}

// ------------------------------------------------------------ criterion 9

std::string sidecar_without_manifest(const fs::path& csv) {
  auto j = nlohmann::json::parse(slurp(sidecar_path(csv)));
  j.erase("manifest");
  return j.dump();
}

Verdict reproducibility() {
  const Dtlz2Outcome again = run_dtlz2();
  const bool dtlz_same = again.archives == dtlz2_first.archives;

  if (train_via_cli(workdir() / "run_b.csv") != 0) return {false, "train command failed"};
  bool study_same = true;
  for (const std::string stem : {"run", "run.seed1", "run.seed2", "run.seed3"}) {
    const std::string suffix = stem.substr(3);
    const fs::path a = workdir() / ("run_a" + suffix + ".csv");
    const fs::path b = workdir() / ("run_b" + suffix + ".csv");
    if (!fs::exists(a) || slurp(a) != slurp(b)) study_same = false;
    if (sidecar_without_manifest(a) != sidecar_without_manifest(b)) study_same = false;
  }
  return {dtlz_same && study_same, std::string("DTLZ2 archives ") + (dtlz_same ? "identical" : "differ") +
                                       "; study archives and sidecars (manifest excluded) " +
                                       (study_same ? "identical" : "differ")};
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, "component models", 1, component_models);
  all &= report(2, "simulator oracle", 5, oracle_equivalence);
  all &= report(3, "feasibility and balance", 0, feasibility_invariants);
  all &= report(4, "policy gradient", 0, gradient_check);
  all &= report(5, "tvsa exactness", 0, tvsa_exactness);
  all &= report(6, "archive invariants", 0, archive_fuzz);
  all &= report(7, "optimizer efficacy", 120, optimizer_efficacy);
  all &= report(8, "end-to-end study", 300, end_to_end);
  all &= report(9, "reproducibility", 0, reproducibility);
  std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILED") << std::endl;
  return all ? 0 : 1;
}
