#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "gridpolicy/archive_io.hpp"
#include "gridpolicy/data.hpp"
#include "gridpolicy/environment.hpp"
#include "gridpolicy/numeric_text.hpp"
#include "gridpolicy/svg.hpp"
#include "gridpolicy/training.hpp"
#include "gridpolicy/tvsa.hpp"
#include "manifest.hpp"

namespace gridpolicy::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Bad flags, files or content supplied by the user.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("file not found: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::vector<Scenario> scenarios_from(const fs::path& path) { return load_scenarios(path); }

MicrogridConfig microgrid_from(const json& doc) {
  if (doc.contains("microgrid")) return doc.at("microgrid").get<MicrogridConfig>();
  return default_config(season_from_string(doc.value("season", std::string("winter"))));
}

std::optional<std::size_t> env_workers() {
  const char* v = std::getenv(kWorkersEnv);
  if (!v || !*v) return std::nullopt;
  const auto parsed = parse_double(v);
  if (!parsed || *parsed < 1 || *parsed != static_cast<double>(static_cast<std::size_t>(*parsed))) {
    throw InputError(std::string(kWorkersEnv) + " must be a positive integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(*parsed);
}

std::string objective_line(const std::string& name, double v) { return name + ": " + format_double(v) + "\n"; }

// A policy plus the microgrid it was trained for, from either a policy file
// or one row of an archive.
struct LoadedPolicy {
  PolicyNetwork policy;
  std::optional<MicrogridConfig> microgrid;
  std::vector<fs::path> sources;
};

struct PolicySource {
  std::string policy_path;
  std::string archive_path;
  std::size_t row = 0;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--policy", policy_path, "Policy JSON file");
    cmd->add_option("--archive", archive_path, "Archive CSV (with its JSON sidecar)");
    cmd->add_option("--row", row, "0-based archive row");
  }

  LoadedPolicy load() const {
    if (policy_path.empty() == archive_path.empty()) throw InputError("give exactly one of --policy or --archive");
    if (!policy_path.empty()) {
      const json doc = read_json_file(policy_path);
      std::optional<MicrogridConfig> mg;
      if (doc.contains("microgrid")) mg = doc.at("microgrid").get<MicrogridConfig>();
      return {policy_from_json(doc), mg, {policy_path}};
    }
    if (!fs::exists(archive_path)) throw FileNotFound("file not found: " + archive_path);
    LoadedArchive a = load_archive(archive_path);
    if (row >= a.archive.size()) {
      throw InputError("--row " + std::to_string(row) + " out of range; archive has " +
                       std::to_string(a.archive.size()) + " rows");
    }
    if (!a.sidecar.contains("architecture") || !a.sidecar.contains("normalization")) {
      throw InputError(sidecar_path(archive_path).string() + " lacks architecture/normalization entries");
    }
    const auto arch = a.sidecar.at("architecture").get<Architecture>();
    const auto norm = a.sidecar.at("normalization").get<InputNormalization>();
    std::optional<MicrogridConfig> mg;
    if (a.sidecar.contains("microgrid")) mg = a.sidecar.at("microgrid").get<MicrogridConfig>();
    return {decode(a.archive.members()[row].genome, arch, norm), mg, {archive_path, sidecar_path(archive_path)}};
  }
};

MicrogridConfig resolve_microgrid(const std::string& config_path, const LoadedPolicy& lp, std::vector<fs::path>& inputs) {
  MicrogridConfig mg;
  if (!config_path.empty()) {
    mg = microgrid_from(read_json_file(config_path));
    inputs.push_back(config_path);
  } else if (lp.microgrid) {
    mg = *lp.microgrid;
  } else {
    mg = default_config(Season::kWinter);
  }
  const Architecture want = policy_architecture(mg, lp.policy.architecture().hidden_dim);
  const Architecture& have = lp.policy.architecture();
  if (have.input_dim != want.input_dim || have.output_dim != want.output_dim) {
    throw std::domain_error("policy architecture (" + std::to_string(have.input_dim) + "," +
                            std::to_string(have.hidden_dim) + "," + std::to_string(have.output_dim) +
                            ") does not match the " + to_string(mg.season) + " microgrid, which needs " +
                            std::to_string(want.input_dim) + " inputs and " + std::to_string(want.output_dim) +
                            " outputs");
  }
  return mg;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string config_path;
  std::string scenarios_path;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> nfe;
  std::optional<std::size_t> workers;
  std::string out;
};

int cmd_train(const TrainArgs& a, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "train";
  json doc = json::object();
  if (!a.config_path.empty()) {
    doc = read_json_file(a.config_path);
    manifest.inputs.push_back(a.config_path);
  }
  const MicrogridConfig mg = microgrid_from(doc);
  std::vector<Scenario> scenarios = scenarios_from(a.scenarios_path);
  manifest.inputs.push_back(a.scenarios_path);

  const PolicyProblem problem = PolicyProblem::make(mg, std::move(scenarios), doc.value("hidden_dim", std::size_t{15}));
  moea::MoeaConfig mc = default_moea_config(problem.architecture.weight_count());
  if (doc.contains("optimizer")) from_json(doc.at("optimizer"), mc);
  mc.num_variables = problem.architecture.weight_count();
  if (a.nfe) mc.max_nfe = *a.nfe;
  mc.validate();

  std::vector<std::uint64_t> seeds = a.seeds;
  if (seeds.empty()) seeds = doc.value("seeds", std::vector<std::uint64_t>{1});
  std::size_t lanes = doc.value("parallel_seeds", std::size_t{1});
  if (const auto env = env_workers()) lanes = *env;
  if (a.workers) lanes = *a.workers;

  const TrainingResult result = train(mc, policy_evaluator(problem), seeds, lanes);

  json effective = {{"microgrid", mg},
                    {"hidden_dim", problem.architecture.hidden_dim},
                    {"optimizer", mc},
                    {"seeds", seeds}};
  manifest.config = effective;
  manifest.seeds = seeds;
  json runs = json::array();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto& st = result.runs[i].stats;
    json uses = json::object();
    for (std::size_t k = 0; k < moea::kOperatorCount; ++k) {
      uses[moea::to_string(moea::kSearchOperators[k])] = st.operator_uses[k];
    }
    runs.push_back({{"seed", seeds[i]},
                    {"nfe", st.nfe},
                    {"restarts", st.restarts},
                    {"archive_size", result.runs[i].archive.size()},
                    {"operator_uses", uses}});
    manifest.nfe += st.nfe;
  }

  auto sidecar = [&](const std::vector<std::uint64_t>& run_seeds, std::size_t nfe, const json& run_info) {
    return json{{"objectives", policy_objective_names()},
                {"epsilons", mc.epsilons},
                {"optimizer", mc},
                {"seeds", run_seeds},
                {"nfe", nfe},
                {"runs", run_info},
                {"architecture", problem.architecture},
                {"normalization", problem.normalization},
                {"microgrid", mg}};
  };

  const fs::path out_path = a.out;
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  const json finished = manifest.finish();
  if (seeds.size() > 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      fs::path p = out_path;
      p.replace_filename(out_path.stem().string() + ".seed" + std::to_string(seeds[i]) + ".csv");
      json sc = sidecar({seeds[i]}, result.runs[i].stats.nfe, json::array({runs[i]}));
      sc["manifest"] = finished;
      save_archive(p, result.runs[i].archive, policy_objective_names(), sc);
    }
  }
  json sc = sidecar(seeds, manifest.nfe, runs);
  sc["manifest"] = finished;
  save_archive(out_path, result.merged, policy_objective_names(), sc);

  std::size_t feasible = 0;
  for (const auto& s : result.merged.members()) feasible += s.feasible() ? 1 : 0;
  out << "archive: " << out_path.string() << "\n"
      << "solutions: " << result.merged.size() << " (" << feasible << " feasible)\n"
      << "nfe: " << manifest.nfe << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- merge

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out_path, std::ostream& out) {
  if (inputs.empty()) throw InputError("merge needs at least one archive");
  RunManifest manifest;
  manifest.command = "merge";
  std::vector<moea::Archive> archives;
  json first_sidecar;
  std::vector<std::uint64_t> seeds;
  for (const std::string& p : inputs) {
    if (!fs::exists(p)) throw FileNotFound("file not found: " + p);
    LoadedArchive la = load_archive(p);
    if (archives.empty()) {
      first_sidecar = la.sidecar;
    } else {
      for (const char* key : {"architecture", "normalization", "objectives"}) {
        if (la.sidecar.value(key, json()) != first_sidecar.value(key, json())) {
          throw InputError(p + ": '" + key + "' differs from " + inputs.front());
        }
      }
    }
    for (auto s : la.sidecar.value("seeds", std::vector<std::uint64_t>{})) seeds.push_back(s);
    manifest.nfe += la.sidecar.value("nfe", std::size_t{0});
    archives.push_back(std::move(la.archive));
    manifest.inputs.push_back(p);
    manifest.inputs.push_back(sidecar_path(p));
  }
  const moea::Archive merged = moea::merge_archives(archives);

  json sc = first_sidecar;
  sc.erase("manifest");
  sc.erase("runs");
  sc["seeds"] = seeds;
  sc["nfe"] = manifest.nfe;
  sc["merged_from"] = inputs;
  manifest.seeds = seeds;
  manifest.config = {{"inputs", inputs}};
  sc["manifest"] = manifest.finish();
  const auto names = first_sidecar.value("objectives", policy_objective_names());
  if (fs::path(out_path).has_parent_path()) fs::create_directories(fs::path(out_path).parent_path());
  save_archive(out_path, merged, names, sc);
  out << "archive: " << out_path << "\nsolutions: " << merged.size() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const PolicySource& src, const std::string& config_path, const std::string& scenarios_path,
                 const std::string& trace_out, const std::string& export_policy, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "evaluate";
  const LoadedPolicy lp = src.load();
  manifest.inputs = lp.sources;
  const MicrogridConfig mg = resolve_microgrid(config_path, lp, manifest.inputs);
  const std::vector<Scenario> scenarios = scenarios_from(scenarios_path);
  manifest.inputs.push_back(scenarios_path);

  const bool trace = !trace_out.empty();
  const EvaluationResult r = evaluate_policy(lp.policy, scenarios, mg, trace);
  out << "scenarios: " << scenarios.size() << "\n"
      << objective_line("cost_usd", r.objectives.cost) << objective_line("emission_t", r.objectives.emission_t)
      << objective_line("heat_waste", r.objectives.heat_waste) << objective_line("violation", r.constraint_violation);

  manifest.config = {{"microgrid", mg}, {"archive_row", src.archive_path.empty() ? json() : json(src.row)}};
  if (trace) {
    std::ostringstream csv;
    write_trace_csv(csv, scenarios, r, mg);
    write_text(trace_out, csv.str());
    json meta = {{"objectives",
                  {{"cost_usd", r.objectives.cost},
                   {"emission_t", r.objectives.emission_t},
                   {"heat_waste", r.objectives.heat_waste},
                   {"violation", r.constraint_violation}}},
                 {"manifest", manifest.finish()}};
    write_json(sidecar_path(trace_out), meta);
    out << "trace: " << trace_out << "\n";
  }
  if (!export_policy.empty()) {
    json doc = policy_to_json(lp.policy);
    doc["microgrid"] = mg;
    write_json(export_policy, doc);
    out << "policy: " << export_policy << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- tvsa

int cmd_tvsa(const PolicySource& src, const std::string& config_path, const std::string& scenarios_path,
             const std::string& out_dir, const std::string& point_name, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "tvsa";
  const LoadedPolicy lp = src.load();
  manifest.inputs = lp.sources;
  const MicrogridConfig mg = resolve_microgrid(config_path, lp, manifest.inputs);
  const std::vector<Scenario> scenarios = scenarios_from(scenarios_path);
  manifest.inputs.push_back(scenarios_path);
  if (scenarios.size() < 2) throw InputError("tvsa needs at least 2 scenarios, got " + std::to_string(scenarios.size()));

  tvsa::GradientPoint point;
  try {
    point = tvsa::gradient_point_from_string(point_name);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const tvsa::Report report = tvsa::analyze(lp.policy, scenarios, mg, point);

  const fs::path dir = out_dir;
  fs::create_directories(dir);
  std::ostringstream csv;
  tvsa::write_report_csv(csv, report);
  write_text(dir / "tvsa.csv", csv.str());
  for (std::size_t k = 0; k < report.decision_names.size(); ++k) {
    write_text(dir / ("tvsa_" + report.decision_names[k] + ".svg"), tvsa::render_decision_svg(report, k));
  }
  manifest.config = {{"microgrid", mg}, {"gradient_point", tvsa::to_string(point)}};
  write_json(dir / "manifest.json", manifest.finish());
  out << "tvsa: " << (dir / "tvsa.csv").string() << " and " << report.decision_names.size() << " SVG files\n";
  return kExitOk;
}

// ---------------------------------------------------------------- report

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

int cmd_report(const std::string& archive_path, const std::string& out_dir, const std::string& reference,
               const std::string& baseline_scenarios, std::ostream& out) {
  RunManifest manifest;
  manifest.command = "report";
  if (!fs::exists(archive_path)) throw FileNotFound("file not found: " + archive_path);
  const LoadedArchive la = load_archive(archive_path);
  manifest.inputs = {archive_path, sidecar_path(archive_path)};
  const moea::Archive& archive = la.archive;
  if (archive.empty()) throw InputError(archive_path + ": archive is empty");
  if (archive.epsilons().size() != 3) throw InputError("report expects three objectives");

  std::optional<svg::Point3> ref;
  std::string ref_label;
  if (!reference.empty()) {
    const auto parts = split_commas(reference);
    std::vector<double> v;
    for (const auto& p : parts) {
      const auto d = parse_double(p);
      if (!d) throw InputError("--reference expects three comma-separated numbers");
      v.push_back(*d);
    }
    if (v.size() != 3) throw InputError("--reference expects three comma-separated numbers");
    ref = svg::Point3{v[0], v[1], v[2]};
    ref_label = "given";
  } else if (!baseline_scenarios.empty()) {
    if (!la.sidecar.contains("architecture") || !la.sidecar.contains("normalization")) {
      throw InputError("--baseline-scenarios needs an archive sidecar with architecture and normalization");
    }
    const MicrogridConfig mg = la.sidecar.contains("microgrid") ? la.sidecar.at("microgrid").get<MicrogridConfig>()
                                                                 : default_config(Season::kWinter);
    const auto net = PolicyNetwork::zeros(la.sidecar.at("architecture").get<Architecture>(),
                                          la.sidecar.at("normalization").get<InputNormalization>());
    const auto r = evaluate_policy(net, scenarios_from(baseline_scenarios), mg);
    manifest.inputs.push_back(baseline_scenarios);
    ref = svg::Point3{r.objectives.cost, r.objectives.emission_t, r.objectives.heat_waste};
    ref_label = "zero_policy";
  }

  const auto names = la.sidecar.value("objectives", policy_objective_names());
  std::vector<svg::Point3> points;
  for (const auto& s : archive.members()) points.push_back({s.objectives[0], s.objectives[1], s.objectives[2]});

  std::array<std::size_t, 3> best{};
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t m = 0; m < 3; ++m) {
      if (archive.members()[i].objectives[m] < archive.members()[best[m]].objectives[m]) best[m] = i;
    }
  }

  std::ostringstream csv;
  csv << "row," << names[0] << ',' << names[1] << ',' << names[2] << ",violation,operator,representative\n";
  for (std::size_t i = 0; i < archive.size(); ++i) {
    const auto& s = archive.members()[i];
    std::string role;
    for (std::size_t m = 0; m < 3; ++m) {
      if (best[m] == i) role += (role.empty() ? "" : ";") + ("min_" + names[m]);
    }
    csv << i << ',' << format_double(s.objectives[0]) << ',' << format_double(s.objectives[1]) << ','
        << format_double(s.objectives[2]) << ',' << format_double(s.violation) << ',' << moea::to_string(s.origin)
        << ',' << role << '\n';
  }
  if (ref) {
    csv << "reference_" << ref_label << ',' << format_double(ref->x) << ',' << format_double(ref->y) << ','
        << format_double(ref->z) << ",,,\n";
  }

  const fs::path dir = out_dir;
  fs::create_directories(dir);
  write_text(dir / "summary.csv", csv.str());
  write_text(dir / "pareto.svg",
             svg::pareto_panels("Approximate Pareto front (" + std::to_string(points.size()) + " solutions)",
                                {names[0], names[1], names[2]}, points, ref));
  manifest.config = {{"reference", ref ? json::array({ref->x, ref->y, ref->z}) : json()}};
  write_json(dir / "manifest.json", manifest.finish());
  out << "report: " << (dir / "summary.csv").string() << ", " << (dir / "pareto.svg").string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- generate

int cmd_generate(const std::string& spec_path, const std::string& season, std::optional<std::size_t> days,
                 std::optional<std::uint64_t> seed, const std::string& out_path, std::ostream& out) {
  SyntheticSpec spec = default_synthetic_spec(season_from_string(season));
  if (!spec_path.empty()) {
    const json doc = read_json_file(spec_path);
    spec = doc.get<SyntheticSpec>();
  }
  if (days) spec.days = *days;
  if (seed) spec.seed = *seed;
  const auto scenarios = generate_synthetic(spec);
  if (fs::path(out_path).has_parent_path()) fs::create_directories(fs::path(out_path).parent_path());
  save_scenarios(out_path, scenarios);
  write_json(sidecar_path(out_path), {{"synthetic_spec", spec}});
  out << "scenarios: " << out_path << " (" << scenarios.size() << " days)\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Train, evaluate and explain multi-objective microgrid dispatch policies", "gridpolicy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GRIDPOLICY_VERSION);

  TrainArgs ta;
  std::vector<std::uint64_t> seed_list;
  std::size_t nfe = 0;
  std::size_t workers = 0;
  auto* train_cmd = app.add_subcommand("train", "Run the optimizer over one or more seeds and merge the archives");
  train_cmd->add_option("--config", ta.config_path, "Run configuration JSON");
  train_cmd->add_option("--scenarios", ta.scenarios_path, "Training scenarios CSV")->required();
  train_cmd->add_option("--seed", seed_list, "Random seed; repeat for several runs");
  auto* nfe_opt = train_cmd->add_option("--nfe", nfe, "Evaluations per seed")->check(CLI::PositiveNumber);
  auto* workers_opt =
      train_cmd->add_option("--workers", workers, "Seeds run concurrently (overrides GRIDPOLICY_WORKERS)")
          ->check(CLI::PositiveNumber);
  train_cmd->add_option("--out", ta.out, "Archive CSV to write")->required();

  std::vector<std::string> merge_inputs;
  std::string merge_out;
  auto* merge_cmd = app.add_subcommand("merge", "Merge archives into one joint epsilon-archive");
  merge_cmd->add_option("archives", merge_inputs, "Archive CSV files")->required();
  merge_cmd->add_option("--out", merge_out, "Joint archive CSV")->required();

  PolicySource eval_src;
  std::string eval_config, eval_scenarios, eval_out, eval_export;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate one policy on a scenario set");
  eval_src.add_options(eval_cmd);
  eval_cmd->add_option("--config", eval_config, "Run configuration JSON (microgrid section)");
  eval_cmd->add_option("--scenarios", eval_scenarios, "Scenarios CSV")->required();
  eval_cmd->add_option("--out", eval_out, "Hourly trace CSV");
  eval_cmd->add_option("--export-policy", eval_export, "Write the policy as a standalone JSON file");

  PolicySource tvsa_src;
  std::string tvsa_config, tvsa_scenarios, tvsa_out, tvsa_point = "ensemble_mean";
  auto* tvsa_cmd = app.add_subcommand("tvsa", "Time-varying sensitivity analysis of one policy");
  tvsa_src.add_options(tvsa_cmd);
  tvsa_cmd->add_option("--config", tvsa_config, "Run configuration JSON (microgrid section)");
  tvsa_cmd->add_option("--scenarios", tvsa_scenarios, "Scenario ensemble CSV")->required();
  tvsa_cmd->add_option("--out", tvsa_out, "Output directory")->required();
  tvsa_cmd->add_option("--gradient-point", tvsa_point, "ensemble_mean or scenario_average");

  std::string report_archive, report_out, report_reference, report_baseline;
  auto* report_cmd = app.add_subcommand("report", "Pareto scatter and summary table for an archive");
  report_cmd->add_option("--archive", report_archive, "Archive CSV")->required();
  report_cmd->add_option("--out", report_out, "Output directory")->required();
  report_cmd->add_option("--reference", report_reference, "Reference objectives 'cost,emission,heat_waste'");
  report_cmd->add_option("--baseline-scenarios", report_baseline,
                         "Use the zero-weight policy on these scenarios as the reference");

  std::string gen_spec, gen_season = "winter", gen_out;
  std::size_t gen_days = 0;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic scenario CSV");
  gen_cmd->add_option("--spec", gen_spec, "Synthetic spec JSON");
  gen_cmd->add_option("--season", gen_season, "winter or summer defaults");
  auto* days_opt = gen_cmd->add_option("--days", gen_days, "Number of days")->check(CLI::PositiveNumber);
  auto* gseed_opt = gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--out", gen_out, "Scenario CSV to write")->required();

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (train_cmd->parsed()) {
      ta.seeds = seed_list;
      if (nfe_opt->count()) ta.nfe = nfe;
      if (workers_opt->count()) ta.workers = workers;
      return cmd_train(ta, out);
    }
    if (merge_cmd->parsed()) return cmd_merge(merge_inputs, merge_out, out);
    if (eval_cmd->parsed()) return cmd_evaluate(eval_src, eval_config, eval_scenarios, eval_out, eval_export, out);
    if (tvsa_cmd->parsed()) return cmd_tvsa(tvsa_src, tvsa_config, tvsa_scenarios, tvsa_out, tvsa_point, out);
    if (report_cmd->parsed()) return cmd_report(report_archive, report_out, report_reference, report_baseline, out);
    if (gen_cmd->parsed()) {
      return cmd_generate(gen_spec, gen_season,
                          days_opt->count() ? std::optional<std::size_t>(gen_days) : std::nullopt,
                          gseed_opt->count() ? std::optional<std::uint64_t>(gen_seed) : std::nullopt, gen_out, out);
    }
  } catch (const FileNotFound& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace gridpolicy::cli
