#include "gridpolicy/training.hpp"

#include <algorithm>
#include <exception>
#include <memory>
#include <optional>
#include <thread>

namespace gridpolicy {

PolicyProblem PolicyProblem::make(MicrogridConfig config, std::vector<Scenario> scenarios, std::size_t hidden_dim) {
  config.validate();
  if (scenarios.empty()) throw std::domain_error("policy problem: no training scenarios");
  PolicyProblem p;
  p.architecture = policy_architecture(config, hidden_dim);
  p.normalization = InputNormalization::fit(scenarios);
  p.config = std::move(config);
  p.scenarios = std::move(scenarios);
  return p;
}

moea::Evaluator policy_evaluator(const PolicyProblem& problem) {
  auto shared = std::make_shared<const PolicyProblem>(problem);
  return [shared](std::span<const double> genome) {
    const PolicyNetwork net = decode(genome, shared->architecture, shared->normalization);
    const EvaluationResult r = evaluate_policy(net, shared->scenarios, shared->config);
    return moea::Evaluation{{r.objectives.cost, r.objectives.emission_t, r.objectives.heat_waste},
                            r.constraint_violation};
  };
}

EvaluationResult zero_policy_baseline(const PolicyProblem& problem) {
  const PolicyNetwork net = PolicyNetwork::zeros(problem.architecture, problem.normalization);
  return evaluate_policy(net, problem.scenarios, problem.config);
}

moea::MoeaConfig default_moea_config(std::size_t num_variables) {
  moea::MoeaConfig c;
  c.num_variables = num_variables;
  return c;
}

TrainingResult train(const moea::MoeaConfig& config, const moea::Evaluator& evaluator,
                     const std::vector<std::uint64_t>& seeds, std::size_t parallel_seeds) {
  if (seeds.empty()) throw std::invalid_argument("train: no seeds");
  config.validate();
  std::vector<std::optional<moea::RunResult>> slots(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  auto run_one = [&](std::size_t i) {
    try {
      slots[i] = moea::run(config, evaluator, seeds[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t lanes = std::clamp<std::size_t>(parallel_seeds, 1, seeds.size());
  if (lanes == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) run_one(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      pool.emplace_back([&, lane] {
        for (std::size_t i = lane; i < seeds.size(); i += lanes) run_one(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TrainingResult result{{}, moea::Archive(config.epsilons)};
  for (auto& s : slots) result.runs.push_back(std::move(*s));
  std::vector<moea::Archive> archives;
  for (const auto& r : result.runs) archives.push_back(r.archive);
  result.merged = moea::merge_archives(archives);
  return result;
}

namespace moea {

void to_json(nlohmann::json& j, const VariationParams& p) {
  j = {{"sbx_rate", p.sbx_rate},         {"sbx_index", p.sbx_index},     {"pm_index", p.pm_index},
       {"pm_rate", p.pm_rate},           {"de_step", p.de_step},         {"de_crossover", p.de_crossover},
       {"pcx_eta", p.pcx_eta},           {"pcx_zeta", p.pcx_zeta},       {"spx_expansion", p.spx_expansion},
       {"undx_zeta", p.undx_zeta},       {"undx_eta", p.undx_eta},       {"um_rate", p.um_rate},
       {"multiparent_arity", p.multiparent_arity}, {"mutate_after_recombination", p.mutate_after_recombination}};
}

void from_json(const nlohmann::json& j, VariationParams& p) {
  p.sbx_rate = j.value("sbx_rate", p.sbx_rate);
  p.sbx_index = j.value("sbx_index", p.sbx_index);
  p.pm_index = j.value("pm_index", p.pm_index);
  p.pm_rate = j.value("pm_rate", p.pm_rate);
  p.de_step = j.value("de_step", p.de_step);
  p.de_crossover = j.value("de_crossover", p.de_crossover);
  p.pcx_eta = j.value("pcx_eta", p.pcx_eta);
  p.pcx_zeta = j.value("pcx_zeta", p.pcx_zeta);
  p.spx_expansion = j.value("spx_expansion", p.spx_expansion);
  p.undx_zeta = j.value("undx_zeta", p.undx_zeta);
  p.undx_eta = j.value("undx_eta", p.undx_eta);
  p.um_rate = j.value("um_rate", p.um_rate);
  p.multiparent_arity = j.value("multiparent_arity", p.multiparent_arity);
  p.mutate_after_recombination = j.value("mutate_after_recombination", p.mutate_after_recombination);
}

void to_json(nlohmann::json& j, const MoeaConfig& c) {
  j = {{"num_variables", c.num_variables},
       {"lower_bound", c.lower_bound},
       {"upper_bound", c.upper_bound},
       {"epsilons", c.epsilons},
       {"population_size", c.population_size},
       {"min_population_size", c.min_population_size},
       {"max_population_size", c.max_population_size},
       {"max_nfe", c.max_nfe},
       {"tournament_size", c.tournament_size},
       {"restart_window", c.restart_window},
       {"injection_ratio", c.injection_ratio},
       {"batch_size", c.batch_size},
       {"workers", c.workers},
       {"variation", c.variation}};
}

void from_json(const nlohmann::json& j, MoeaConfig& c) {
  c.num_variables = j.value("num_variables", c.num_variables);
  c.lower_bound = j.value("lower_bound", c.lower_bound);
  c.upper_bound = j.value("upper_bound", c.upper_bound);
  c.epsilons = j.value("epsilons", c.epsilons);
  c.population_size = j.value("population_size", c.population_size);
  c.min_population_size = j.value("min_population_size", c.min_population_size);
  c.max_population_size = j.value("max_population_size", c.max_population_size);
  c.max_nfe = j.value("max_nfe", c.max_nfe);
  c.tournament_size = j.value("tournament_size", c.tournament_size);
  c.restart_window = j.value("restart_window", c.restart_window);
  c.injection_ratio = j.value("injection_ratio", c.injection_ratio);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.workers = j.value("workers", c.workers);
  if (j.contains("variation")) from_json(j.at("variation"), c.variation);
}

}  // namespace moea
}  // namespace gridpolicy
