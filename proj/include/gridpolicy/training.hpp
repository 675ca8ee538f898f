#pragma once

// Glue between the simulator and the optimizer: a policy-search problem,
// its evaluator, multi-seed training and the JSON form of run settings.

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "gridpolicy/environment.hpp"
#include "gridpolicy/moea.hpp"
#include "gridpolicy/policy.hpp"

namespace gridpolicy {

struct PolicyProblem {
  MicrogridConfig config;
  std::vector<Scenario> scenarios;
  Architecture architecture;
  InputNormalization normalization;

  /// Architecture sized for `config`, normalization fitted on `scenarios`.
  static PolicyProblem make(MicrogridConfig config, std::vector<Scenario> scenarios, std::size_t hidden_dim = 15);
};

/// Decodes a genome and returns (cost, emission, heat waste) and the mean
/// reliability violation. Thread-safe.
moea::Evaluator policy_evaluator(const PolicyProblem& problem);

/// Objective triple of the all-zero genome (u = 0.5 everywhere).
EvaluationResult zero_policy_baseline(const PolicyProblem& problem);

/// Optimizer settings preset for a given genome length.
moea::MoeaConfig default_moea_config(std::size_t num_variables);

struct TrainingResult {
  std::vector<moea::RunResult> runs;  // one per seed, in seed order
  moea::Archive merged;
};

/// Independent runs, one per seed, then merged. Up to `parallel_seeds`
/// seeds run at once; results do not depend on that number.
TrainingResult train(const moea::MoeaConfig& config, const moea::Evaluator& evaluator,
                     const std::vector<std::uint64_t>& seeds, std::size_t parallel_seeds = 1);

namespace moea {
/// Partial documents keep the values already in the target.
void to_json(nlohmann::json& j, const VariationParams& p);
void from_json(const nlohmann::json& j, VariationParams& p);
void to_json(nlohmann::json& j, const MoeaConfig& c);
void from_json(const nlohmann::json& j, MoeaConfig& c);
}  // namespace moea

}  // namespace gridpolicy
