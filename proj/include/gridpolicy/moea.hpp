#pragma once

// Borg-style steady-state MOEA over real-valued genomes: an epsilon-box
// dominance archive, six recombination operators chosen by archive
// membership, feasibility-first comparisons and stagnation restarts.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace gridpolicy::moea {

using Rng = std::mt19937_64;

enum class Operator : std::uint8_t { kSbx, kDe, kPcx, kSpx, kUndx, kUm, kInitial, kRestart };

inline constexpr std::size_t kOperatorCount = 6;
inline constexpr std::array<Operator, kOperatorCount> kSearchOperators{Operator::kSbx, Operator::kDe,   Operator::kPcx,
                                                                       Operator::kSpx, Operator::kUndx, Operator::kUm};

std::string to_string(Operator op);
Operator operator_from_string(const std::string& name);

struct Solution {
  std::vector<double> genome;
  std::vector<double> objectives;  // minimized
  double violation = 0.0;          // 0 when feasible
  Operator origin = Operator::kInitial;

  bool feasible() const { return violation == 0.0; }
  bool operator==(const Solution&) const = default;
};

enum class Dominance { kADominates, kBDominates, kSameBox, kNeither };

/// Feasibility first, then smaller violation, then epsilon-box dominance on
/// floor(objective / eps). kSameBox means identical boxes at equal
/// violation; use nearer_box_corner() to settle the contest.
Dominance eps_dominates(const Solution& a, const Solution& b, std::span<const double> eps);

/// Squared distance of the eps-scaled objectives to their box's lower corner.
double box_corner_distance_sq(const Solution& s, std::span<const double> eps);

/// True when `challenger` is strictly nearer its box corner than `incumbent`.
bool nearer_box_corner(const Solution& challenger, const Solution& incumbent, std::span<const double> eps);

struct InsertResult {
  bool accepted = false;
  bool eps_progress = false;  // candidate occupies a box that was empty
};

class Archive {
 public:
  explicit Archive(std::vector<double> epsilons);

  InsertResult insert(const Solution& candidate);

  const std::vector<Solution>& members() const { return members_; }
  const std::vector<double>& epsilons() const { return eps_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  /// Members produced by each search operator, in kSearchOperators order.
  std::array<std::size_t, kOperatorCount> operator_counts() const;

 private:
  std::vector<double> eps_;
  std::vector<Solution> members_;
};

/// Re-inserts every member of every archive into a fresh archive.
/// Throws std::domain_error when the epsilon vectors differ.
Archive merge_archives(std::span<const Archive> archives);

struct VariationParams {
  double sbx_rate = 1.0;
  double sbx_index = 15.0;
  double pm_index = 20.0;
  double pm_rate = -1.0;  // negative: 1 / genome length
  double de_step = 0.5;
  double de_crossover = 0.1;
  double pcx_eta = 0.1;
  double pcx_zeta = 0.1;
  double spx_expansion = 3.0;
  double undx_zeta = 0.5;
  double undx_eta = 0.35;
  double um_rate = -1.0;  // negative: 1 / genome length
  std::size_t multiparent_arity = 3;  // PCX, SPX, UNDX
  bool mutate_after_recombination = true;  // PM after SBX, DE, PCX, SPX, UNDX
};

/// Parents required by `op`. DE expects {target, base, diff_a, diff_b}.
std::size_t arity(Operator op, const VariationParams& params);

/// Produces one child from `parents`, clipped to [lower, upper].
/// Throws std::domain_error on an arity mismatch.
std::vector<double> vary(std::span<const std::vector<double>> parents, Operator op, const VariationParams& params,
                         double lower, double upper, Rng& rng);

/// P(op) proportional to (archive members produced by op + 1).
std::array<double, kOperatorCount> operator_probabilities(const std::array<std::size_t, kOperatorCount>& counts);
Operator select_operator(const std::array<std::size_t, kOperatorCount>& counts, Rng& rng);
Operator select_operator(const Archive& archive, Rng& rng);

struct Evaluation {
  std::vector<double> objectives;
  double violation = 0.0;
};

/// Must be safe to call concurrently when MoeaConfig::workers > 1.
using Evaluator = std::function<Evaluation(std::span<const double>)>;

struct MoeaConfig {
  std::size_t num_variables = 0;
  double lower_bound = -10.0;
  double upper_bound = 10.0;
  std::vector<double> epsilons{10.0, 1.0, 0.01};
  std::size_t population_size = 100;
  std::size_t min_population_size = 100;
  std::size_t max_population_size = 10000;
  std::size_t max_nfe = 500000;
  std::size_t tournament_size = 2;
  std::size_t restart_window = 0;  // evaluations without eps-progress; 0 means population_size
  double injection_ratio = 0.25;   // restart population = |archive| / injection_ratio
  std::size_t batch_size = 1;      // children generated from one frozen state
  std::size_t workers = 1;         // threads evaluating a batch
  VariationParams variation;

  void validate() const;
};

struct RunStats {
  std::size_t nfe = 0;
  std::size_t restarts = 0;
  std::array<std::size_t, kOperatorCount> operator_uses{};
};

struct RunResult {
  Archive archive;
  RunStats stats;
};

/// Deterministic for a given (config, seed); with batch_size > 1 results do
/// not depend on the worker count either.
RunResult run(const MoeaConfig& config, const Evaluator& evaluator, std::uint64_t seed);

}  // namespace gridpolicy::moea
