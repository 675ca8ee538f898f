#pragma once

// Time-varying sensitivity analysis. For each decision k and hour t the
// ensemble variance of u_{k,t} is approximated by a first-order Taylor
// expansion around a reference input:
//   Var(u) ~ sum_a g_a^2 Var(W_a) + sum_{a != b} g_a g_b Cov(W_a, W_b).
// Hour of day is held fixed and is not an input of the decomposition.

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gridpolicy/environment.hpp"
#include "gridpolicy/policy.hpp"
#include "gridpolicy/state.hpp"

namespace gridpolicy::tvsa {

struct Moments {
  std::array<double, kExogenousInputs> mean{};
  Matrix covariance{kExogenousInputs, kExogenousInputs};  // unbiased (n - 1)
};

/// Moments of the exogenous inputs at hour index t across the ensemble.
/// Throws std::domain_error with fewer than two scenarios.
Moments ensemble_moments(std::span<const Scenario> scenarios, int t);

struct Decomposition {
  std::vector<double> first_order;  // g_a^2 Var_a
  Matrix second_order;              // g_a g_b Cov_ab off the diagonal, 0 on it; symmetric

  /// Sum of all terms, i.e. g' Sigma g.
  double total() const;
};

/// Core identity for a gradient g and covariance Sigma.
Decomposition decompose_variance(std::span<const double> gradient, const Matrix& covariance);

enum class GradientPoint {
  kEnsembleMean,      // gradient at the ensemble-mean input
  kScenarioAverage,   // mean of per-scenario gradients
};

std::string to_string(GradientPoint point);
GradientPoint gradient_point_from_string(const std::string& name);

/// Exogenous part of du_k/dW at hour t, chosen by `point`.
std::array<double, kExogenousInputs> decision_gradient(const PolicyNetwork& policy, std::span<const Scenario> scenarios,
                                                       int t, std::size_t k, GradientPoint point);

Decomposition decompose(const PolicyNetwork& policy, std::span<const Scenario> scenarios, int t, std::size_t k,
                        GradientPoint point = GradientPoint::kEnsembleMean);

/// Interaction of an unordered input pair, reported as its full contribution
/// to the variance: 2 g_a g_b Cov_ab.
struct PairTerm {
  std::size_t a = 0;
  std::size_t b = 0;
  double raw = 0.0;
  double normalized = 0.0;
};

struct Cell {
  std::size_t decision = 0;
  int hour = 0;
  std::array<double, kExogenousInputs> first_raw{};
  std::array<double, kExogenousInputs> first_normalized{};
  std::vector<PairTerm> pairs;  // a < b, all pairs
  double absolute_total = 0.0;  // sum of |terms|; the normalizer
  double decomposed_variance = 0.0;
  double empirical_variance = 0.0;
  bool zero = false;      // every term vanished
  bool unit_off = false;  // the decision's unit is decommitted at the reference point

  bool flagged() const { return zero || unit_off; }
};

/// Divides every term by the cell's absolute total. A zero total leaves the
/// normalized values at 0 and sets `zero`.
void normalize_cell(Cell& cell);

Cell make_cell(const Decomposition& raw, std::size_t decision, int hour);

struct Report {
  std::vector<std::string> decision_names;
  std::vector<std::string> input_names;
  GradientPoint point = GradientPoint::kEnsembleMean;
  std::vector<Cell> cells;  // decision-major, then hour

  const Cell& at(std::size_t decision, int hour) const;
};

/// Full report for every decision and hour, with empirical Var(u) and
/// unit-off flags resolved through the configuration's decision layout.
Report analyze(const PolicyNetwork& policy, std::span<const Scenario> scenarios, const MicrogridConfig& config,
               GradientPoint point = GradientPoint::kEnsembleMean);

/// Long format: decision,hour,term_type,input_a,input_b,raw,normalized,flag.
/// term_type is first, second_pos or second_neg; flagged cells leave
/// `normalized` empty.
void write_report_csv(std::ostream& out, const Report& report);

/// Stacked bars over the day for one decision: first-order shares, positive
/// interactions and negative interactions in three panels.
std::string render_decision_svg(const Report& report, std::size_t decision);

}  // namespace gridpolicy::tvsa
