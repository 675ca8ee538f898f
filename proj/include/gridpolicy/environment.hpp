#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridpolicy/grid_model.hpp"
#include "gridpolicy/policy.hpp"
#include "gridpolicy/state.hpp"

namespace gridpolicy {

/// Share of heat load that must be met for an hour to count as reliable.
inline constexpr double kReliableHeatShare = 0.95;
/// Reliable hours required per day.
inline constexpr int kRequiredReliableHours = 22;
/// Commitment outputs at or above this value switch a unit on.
inline constexpr double kCommitThreshold = 0.5;

/// Maps policy output indices onto physical decisions. Order: CHP powers,
/// CHP steams, boiler steam, then one commitment output per switchable unit
/// in unit order.
struct DecisionLayout {
  enum class Kind { kChpPower, kChpSteam, kBoilerSteam, kCommitment };
  struct Entry {
    Kind kind;
    std::size_t unit;
    std::string name;
  };

  std::vector<Entry> entries;

  static DecisionLayout for_config(const MicrogridConfig& config);
  std::size_t size() const { return entries.size(); }
  /// Output index of the commitment decision for `unit`, if it is switchable.
  std::optional<std::size_t> commitment_index(std::size_t unit) const;
};

Architecture policy_architecture(const MicrogridConfig& config, std::size_t hidden_dim = 15);

/// Midpoint power, zero steam, every unit on.
Action default_initial_action(const MicrogridConfig& config);

/// Converts normalized outputs u in [0,1]^k into a feasible action given the
/// previous hour. Power maps affinely onto the ramp-limited window; a unit
/// coming back on re-enters from a window anchored at P_min.
Action clamp_action(std::span<const double> u, const Action& prev, const MicrogridConfig& config);

/// Grid exchange p_e closing the electric balance (positive = import).
double close_load_balance(const Action& action, double st_power_kw, const HiddenState& hidden);

struct HourRewards {
  double cost = 0.0;         // $
  double emission_lb = 0.0;  // lb
  int heat_waste = 0;        // 0/1
};

bool heat_waste_flag(double steam_klbh, double heat_load_klbh, double threshold);
bool heat_reliable(double steam_klbh, double heat_load_klbh);

HourRewards hour_rewards(const Action& action, double p_e_kw, const HiddenState& hidden, double gas_price_per_dth,
                         const MicrogridConfig& config);

struct HourOutcome {
  int hour = 0;
  Action action;
  double st_power_kw = 0.0;
  double exchange_kw = 0.0;
  HourRewards rewards;
  double heat_satisfaction = 0.0;  // steam / heat load, 1 when the heat load is zero
  int reliability_flag = 0;
};

struct ReliabilitySummary {
  double fraction = 0.0;
  double violation = 0.0;  // max(0, 22/24 - fraction)
};

ReliabilitySummary heat_reliability(std::span<const HourOutcome> day);

struct Objectives {
  double cost = 0.0;        // $ per day
  double emission_t = 0.0;  // metric tonnes per day
  double heat_waste = 0.0;  // wasteful hours per day
  bool operator==(const Objectives&) const = default;
};

struct DayResult {
  Objectives objectives;
  double emission_lb = 0.0;
  double violation = 0.0;
  double reliability_fraction = 0.0;
  std::vector<HourOutcome> trace;  // filled only on request
};

DayResult simulate_day(const PolicyNetwork& policy, const Scenario& scenario, const MicrogridConfig& config,
                       bool keep_trace = false);

struct EvaluationResult {
  Objectives objectives;            // unweighted means over scenarios
  double constraint_violation = 0;  // mean per-scenario reliability violation
  std::vector<DayResult> days;      // filled only on request
};

EvaluationResult evaluate_policy(const PolicyNetwork& policy, std::span<const Scenario> scenarios,
                                 const MicrogridConfig& config, bool keep_days = false);

/// Columns: scenario, hour, per-unit on/power/steam, st_power_kw, exchange_kw,
/// cost_usd, emission_lb, heat_waste_flag, heat_satisfaction, reliability_flag.
void write_trace_csv(std::ostream& out, std::span<const Scenario> scenarios, const EvaluationResult& result,
                     const MicrogridConfig& config);

}  // namespace gridpolicy
