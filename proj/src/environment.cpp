#include "gridpolicy/environment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "gridpolicy/numeric_text.hpp"

namespace gridpolicy {

DecisionLayout DecisionLayout::for_config(const MicrogridConfig& config) {
  DecisionLayout layout;
  const std::size_t nc = config.chp_count();
  for (std::size_t i = 0; i < nc; ++i) {
    layout.entries.push_back({Kind::kChpPower, i, config.unit_name(i) + "_power"});
  }
  for (std::size_t i = 0; i < nc; ++i) {
    layout.entries.push_back({Kind::kChpSteam, i, config.unit_name(i) + "_steam"});
  }
  layout.entries.push_back({Kind::kBoilerSteam, config.boiler_unit(), "boiler_steam"});
  for (std::size_t unit : config.switchable_units) {
    layout.entries.push_back({Kind::kCommitment, unit, config.unit_name(unit) + "_commit"});
  }
  return layout;
}

std::optional<std::size_t> DecisionLayout::commitment_index(std::size_t unit) const {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].kind == Kind::kCommitment && entries[k].unit == unit) return k;
  }
  return std::nullopt;
}

Architecture policy_architecture(const MicrogridConfig& config, std::size_t hidden_dim) {
  return Architecture{kPolicyInputs, hidden_dim, DecisionLayout::for_config(config).size()};
}

Action default_initial_action(const MicrogridConfig& config) {
  Action action;
  for (const ChpParams& c : config.chp) {
    action.chp.push_back({true, 0.5 * (c.p_min_kw + c.p_max_kw), 0.0});
  }
  action.boiler_on = true;
  action.boiler_steam_klbh = 0.0;
  return action;
}

namespace {

double affine(double u, double lo, double hi) { return std::min(hi, lo + u * (hi - lo)); }

}  // namespace

Action clamp_action(std::span<const double> u, const Action& prev, const MicrogridConfig& config) {
  const std::size_t nc = config.chp_count();
  const std::size_t k = 2 * nc + 1 + config.switchable_units.size();
  if (u.size() != k) {
    throw std::domain_error("clamp_action: expected " + std::to_string(k) + " outputs, got " + std::to_string(u.size()));
  }
  if (prev.chp.size() != nc) throw std::domain_error("clamp_action: previous action has wrong CHP count");
  for (double v : u) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("clamp_action: outputs must lie in [0, 1]");
  }

  auto is_on = [&](std::size_t unit) {
    if (!config.is_switchable(unit)) return true;
    const auto pos = std::find(config.switchable_units.begin(), config.switchable_units.end(), unit);
    const std::size_t idx = 2 * nc + 1 + static_cast<std::size_t>(pos - config.switchable_units.begin());
    return u[idx] >= kCommitThreshold;
  };

  Action action;
  action.chp.resize(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    const ChpParams& c = config.chp[i];
    ChpDispatch& d = action.chp[i];
    d.on = is_on(i);
    if (!d.on) continue;

    double lo = c.p_min_kw;
    double hi = std::min(c.p_max_kw, c.p_min_kw + c.ramp_up_kw);
    if (prev.chp[i].on) {
      lo = std::max(c.p_min_kw, prev.chp[i].power_kw + c.ramp_down_kw);
      hi = std::min(c.p_max_kw, prev.chp[i].power_kw + c.ramp_up_kw);
    }
    if (!(lo <= hi)) throw std::logic_error("clamp_action: empty power window for " + config.unit_name(i));
    d.power_kw = affine(u[i], lo, hi);
    d.steam_klbh = affine(u[nc + i], c.q_min_klbh, c.q_max_klbh);
  }
  action.boiler_on = is_on(config.boiler_unit());
  if (action.boiler_on) {
    action.boiler_steam_klbh = affine(u[2 * nc], config.boiler.q_min_klbh, config.boiler.q_max_klbh);
  }
  return action;
}

double close_load_balance(const Action& action, double st_power_kw, const HiddenState& hidden) {
  return hidden.electric_load_kw - action.total_chp_power() - st_power_kw - hidden.hydro_output_kw -
         hidden.solar_output_kw;
}

bool heat_waste_flag(double steam_klbh, double heat_load_klbh, double threshold) {
  if (heat_load_klbh == 0.0) return steam_klbh > 0.0;
  return steam_klbh / heat_load_klbh > threshold;
}

bool heat_reliable(double steam_klbh, double heat_load_klbh) {
  if (heat_load_klbh == 0.0) return true;
  return steam_klbh / heat_load_klbh >= kReliableHeatShare;
}

HourRewards hour_rewards(const Action& action, double p_e_kw, const HiddenState& hidden, double gas_price_per_dth,
                         const MicrogridConfig& config) {
  const double gas = total_gas(action, config);
  HourRewards r;
  r.cost = gas * gas_price_per_dth + grid_exchange_cost(p_e_kw, hidden.rt_price);
  r.emission_lb = gas * config.emission.gas_lb_per_dth + config.emission.grid_lb_per_kwh * std::max(p_e_kw, 0.0);
  r.heat_waste =
      heat_waste_flag(action.total_steam(), hidden.heat_load_klbh, config.emission.heat_waste_threshold) ? 1 : 0;
  return r;
}

ReliabilitySummary heat_reliability(std::span<const HourOutcome> day) {
  if (day.size() != static_cast<std::size_t>(kHoursPerDay)) {
    throw std::domain_error("heat_reliability: expected 24 hours, got " + std::to_string(day.size()));
  }
  int reliable = 0;
  for (const HourOutcome& h : day) reliable += h.reliability_flag;
  ReliabilitySummary s;
  s.fraction = static_cast<double>(reliable) / kHoursPerDay;
  s.violation = std::max(0.0, static_cast<double>(kRequiredReliableHours) / kHoursPerDay - s.fraction);
  return s;
}

DayResult simulate_day(const PolicyNetwork& policy, const Scenario& scenario, const MicrogridConfig& config,
                       bool keep_trace) {
  if (scenario.hours.size() != static_cast<std::size_t>(kHoursPerDay)) {
    throw std::domain_error("simulate_day: scenario " + scenario.date + " has " + std::to_string(scenario.hours.size()) +
                            " hours");
  }
  Action prev = scenario.initial_action ? *scenario.initial_action : default_initial_action(config);

  std::vector<HourOutcome> outcomes(kHoursPerDay);
  double cost = 0.0;
  double emission_lb = 0.0;
  int waste = 0;
  for (int t = 0; t < kHoursPerDay; ++t) {
    const HourRecord& rec = scenario.hours[static_cast<std::size_t>(t)];
    const std::vector<double> u = policy.forward(rec.observable);
    HourOutcome& out = outcomes[static_cast<std::size_t>(t)];
    out.hour = rec.observable.hour_of_day;
    out.action = clamp_action(u, prev, config);
    const double steam = out.action.total_steam();
    out.st_power_kw = steam_turbine_power(steam, config.steam_turbine);
    out.exchange_kw = close_load_balance(out.action, out.st_power_kw, rec.hidden);
    out.rewards = hour_rewards(out.action, out.exchange_kw, rec.hidden, rec.gas_price_per_dth, config);
    out.heat_satisfaction = rec.hidden.heat_load_klbh == 0.0 ? 1.0 : steam / rec.hidden.heat_load_klbh;
    out.reliability_flag = heat_reliable(steam, rec.hidden.heat_load_klbh) ? 1 : 0;

    cost += out.rewards.cost;
    emission_lb += out.rewards.emission_lb;
    waste += out.rewards.heat_waste;
    prev = out.action;
  }

  const ReliabilitySummary rel = heat_reliability(outcomes);
  DayResult day;
  day.objectives = Objectives{cost, emission_lb / kPoundsPerTonne, static_cast<double>(waste)};
  day.emission_lb = emission_lb;
  day.violation = rel.violation;
  day.reliability_fraction = rel.fraction;
  if (keep_trace) day.trace = std::move(outcomes);
  return day;
}

EvaluationResult evaluate_policy(const PolicyNetwork& policy, std::span<const Scenario> scenarios,
                                 const MicrogridConfig& config, bool keep_days) {
  if (scenarios.empty()) throw std::domain_error("evaluate_policy: no scenarios");
  EvaluationResult result;
  Objectives sum;
  double violation = 0.0;
  for (const Scenario& s : scenarios) {
    DayResult day = simulate_day(policy, s, config, keep_days);
    sum.cost += day.objectives.cost;
    sum.emission_t += day.objectives.emission_t;
    sum.heat_waste += day.objectives.heat_waste;
    violation += day.violation;
    if (keep_days) result.days.push_back(std::move(day));
  }
  const double n = static_cast<double>(scenarios.size());
  result.objectives = Objectives{sum.cost / n, sum.emission_t / n, sum.heat_waste / n};
  result.constraint_violation = violation / n;
  return result;
}

void write_trace_csv(std::ostream& out, std::span<const Scenario> scenarios, const EvaluationResult& result,
                     const MicrogridConfig& config) {
  if (result.days.size() != scenarios.size()) {
    throw std::invalid_argument("write_trace_csv: evaluation was run without per-day traces");
  }
  out << "scenario,hour";
  for (std::size_t i = 0; i < config.chp_count(); ++i) {
    const std::string n = config.unit_name(i);
    out << ',' << n << "_on," << n << "_power_kw," << n << "_steam_klbh";
  }
  out << ",boiler_on,boiler_steam_klbh,st_power_kw,exchange_kw,cost_usd,emission_lb,heat_waste_flag,"
         "heat_satisfaction,reliability_flag\n";
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    for (const HourOutcome& h : result.days[s].trace) {
      out << scenarios[s].date << ',' << h.hour;
      for (const ChpDispatch& d : h.action.chp) {
        out << ',' << (d.on ? 1 : 0) << ',' << format_double(d.power_kw) << ',' << format_double(d.steam_klbh);
      }
      out << ',' << (h.action.boiler_on ? 1 : 0) << ',' << format_double(h.action.boiler_steam_klbh) << ','
          << format_double(h.st_power_kw) << ',' << format_double(h.exchange_kw) << ','
          << format_double(h.rewards.cost) << ',' << format_double(h.rewards.emission_lb) << ','
          << h.rewards.heat_waste << ',' << format_double(h.heat_satisfaction) << ',' << h.reliability_flag << '\n';
    }
  }
}

}  // namespace gridpolicy
