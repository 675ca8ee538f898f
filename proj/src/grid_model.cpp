#include "gridpolicy/grid_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

namespace gridpolicy {

std::string to_string(Season season) {
  return season == Season::kWinter ? "winter" : "summer";
}

Season season_from_string(const std::string& name) {
  if (name == "winter") return Season::kWinter;
  if (name == "summer") return Season::kSummer;
  throw std::invalid_argument("unknown season '" + name + "'");
}

bool MicrogridConfig::is_switchable(std::size_t unit) const {
  return std::find(switchable_units.begin(), switchable_units.end(), unit) != switchable_units.end();
}

std::string MicrogridConfig::unit_name(std::size_t unit) const {
  if (unit < chp.size()) return "chp" + std::to_string(unit + 1);
  if (unit == chp.size()) return "boiler";
  throw std::out_of_range("unit index " + std::to_string(unit) + " out of range");
}

std::size_t MicrogridConfig::unit_from_name(const std::string& name) const {
  for (std::size_t u = 0; u <= chp.size(); ++u) {
    if (unit_name(u) == name) return u;
  }
  throw std::invalid_argument("unknown unit '" + name + "'");
}

void MicrogridConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("microgrid config: " + what); };
  if (chp.empty()) fail("at least one CHP unit is required");
  for (std::size_t i = 0; i < chp.size(); ++i) {
    const ChpParams& c = chp[i];
    const std::string name = unit_name(i);
    if (!(c.p_min_kw < c.p_max_kw)) fail(name + ": P_min must be below P_max");
    if (!(c.p_min_kw >= 0.0)) fail(name + ": P_min must be nonnegative");
    if (!(c.ramp_down_kw < 0.0 && c.ramp_up_kw > 0.0)) fail(name + ": ramp limits must satisfy R_min < 0 < R_max");
    if (!(c.q_min_klbh >= 0.0 && c.q_min_klbh <= c.q_max_klbh)) fail(name + ": steam limits must satisfy 0 <= Q_min <= Q_max");
    if (!(c.heating_value_kwh_per_dth > 0.0)) fail(name + ": heating value must be positive");
    if (!(c.a_q > 0.0)) fail(name + ": a_q must be positive");
    // The efficiency quadratic must stay positive on the operating range;
    // values above one are tolerated since fitted curves can overshoot.
    constexpr int kSamples = 64;
    for (int s = 0; s <= kSamples; ++s) {
      const double p = c.p_min_kw + (c.p_max_kw - c.p_min_kw) * s / kSamples;
      if (!(chp_efficiency(p, c) > 0.0)) fail(name + ": efficiency is not positive on [P_min, P_max]");
    }
  }
  const BoilerParams& b = boiler;
  if (!(b.q_min_klbh >= 0.0 && b.q_min_klbh <= b.q_max_klbh)) fail("boiler: steam limits must satisfy 0 <= Q_min <= Q_max");
  if (boiler_fuel(b.q_min_klbh, b, true) < 0.0) fail("boiler: fuel is negative at Q_min");
  // A quadratic is nondecreasing on an interval iff its slope is >= 0 at both ends.
  if (2.0 * b.a_b * b.q_min_klbh + b.b_b < 0.0 || 2.0 * b.a_b * b.q_max_klbh + b.b_b < 0.0) {
    fail("boiler: fuel must be nondecreasing on [Q_min, Q_max]");
  }
  if (!(steam_turbine.c_s_klbh > 0.0)) fail("steam turbine: breakpoint c_s must be positive");
  const EmissionParams& e = emission;
  if (!(e.gas_lb_per_dth > 0.0 && e.grid_lb_per_kwh > 0.0)) fail("emission factors must be positive");
  if (!(e.heat_waste_threshold > 1.0)) fail("heat waste threshold delta must exceed 1");
  if (season == Season::kWinter && !switchable_units.empty()) fail("switchable units are only allowed in summer");
  for (std::size_t u : switchable_units) {
    if (u > chp.size()) fail("switchable unit index out of range");
  }
  if (!std::is_sorted(switchable_units.begin(), switchable_units.end()) ||
      std::adjacent_find(switchable_units.begin(), switchable_units.end()) != switchable_units.end()) {
    fail("switchable units must be sorted and unique");
  }
}

MicrogridConfig default_config(Season season) {
  ChpParams shared;
  shared.p_min_kw = 12000.0;
  shared.p_max_kw = 16000.0;
  shared.ramp_down_kw = -5000.0;
  shared.ramp_up_kw = 5000.0;
  shared.q_min_klbh = 0.0;
  shared.q_max_klbh = 153.0;
  shared.heating_value_kwh_per_dth = 293.0;

  ChpParams chp1 = shared;
  chp1.a_c = 0.088094;
  chp1.b_c = 0.42435;
  chp1.c_c = 0.19291;
  chp1.a_q = 1.1766;
  chp1.b_q = 65.881;

  ChpParams chp2 = shared;
  chp2.a_c = -0.027957;
  chp2.b_c = 0.80107;
  chp2.c_c = 0.34667;
  chp2.a_q = 1.3293;
  chp2.b_q = 77.25;

  MicrogridConfig config;
  config.chp = {chp1, chp2};
  config.boiler = BoilerParams{0.0009, 1.0968, 3.7742, 0.0, 540.0};
  config.steam_turbine = SteamTurbineParams{-1.9341, 6042.6, 33.907, 1552.2, 215.0};
  config.emission = EmissionParams{116.65, 0.932, 1.05};
  config.season = season;
  if (season == Season::kSummer) config.switchable_units = {1, 2};  // chp2, boiler
  return config;
}

double Action::total_chp_power() const {
  return std::accumulate(chp.begin(), chp.end(), 0.0,
                         [](double acc, const ChpDispatch& d) { return acc + d.power_kw; });
}

double Action::total_steam() const {
  return std::accumulate(chp.begin(), chp.end(), boiler_steam_klbh,
                         [](double acc, const ChpDispatch& d) { return acc + d.steam_klbh; });
}

double chp_efficiency(double p_kw, const ChpParams& params) {
  if (!(p_kw >= 0.0 && p_kw <= params.p_max_kw)) {
    throw std::domain_error("chp_efficiency: output " + std::to_string(p_kw) + " kW outside [0, P_max]");
  }
  const double ratio = p_kw / params.p_max_kw;
  return params.a_c + params.b_c * ratio + params.c_c * ratio * ratio;
}

double chp_power_fuel(double p_kw, const ChpParams& params) {
  if (p_kw == 0.0) return 0.0;
  if (!(p_kw >= params.p_min_kw && p_kw <= params.p_max_kw)) {
    throw std::domain_error("chp_power_fuel: output " + std::to_string(p_kw) + " kW outside [P_min, P_max]");
  }
  const double eta = chp_efficiency(p_kw, params);
  if (!(eta > 0.0)) throw ModelError("chp_power_fuel: non-positive efficiency at " + std::to_string(p_kw) + " kW");
  return p_kw / (params.heating_value_kwh_per_dth * eta);
}

double chp_steam_fuel(double q_klbh, const ChpParams& params) {
  if (!(q_klbh >= params.q_min_klbh && q_klbh <= params.q_max_klbh)) {
    throw std::domain_error("chp_steam_fuel: steam " + std::to_string(q_klbh) + " klb/h outside [Q_min, Q_max]");
  }
  return std::max(params.a_q * q_klbh - params.b_q, 0.0);
}

double boiler_fuel(double q_klbh, const BoilerParams& params, bool committed) {
  if (!committed) {
    if (q_klbh != 0.0) throw std::domain_error("boiler_fuel: uncommitted boiler must produce no steam");
    return 0.0;
  }
  if (!(q_klbh >= params.q_min_klbh && q_klbh <= params.q_max_klbh)) {
    throw std::domain_error("boiler_fuel: steam " + std::to_string(q_klbh) + " klb/h outside [Q_min, Q_max]");
  }
  return params.a_b * q_klbh * q_klbh + params.b_b * q_klbh + params.c_b;
}

double steam_turbine_power(double q_total_klbh, const SteamTurbineParams& params) {
  if (!(q_total_klbh >= 0.0)) throw std::domain_error("steam_turbine_power: negative steam flow");
  // Strict '>' puts the breakpoint itself on the lower branch.
  if (q_total_klbh > params.c_s_klbh) return params.a1_s * q_total_klbh + params.b1_s;
  return params.a2_s * q_total_klbh + params.b2_s;
}

double grid_exchange_cost(double p_e_kw, double price_per_kwh) {
  return price_per_kwh * p_e_kw;
}

double total_gas(const Action& action, const MicrogridConfig& config) {
  if (action.chp.size() != config.chp.size()) {
    throw std::domain_error("total_gas: action has " + std::to_string(action.chp.size()) + " CHP entries, config has " +
                            std::to_string(config.chp.size()));
  }
  double gas = 0.0;
  for (std::size_t i = 0; i < config.chp.size(); ++i) {
    gas += chp_power_fuel(action.chp[i].power_kw, config.chp[i]);
    gas += chp_steam_fuel(action.chp[i].steam_klbh, config.chp[i]);
  }
  gas += boiler_fuel(action.boiler_steam_klbh, config.boiler, action.boiler_on);
  return gas;
}

double equivalent_emission_factor(double gas_dth, double load_kwh, double heat_load_klb, double gas_lb_per_dth) {
  const double denominator = load_kwh + heat_load_klb;
  if (!(denominator > 0.0)) throw std::domain_error("equivalent_emission_factor: load + heat load must be positive");
  return gas_dth * gas_lb_per_dth / denominator;
}

// JSON field names follow the fitted-parameter symbols (a_c, P_max, H_c, ...).

void to_json(nlohmann::json& j, const MicrogridConfig& config) {
  nlohmann::json chps = nlohmann::json::array();
  for (const ChpParams& c : config.chp) {
    chps.push_back({{"a_c", c.a_c},
                    {"b_c", c.b_c},
                    {"c_c", c.c_c},
                    {"a_q", c.a_q},
                    {"b_q", c.b_q},
                    {"P_min", c.p_min_kw},
                    {"P_max", c.p_max_kw},
                    {"R_min", c.ramp_down_kw},
                    {"R_max", c.ramp_up_kw},
                    {"Q_min", c.q_min_klbh},
                    {"Q_max", c.q_max_klbh},
                    {"H_c", c.heating_value_kwh_per_dth}});
  }
  nlohmann::json switchable = nlohmann::json::array();
  for (std::size_t u : config.switchable_units) switchable.push_back(config.unit_name(u));
  j = {{"season", to_string(config.season)},
       {"chp", chps},
       {"boiler",
        {{"a_b", config.boiler.a_b},
         {"b_b", config.boiler.b_b},
         {"c_b", config.boiler.c_b},
         {"Q_min", config.boiler.q_min_klbh},
         {"Q_max", config.boiler.q_max_klbh}}},
       {"steam_turbine",
        {{"a1_s", config.steam_turbine.a1_s},
         {"b1_s", config.steam_turbine.b1_s},
         {"a2_s", config.steam_turbine.a2_s},
         {"b2_s", config.steam_turbine.b2_s},
         {"c_s", config.steam_turbine.c_s_klbh}}},
       {"emission",
        {{"epsilon", config.emission.gas_lb_per_dth},
         {"EF_grid", config.emission.grid_lb_per_kwh},
         {"delta", config.emission.heat_waste_threshold}}},
       {"switchable_units", switchable}};
}

void from_json(const nlohmann::json& j, MicrogridConfig& config) {
  MicrogridConfig out;
  out.season = season_from_string(j.at("season").get<std::string>());
  for (const auto& c : j.at("chp")) {
    ChpParams p;
    p.a_c = c.at("a_c").get<double>();
    p.b_c = c.at("b_c").get<double>();
    p.c_c = c.at("c_c").get<double>();
    p.a_q = c.at("a_q").get<double>();
    p.b_q = c.at("b_q").get<double>();
    p.p_min_kw = c.at("P_min").get<double>();
    p.p_max_kw = c.at("P_max").get<double>();
    p.ramp_down_kw = c.at("R_min").get<double>();
    p.ramp_up_kw = c.at("R_max").get<double>();
    p.q_min_klbh = c.at("Q_min").get<double>();
    p.q_max_klbh = c.at("Q_max").get<double>();
    p.heating_value_kwh_per_dth = c.at("H_c").get<double>();
    out.chp.push_back(p);
  }
  const auto& b = j.at("boiler");
  out.boiler = BoilerParams{b.at("a_b").get<double>(), b.at("b_b").get<double>(), b.at("c_b").get<double>(),
                            b.at("Q_min").get<double>(), b.at("Q_max").get<double>()};
  const auto& s = j.at("steam_turbine");
  out.steam_turbine = SteamTurbineParams{s.at("a1_s").get<double>(), s.at("b1_s").get<double>(),
                                         s.at("a2_s").get<double>(), s.at("b2_s").get<double>(),
                                         s.at("c_s").get<double>()};
  const auto& e = j.at("emission");
  out.emission = EmissionParams{e.at("epsilon").get<double>(), e.at("EF_grid").get<double>(),
                                e.at("delta").get<double>()};
  if (j.contains("switchable_units")) {
    for (const auto& name : j.at("switchable_units")) out.switchable_units.push_back(out.unit_from_name(name.get<std::string>()));
    std::sort(out.switchable_units.begin(), out.switchable_units.end());
  }
  out.validate();
  config = std::move(out);
}

}  // namespace gridpolicy
