#pragma once

// Fitted component models of a CHP microgrid: two combustion-turbine CHP
// units with heat recovery, an auxiliary boiler, a back-pressure steam
// turbine and a grid tie.
//
// Units used throughout the library:
//   power kW, steam klb/h, gas dth, gas price $/dth, electricity price $/kWh,
//   emissions lb (reported in metric tonnes). One simulation step is 1 h, so
//   an hourly power in kW is also the energy of that step in kWh.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace gridpolicy {

inline constexpr double kPoundsPerTonne = 2204.62;

/// Raised when a fitted model produces a physically meaningless value
/// (e.g. a non-positive efficiency at a requested output).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChpParams {
  // efficiency(p) = a_c + b_c*(p/p_max) + c_c*(p/p_max)^2
  double a_c = 0.0;
  double b_c = 0.0;
  double c_c = 0.0;
  // extra steam fuel = max(a_q*q - b_q, 0), dth/klb and dth
  double a_q = 0.0;
  double b_q = 0.0;
  double p_min_kw = 0.0;
  double p_max_kw = 0.0;
  double ramp_down_kw = 0.0;  // negative
  double ramp_up_kw = 0.0;
  double q_min_klbh = 0.0;
  double q_max_klbh = 0.0;
  double heating_value_kwh_per_dth = 0.0;
};

struct BoilerParams {
  // fuel(q) = a_b*q^2 + b_b*q + c_b while committed
  double a_b = 0.0;
  double b_b = 0.0;
  double c_b = 0.0;
  double q_min_klbh = 0.0;
  double q_max_klbh = 0.0;
};

struct SteamTurbineParams {
  double a1_s = 0.0;  // slope above the breakpoint, kW per klb/h
  double b1_s = 0.0;
  double a2_s = 0.0;  // slope at or below the breakpoint
  double b2_s = 0.0;
  double c_s_klbh = 0.0;  // breakpoint
};

struct EmissionParams {
  double gas_lb_per_dth = 0.0;
  double grid_lb_per_kwh = 0.0;
  double heat_waste_threshold = 0.0;  // ratio steam/heat-load above which an hour counts as waste
};

enum class Season { kWinter, kSummer };

std::string to_string(Season season);
Season season_from_string(const std::string& name);

/// Unit indices: 0..nc-1 are the CHP units, nc is the boiler.
struct MicrogridConfig {
  std::vector<ChpParams> chp;
  BoilerParams boiler;
  SteamTurbineParams steam_turbine;
  EmissionParams emission;
  Season season = Season::kWinter;
  std::vector<std::size_t> switchable_units;  // sorted, unique

  std::size_t chp_count() const { return chp.size(); }
  std::size_t boiler_unit() const { return chp.size(); }
  bool is_switchable(std::size_t unit) const;
  std::string unit_name(std::size_t unit) const;  // "chp1", "chp2", ..., "boiler"
  std::size_t unit_from_name(const std::string& name) const;

  /// Throws std::invalid_argument naming the first broken invariant.
  void validate() const;
};

/// Coefficients and limits of the two-CHP campus plant. Summer makes CHP2 and
/// the boiler switchable.
MicrogridConfig default_config(Season season);

struct ChpDispatch {
  bool on = true;
  double power_kw = 0.0;
  double steam_klbh = 0.0;
  bool operator==(const ChpDispatch&) const = default;
};

/// One hour of independent decisions. Units that are off carry zero output.
struct Action {
  std::vector<ChpDispatch> chp;
  bool boiler_on = true;
  double boiler_steam_klbh = 0.0;

  double total_chp_power() const;
  double total_steam() const;
  bool operator==(const Action&) const = default;
};

double chp_efficiency(double p_kw, const ChpParams& params);
double chp_power_fuel(double p_kw, const ChpParams& params);
double chp_steam_fuel(double q_klbh, const ChpParams& params);
double boiler_fuel(double q_klbh, const BoilerParams& params, bool committed);
double steam_turbine_power(double q_total_klbh, const SteamTurbineParams& params);
double grid_exchange_cost(double p_e_kw, double price_per_kwh);
double total_gas(const Action& action, const MicrogridConfig& config);
double equivalent_emission_factor(double gas_dth, double load_kwh, double heat_load_klb,
                                  double gas_lb_per_dth);

void to_json(nlohmann::json& j, const MicrogridConfig& config);
void from_json(const nlohmann::json& j, MicrogridConfig& config);

}  // namespace gridpolicy
