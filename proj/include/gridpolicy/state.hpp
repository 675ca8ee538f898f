#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gridpolicy/grid_model.hpp"

namespace gridpolicy {

inline constexpr int kHoursPerDay = 24;

/// Signals the policy sees before deciding. Prices are in $/kWh.
struct ObservableState {
  double temperature_c = 0.0;
  double wind_mps = 0.0;
  double solar_wm2 = 0.0;
  double streamflow_cms = 0.0;
  double prior_day_rt_price = 0.0;
  int hour_of_day = 0;
};

/// Number of exogenous observable signals (hour of day excluded).
inline constexpr std::size_t kExogenousInputs = 5;
/// Policy input width: the exogenous signals plus hour of day.
inline constexpr std::size_t kPolicyInputs = kExogenousInputs + 1;

inline const std::array<std::string, kExogenousInputs>& exogenous_input_names() {
  static const std::array<std::string, kExogenousInputs> names{"temperature", "wind_speed", "solar_radiation",
                                                               "streamflow", "prior_day_price"};
  return names;
}

/// Raw policy inputs in the fixed order temperature, wind, solar, streamflow,
/// prior-day price, hour.
inline std::array<double, kPolicyInputs> to_input_vector(const ObservableState& obs) {
  return {obs.temperature_c, obs.wind_mps, obs.solar_wm2, obs.streamflow_cms, obs.prior_day_rt_price,
          static_cast<double>(obs.hour_of_day)};
}

/// Realizations revealed only after the decision. Prices are in $/kWh.
struct HiddenState {
  double electric_load_kw = 0.0;
  double heat_load_klbh = 0.0;
  double solar_output_kw = 0.0;
  double hydro_output_kw = 0.0;
  double rt_price = 0.0;
};

struct HourRecord {
  ObservableState observable;
  HiddenState hidden;
  double gas_price_per_dth = 0.0;
};

/// One day of hourly exogenous data.
struct Scenario {
  std::string date;  // YYYY-MM-DD
  std::vector<HourRecord> hours;
  std::optional<Action> initial_action;
};

}  // namespace gridpolicy
