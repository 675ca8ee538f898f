#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gridpolicy/data.hpp"
#include "gridpolicy/environment.hpp"
#include "gridpolicy/policy.hpp"
#include "oracle/straight_line.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(GRIDPOLICY_FIXTURES) / name;
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::path(GRIDPOLICY_SCRATCH) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline gridpolicy::HourRecord constant_hour(int hour, double load, double heat, double price = 0.05) {
  gridpolicy::HourRecord r;
  r.observable = {0.0, 3.0, 0.0, 10.0, price, hour};
  r.hidden = {load, heat, 0.0, 0.0, price};
  r.gas_price_per_dth = 3.0;
  return r;
}

inline gridpolicy::Scenario constant_scenario(double load, double heat, const std::string& date = "2019-01-15") {
  gridpolicy::Scenario s;
  s.date = date;
  for (int t = 0; t < gridpolicy::kHoursPerDay; ++t) s.hours.push_back(constant_hour(t, load, heat));
  return s;
}

/// Scenario with independently random signals in plausible ranges.
inline gridpolicy::Scenario random_scenario(std::mt19937_64& rng, const std::string& date = "2019-01-15") {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  gridpolicy::Scenario s;
  s.date = date;
  for (int t = 0; t < gridpolicy::kHoursPerDay; ++t) {
    gridpolicy::HourRecord r;
    r.observable = {-15 + 25 * u(rng), 10 * u(rng), 600 * u(rng), 30 * u(rng), -0.01 + 0.09 * u(rng), t};
    const double heat = u(rng) < 0.05 ? 0.0 : 50 + 400 * u(rng);
    r.hidden = {15000 + 20000 * u(rng), heat, 150 * u(rng), 1500 * u(rng), -0.02 + 0.12 * u(rng)};
    r.gas_price_per_dth = 2 + 3 * u(rng);
    s.hours.push_back(r);
  }
  return s;
}

inline std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<double> w(n);
  for (double& v : w) v = u(rng);
  return w;
}

inline oracle::Net to_oracle(const gridpolicy::PolicyNetwork& net) {
  oracle::Net o;
  o.hidden = static_cast<int>(net.architecture().hidden_dim);
  o.outputs = static_cast<int>(net.architecture().output_dim);
  o.w.assign(net.weights().begin(), net.weights().end());
  for (std::size_t i = 0; i < 6; ++i) {
    o.offset[i] = net.normalization().offset[i];
    o.scale[i] = net.normalization().scale[i];
  }
  return o;
}

inline std::vector<oracle::Hour> to_oracle(const gridpolicy::Scenario& s) {
  std::vector<oracle::Hour> day;
  for (const auto& r : s.hours) {
    const auto& o = r.observable;
    const auto& h = r.hidden;
    day.push_back({o.temperature_c, o.wind_mps, o.solar_wm2, o.streamflow_cms, o.prior_day_rt_price, o.hour_of_day,
                   h.electric_load_kw, h.heat_load_klbh, h.solar_output_kw, h.hydro_output_kw, h.rt_price,
                   r.gas_price_per_dth});
  }
  return day;
}

inline oracle::Start oracle_start(const gridpolicy::Scenario& s) {
  if (s.initial_action) {
    const auto& a = *s.initial_action;
    return {{a.chp[0].power_kw, a.chp[1].power_kw}, {a.chp[0].on, a.chp[1].on}};
  }
  return {{14000, 14000}, {true, true}};
}

}  // namespace testing
