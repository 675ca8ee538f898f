#pragma once

// Scenario files and the synthetic scenario generator.
//
// CSV schema, one row per hour, 24 consecutive rows per date:
//   datetime            YYYY-MM-DD HH:00 (a 'T' separator is also accepted)
//   temperature_c       deg C
//   wind_mps            m/s
//   solar_wm2           W/m2
//   streamflow_cms      m3/s
//   price_prior_rt_usd_mwh, price_rt_usd_mwh   $/MWh (stored internally as $/kWh)
//   gas_usd_dth         $/dth
//   load_kw, heat_load_klbh, solar_kw, hydro_kw
// Optional previous-hour dispatch for hour 0, read from the first row of
// each day: init_chp<i>_power_kw, init_chp<i>_steam_klbh, init_boiler_steam_klbh.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridpolicy/grid_model.hpp"
#include "gridpolicy/state.hpp"

namespace gridpolicy {

/// Malformed scenario data. The message names the source, row and column.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The input file does not exist or cannot be opened.
class FileNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& scenario_columns();

std::vector<Scenario> read_scenarios(std::istream& in, const std::string& source = "scenarios");
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

/// Full precision; load_scenarios(write_scenarios(s)) == s.
void write_scenarios(std::ostream& out, std::span<const Scenario> scenarios);
void save_scenarios(const std::filesystem::path& path, std::span<const Scenario> scenarios);

/// October to April is winter, May to September is summer.
Season season_of_date(const std::string& date);

struct SeasonSplit {
  std::vector<Scenario> winter;
  std::vector<Scenario> summer;
};
SeasonSplit split_by_season(std::span<const Scenario> scenarios);

/// value(day, t) = mean + amplitude sin(2 pi (t - phase) / 24) + day_noise e_day + noise e_t
/// with independent standard normal e_day (one per day) and e_t (one per hour).
struct SignalSpec {
  double mean = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double noise = 0.0;
  double day_noise = 0.0;
};

/// Hidden signals follow the observables through affine rules:
///   load_kw        = load_base + load_per_degree * T + load_noise e
///   heat_load_klbh = max(0, heat_base + heat_per_degree * T + heat_noise e)
///   solar_kw       = solar_kw_per_wm2 * solar_wm2
///   hydro_kw       = min(hydro_cap_kw, hydro_kw_per_cms * streamflow)
///   rt price       = prior-day price + rt_price_noise e   ($/MWh)
/// Solar radiation, wind and streamflow are clipped at 0.
struct SyntheticSpec {
  std::uint64_t seed = 1;
  std::size_t days = 7;
  Season season = Season::kWinter;
  std::string start_date = "2019-01-07";

  SignalSpec temperature;
  SignalSpec wind;
  SignalSpec solar;
  SignalSpec streamflow;
  SignalSpec prior_price;  // $/MWh
  SignalSpec gas_price;    // $/dth

  double load_base = 0.0;
  double load_per_degree = 0.0;
  double load_noise = 0.0;
  double heat_base = 0.0;
  double heat_per_degree = 0.0;
  double heat_noise = 0.0;
  double solar_kw_per_wm2 = 0.2;
  double hydro_kw_per_cms = 50.0;
  double hydro_cap_kw = 1500.0;
  double rt_price_noise = 0.0;

  void validate() const;
};

SyntheticSpec default_synthetic_spec(Season season);

std::vector<Scenario> generate_synthetic(const SyntheticSpec& spec);

void to_json(nlohmann::json& j, const SignalSpec& s);
void from_json(const nlohmann::json& j, SignalSpec& s);
/// Missing keys keep the season defaults.
void to_json(nlohmann::json& j, const SyntheticSpec& s);
void from_json(const nlohmann::json& j, SyntheticSpec& s);

/// "2019-01-31" + 1 -> "2019-02-01"
std::string add_days(const std::string& date, int days);

}  // namespace gridpolicy
