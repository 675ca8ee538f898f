#include "gridpolicy/data.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>

#include "gridpolicy/csv.hpp"
#include "gridpolicy/numeric_text.hpp"

namespace gridpolicy {

namespace {

constexpr int kPriceShift = 3;  // $/MWh <-> $/kWh

std::optional<std::chrono::year_month_day> parse_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  const int y = std::stoi(text.substr(0, 4));
  const unsigned m = static_cast<unsigned>(std::stoi(text.substr(5, 2)));
  const unsigned d = static_cast<unsigned>(std::stoi(text.substr(8, 2)));
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

std::string format_date(const std::chrono::year_month_day& ymd) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string init_power_column(std::size_t i) { return "init_chp" + std::to_string(i + 1) + "_power_kw"; }
std::string init_steam_column(std::size_t i) { return "init_chp" + std::to_string(i + 1) + "_steam_klbh"; }
const char* const kInitBoilerColumn = "init_boiler_steam_klbh";

struct Row {
  std::size_t line = 0;
  std::string date;
  int hour = 0;
  HourRecord record;
  std::map<std::string, std::string> init;  // raw optional cells
};

}  // namespace

const std::vector<std::string>& scenario_columns() {
  static const std::vector<std::string> columns{
      "datetime",         "temperature_c",  "wind_mps", "solar_wm2", "streamflow_cms", "price_prior_rt_usd_mwh",
      "price_rt_usd_mwh", "gas_usd_dth",    "load_kw",  "heat_load_klbh", "solar_kw", "hydro_kw"};
  return columns;
}

std::vector<Scenario> read_scenarios(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(source + ": empty file");
  const std::vector<std::string> header = split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const std::string& name : scenario_columns()) {
    if (!col.count(name)) throw DataError(source + ": missing column '" + name + "'");
  }
  std::vector<std::string> init_columns;
  for (const std::string& h : header) {
    if (h.rfind("init_", 0) == 0) init_columns.push_back(h);
  }

  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    const std::string where = source + " row " + std::to_string(line_no);
    if (cells.size() != header.size()) {
      throw DataError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                      std::to_string(cells.size()));
    }
    auto number = [&](const std::string& name, int shift = 0) {
      const std::string& text = cells[col.at(name)];
      std::optional<double> v;
      try {
        v = parse_double(shift == 0 ? text : shift_decimal(text, shift));
      } catch (const std::invalid_argument&) {
        v.reset();
      }
      if (!v || !std::isfinite(*v)) throw DataError(where + ": column '" + name + "' has non-finite value '" + text + "'");
      return *v;
    };
    auto nonnegative = [&](const std::string& name) {
      const double v = number(name);
      if (v < 0.0) throw DataError(where + ": column '" + name + "' must be nonnegative");
      return v;
    };

    Row r;
    r.line = line_no;
    const std::string& stamp = cells[col.at("datetime")];
    if (stamp.size() < 13 || (stamp[10] != ' ' && stamp[10] != 'T') || !parse_date(stamp.substr(0, 10)) ||
        !std::isdigit(static_cast<unsigned char>(stamp[11])) || !std::isdigit(static_cast<unsigned char>(stamp[12]))) {
      throw DataError(where + ": datetime '" + stamp + "' is not 'YYYY-MM-DD HH:00'");
    }
    r.date = stamp.substr(0, 10);
    r.hour = std::stoi(stamp.substr(11, 2));
    if (r.hour > 23) throw DataError(where + ": hour " + std::to_string(r.hour) + " out of range");

    ObservableState& o = r.record.observable;
    o.temperature_c = number("temperature_c");
    o.wind_mps = number("wind_mps");
    o.solar_wm2 = number("solar_wm2");
    o.streamflow_cms = number("streamflow_cms");
    o.prior_day_rt_price = number("price_prior_rt_usd_mwh", -kPriceShift);
    o.hour_of_day = r.hour;
    HiddenState& h = r.record.hidden;
    h.rt_price = number("price_rt_usd_mwh", -kPriceShift);
    h.electric_load_kw = nonnegative("load_kw");
    h.heat_load_klbh = nonnegative("heat_load_klbh");
    h.solar_output_kw = nonnegative("solar_kw");
    h.hydro_output_kw = nonnegative("hydro_kw");
    r.record.gas_price_per_dth = number("gas_usd_dth");
    for (const std::string& c : init_columns) r.init[c] = cells[col.at(c)];
    rows.push_back(std::move(r));
  }

  std::vector<Scenario> scenarios;
  for (std::size_t i = 0; i < rows.size();) {
    const std::string& date = rows[i].date;
    std::size_t j = i;
    while (j < rows.size() && rows[j].date == date) ++j;
    if (j - i != static_cast<std::size_t>(kHoursPerDay)) {
      throw DataError(source + " row " + std::to_string(rows[i].line) + ": partial day " + date + " has " +
                      std::to_string(j - i) + " rows, expected 24");
    }
    for (const Scenario& s : scenarios) {
      if (s.date == date) throw DataError(source + " row " + std::to_string(rows[i].line) + ": date " + date + " repeats");
    }
    Scenario s;
    s.date = date;
    for (std::size_t k = i; k < j; ++k) {
      if (rows[k].hour != static_cast<int>(k - i)) {
        throw DataError(source + " row " + std::to_string(rows[k].line) + ": expected hour " + std::to_string(k - i) +
                        " of " + date + ", found " + std::to_string(rows[k].hour));
      }
      s.hours.push_back(rows[k].record);
    }

    const auto& init = rows[i].init;
    bool any = false;
    for (const auto& [name, text] : init) any = any || !text.empty();
    if (any) {
      const std::string where = source + " row " + std::to_string(rows[i].line);
      auto value = [&](const std::string& name) {
        const auto it = init.find(name);
        if (it == init.end()) throw DataError(where + ": missing column '" + name + "'");
        const auto v = parse_double(it->second);
        if (!v || !std::isfinite(*v) || *v < 0.0) {
          throw DataError(where + ": column '" + name + "' needs a finite nonnegative value");
        }
        return *v;
      };
      Action a;
      std::size_t nc = 0;
      while (init.count(init_power_column(nc))) ++nc;
      for (std::size_t c = 0; c < nc; ++c) {
        const double p = value(init_power_column(c));
        const double q = value(init_steam_column(c));
        a.chp.push_back({p > 0.0, p, q});
      }
      a.boiler_steam_klbh = value(kInitBoilerColumn);
      a.boiler_on = a.boiler_steam_klbh > 0.0;
      s.initial_action = a;
    }
    scenarios.push_back(std::move(s));
    i = j;
  }
  if (scenarios.empty()) throw DataError(source + ": no data rows");
  return scenarios;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("file not found: " + path.string());
  return read_scenarios(in, path.string());
}

void write_scenarios(std::ostream& out, std::span<const Scenario> scenarios) {
  std::size_t nc = 0;
  for (const Scenario& s : scenarios) {
    if (s.initial_action) nc = std::max(nc, s.initial_action->chp.size());
  }
  const bool with_init = std::any_of(scenarios.begin(), scenarios.end(), [](const Scenario& s) { return s.initial_action.has_value(); });

  const auto& cols = scenario_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  if (with_init) {
    for (std::size_t c = 0; c < nc; ++c) out << ',' << init_power_column(c) << ',' << init_steam_column(c);
    out << ',' << kInitBoilerColumn;
  }
  out << '\n';

  for (const Scenario& s : scenarios) {
    if (s.hours.size() != static_cast<std::size_t>(kHoursPerDay)) {
      throw std::invalid_argument("write_scenarios: scenario " + s.date + " does not have 24 hours");
    }
    for (const HourRecord& r : s.hours) {
      const ObservableState& o = r.observable;
      const HiddenState& h = r.hidden;
      char stamp[8];
      std::snprintf(stamp, sizeof stamp, " %02d:00", o.hour_of_day);
      out << s.date << stamp << ',' << format_double(o.temperature_c) << ',' << format_double(o.wind_mps) << ','
          << format_double(o.solar_wm2) << ',' << format_double(o.streamflow_cms) << ','
          << shift_decimal(format_double(o.prior_day_rt_price), kPriceShift) << ','
          << shift_decimal(format_double(h.rt_price), kPriceShift) << ',' << format_double(r.gas_price_per_dth) << ','
          << format_double(h.electric_load_kw) << ',' << format_double(h.heat_load_klbh) << ','
          << format_double(h.solar_output_kw) << ',' << format_double(h.hydro_output_kw);
      if (with_init) {
        const bool first = &r == &s.hours.front();
        for (std::size_t c = 0; c < nc; ++c) {
          if (first && s.initial_action && c < s.initial_action->chp.size()) {
            const ChpDispatch& d = s.initial_action->chp[c];
            out << ',' << format_double(d.on ? d.power_kw : 0.0) << ',' << format_double(d.steam_klbh);
          } else {
            out << ",,";
          }
        }
        out << ',';
        if (first && s.initial_action) out << format_double(s.initial_action->boiler_steam_klbh);
      }
      out << '\n';
    }
  }
}

void save_scenarios(const std::filesystem::path& path, std::span<const Scenario> scenarios) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_scenarios(out, scenarios);
}

Season season_of_date(const std::string& date) {
  const auto ymd = parse_date(date.substr(0, std::min<std::size_t>(date.size(), 10)));
  if (!ymd || date.size() < 10) throw DataError("unparseable date '" + date + "', expected YYYY-MM-DD");
  const unsigned m = static_cast<unsigned>(ymd->month());
  return (m >= 5 && m <= 9) ? Season::kSummer : Season::kWinter;
}

SeasonSplit split_by_season(std::span<const Scenario> scenarios) {
  SeasonSplit split;
  for (const Scenario& s : scenarios) {
    (season_of_date(s.date) == Season::kWinter ? split.winter : split.summer).push_back(s);
  }
  return split;
}

std::string add_days(const std::string& date, int days) {
  const auto ymd = parse_date(date);
  if (!ymd) throw DataError("unparseable date '" + date + "', expected YYYY-MM-DD");
  return format_date(std::chrono::year_month_day{std::chrono::sys_days{*ymd} + std::chrono::days{days}});
}

void SyntheticSpec::validate() const {
  auto check = [](const SignalSpec& s, const char* name) {
    if (!(s.noise >= 0.0) || !(s.day_noise >= 0.0)) {
      throw std::invalid_argument(std::string("synthetic spec: ") + name + " noise scales must be nonnegative");
    }
  };
  check(temperature, "temperature");
  check(wind, "wind");
  check(solar, "solar");
  check(streamflow, "streamflow");
  check(prior_price, "prior_price");
  check(gas_price, "gas_price");
  if (!(load_noise >= 0.0 && heat_noise >= 0.0 && rt_price_noise >= 0.0)) {
    throw std::invalid_argument("synthetic spec: noise scales must be nonnegative");
  }
  if (days == 0) throw std::invalid_argument("synthetic spec: days must be positive");
  if (!parse_date(start_date)) throw std::invalid_argument("synthetic spec: bad start_date '" + start_date + "'");
}

SyntheticSpec default_synthetic_spec(Season season) {
  SyntheticSpec s;
  s.season = season;
  if (season == Season::kWinter) {
    s.start_date = "2019-01-07";
    s.temperature = {-3.0, 4.0, 9.0, 0.8, 3.0};
    s.wind = {4.0, 1.0, 8.0, 0.8, 1.0};
    s.solar = {100.0, 150.0, 6.0, 20.0, 30.0};
    s.streamflow = {15.0, 0.0, 0.0, 0.5, 4.0};
    s.prior_price = {35.0, 10.0, 12.0, 3.0, 5.0};
    s.gas_price = {3.0, 0.0, 0.0, 0.0, 0.0};
    s.load_base = 28000.0;
    s.load_per_degree = -150.0;
    s.load_noise = 400.0;
    s.heat_base = 200.0;
    s.heat_per_degree = -6.0;
    s.heat_noise = 8.0;
  } else {
    s.start_date = "2019-07-01";
    s.temperature = {22.0, 5.0, 9.0, 0.8, 3.0};
    s.wind = {3.0, 1.0, 8.0, 0.8, 1.0};
    s.solar = {250.0, 350.0, 6.0, 30.0, 50.0};
    s.streamflow = {8.0, 0.0, 0.0, 0.4, 2.0};
    s.prior_price = {40.0, 15.0, 12.0, 4.0, 6.0};
    s.gas_price = {2.5, 0.0, 0.0, 0.0, 0.0};
    s.load_base = 25000.0;
    s.load_per_degree = 200.0;
    s.load_noise = 400.0;
    s.heat_base = 120.0;
    s.heat_per_degree = -3.0;
    s.heat_noise = 5.0;
  }
  s.rt_price_noise = 4.0;
  return s;
}

std::vector<Scenario> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::array<const SignalSpec*, 6> signals{&spec.temperature, &spec.wind,        &spec.solar,
                                                 &spec.streamflow,  &spec.prior_price, &spec.gas_price};

  std::vector<Scenario> out;
  for (std::size_t d = 0; d < spec.days; ++d) {
    Scenario s;
    s.date = add_days(spec.start_date, static_cast<int>(d));
    std::array<double, 6> day_shift{};
    for (std::size_t i = 0; i < signals.size(); ++i) day_shift[i] = signals[i]->day_noise * gauss(rng);

    for (int t = 0; t < kHoursPerDay; ++t) {
      std::array<double, 6> v{};
      for (std::size_t i = 0; i < signals.size(); ++i) {
        const SignalSpec& sig = *signals[i];
        const double wave = sig.amplitude * std::sin(2.0 * std::numbers::pi * (t - sig.phase) / kHoursPerDay);
        v[i] = sig.mean + wave + day_shift[i] + sig.noise * gauss(rng);
      }
      const double load_e = gauss(rng);
      const double heat_e = gauss(rng);
      const double price_e = gauss(rng);

      HourRecord r;
      ObservableState& o = r.observable;
      o.temperature_c = v[0];
      o.wind_mps = std::max(0.0, v[1]);
      o.solar_wm2 = std::max(0.0, v[2]);
      o.streamflow_cms = std::max(0.0, v[3]);
      o.prior_day_rt_price = v[4] / 1000.0;
      o.hour_of_day = t;
      HiddenState& h = r.hidden;
      h.electric_load_kw = std::max(0.0, spec.load_base + spec.load_per_degree * o.temperature_c + spec.load_noise * load_e);
      h.heat_load_klbh = std::max(0.0, spec.heat_base + spec.heat_per_degree * o.temperature_c + spec.heat_noise * heat_e);
      h.solar_output_kw = spec.solar_kw_per_wm2 * o.solar_wm2;
      h.hydro_output_kw = std::min(spec.hydro_cap_kw, spec.hydro_kw_per_cms * o.streamflow_cms);
      h.rt_price = (v[4] + spec.rt_price_noise * price_e) / 1000.0;
      r.gas_price_per_dth = v[5];
      s.hours.push_back(r);
    }
    out.push_back(std::move(s));
  }
  return out;
}

void to_json(nlohmann::json& j, const SignalSpec& s) {
  j = {{"mean", s.mean}, {"amplitude", s.amplitude}, {"phase", s.phase}, {"noise", s.noise}, {"day_noise", s.day_noise}};
}

void from_json(const nlohmann::json& j, SignalSpec& s) {
  s.mean = j.value("mean", s.mean);
  s.amplitude = j.value("amplitude", s.amplitude);
  s.phase = j.value("phase", s.phase);
  s.noise = j.value("noise", s.noise);
  s.day_noise = j.value("day_noise", s.day_noise);
}

void to_json(nlohmann::json& j, const SyntheticSpec& s) {
  j = {{"seed", s.seed},
       {"days", s.days},
       {"season", to_string(s.season)},
       {"start_date", s.start_date},
       {"temperature", s.temperature},
       {"wind", s.wind},
       {"solar", s.solar},
       {"streamflow", s.streamflow},
       {"prior_price", s.prior_price},
       {"gas_price", s.gas_price},
       {"load_base", s.load_base},
       {"load_per_degree", s.load_per_degree},
       {"load_noise", s.load_noise},
       {"heat_base", s.heat_base},
       {"heat_per_degree", s.heat_per_degree},
       {"heat_noise", s.heat_noise},
       {"solar_kw_per_wm2", s.solar_kw_per_wm2},
       {"hydro_kw_per_cms", s.hydro_kw_per_cms},
       {"hydro_cap_kw", s.hydro_cap_kw},
       {"rt_price_noise", s.rt_price_noise}};
}

void from_json(const nlohmann::json& j, SyntheticSpec& s) {
  if (j.contains("season")) s = default_synthetic_spec(season_from_string(j.at("season").get<std::string>()));
  s.seed = j.value("seed", s.seed);
  s.days = j.value("days", s.days);
  s.start_date = j.value("start_date", s.start_date);
  for (auto [key, target] : {std::pair{"temperature", &s.temperature}, std::pair{"wind", &s.wind},
                             std::pair{"solar", &s.solar}, std::pair{"streamflow", &s.streamflow},
                             std::pair{"prior_price", &s.prior_price}, std::pair{"gas_price", &s.gas_price}}) {
    if (j.contains(key)) from_json(j.at(key), *target);
  }
  s.load_base = j.value("load_base", s.load_base);
  s.load_per_degree = j.value("load_per_degree", s.load_per_degree);
  s.load_noise = j.value("load_noise", s.load_noise);
  s.heat_base = j.value("heat_base", s.heat_base);
  s.heat_per_degree = j.value("heat_per_degree", s.heat_per_degree);
  s.heat_noise = j.value("heat_noise", s.heat_noise);
  s.solar_kw_per_wm2 = j.value("solar_kw_per_wm2", s.solar_kw_per_wm2);
  s.hydro_kw_per_cms = j.value("hydro_kw_per_cms", s.hydro_kw_per_cms);
  s.hydro_cap_kw = j.value("hydro_cap_kw", s.hydro_cap_kw);
  s.rt_price_noise = j.value("rt_price_noise", s.rt_price_noise);
  s.validate();
}

}  // namespace gridpolicy
