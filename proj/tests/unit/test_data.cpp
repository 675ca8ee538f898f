#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gridpolicy/data.hpp"
#include "gridpolicy/numeric_text.hpp"
#include "support/helpers.hpp"

using namespace gridpolicy;

namespace {

std::string header() {
  std::string h;
  for (const auto& c : scenario_columns()) h += (h.empty() ? "" : ",") + c;
  return h;
}

std::string day_rows(const std::string& date, int hours = 24, const std::string& load = "20000") {
  std::string out;
  for (int t = 0; t < hours; ++t) {
    char hh[8];
    std::snprintf(hh, sizeof hh, "%02d:00", t);
    out += date + " " + hh + ",1,2,3,4,30,40,3," + load + ",100,5,6\n";
  }
  return out;
}

}  // namespace

TEST_SUITE("data") {
  TEST_CASE("fixture loads with unit conversion and initial dispatch") {
    const auto s = load_scenarios(testing::fixture("two_days.csv"));
    REQUIRE(s.size() == 2);
    CHECK(s[0].date == "2019-01-15");
    CHECK(s[0].hours.size() == 24);
    CHECK(s[0].hours[0].observable.prior_day_rt_price == 0.032);
    CHECK(s[0].hours[0].hidden.rt_price == 0.03425);
    CHECK(s[0].hours[5].observable.hour_of_day == 5);
    REQUIRE(s[0].initial_action);
    CHECK(s[0].initial_action->chp[0].power_kw == 15000);
    CHECK(s[0].initial_action->chp[1].steam_klbh == 60);
    CHECK(s[0].initial_action->boiler_steam_klbh == 120);
    CHECK(s[0].initial_action->boiler_on);
    CHECK_FALSE(s[1].initial_action);
  }

  TEST_CASE("write then read is lossless") {
    std::mt19937_64 rng(3);
    std::vector<Scenario> s{testing::random_scenario(rng, "2019-02-01"), testing::random_scenario(rng, "2019-02-02")};
    Action init;
    init.chp = {{true, 13000.25, 40.5}, {false, 0, 0}};
    init.boiler_on = true;
    init.boiler_steam_klbh = 99.125;
    s[0].initial_action = init;
    std::stringstream io;
    write_scenarios(io, s);
    const auto back = read_scenarios(io);
    REQUIRE(back.size() == 2);
    for (std::size_t d = 0; d < 2; ++d) {
      CHECK(back[d].date == s[d].date);
      CHECK(back[d].initial_action == s[d].initial_action);
      for (std::size_t t = 0; t < 24; ++t) {
        const auto& a = back[d].hours[t];
        const auto& b = s[d].hours[t];
        CHECK(a.observable.temperature_c == b.observable.temperature_c);
        CHECK(a.observable.prior_day_rt_price == b.observable.prior_day_rt_price);
        CHECK(a.hidden.rt_price == b.hidden.rt_price);
        CHECK(a.hidden.electric_load_kw == b.hidden.electric_load_kw);
        CHECK(a.gas_price_per_dth == b.gas_price_per_dth);
      }
    }
  }

  TEST_CASE("malformed files are rejected with a located message") {
    auto fails_with = [](const std::string& text, const std::string& fragment) {
      std::istringstream in(text);
      try {
        read_scenarios(in, "t.csv");
      } catch (const DataError& e) {
        const std::string msg = e.what();
        INFO(msg);
        CHECK(msg.find(fragment) != std::string::npos);
        return;
      }
      FAIL("no DataError for: " << fragment);
    };
    fails_with("datetime,temperature_c\n", "missing column");
    fails_with(header() + "\n" + day_rows("2019-01-01", 23), "2019-01-01");
    fails_with(header() + "\n" + day_rows("2019-01-01") + day_rows("2019-01-01"), "2019-01-01");
    fails_with(header() + "\n" + day_rows("2019-01-01", 24, "abc"), "load_kw");
    fails_with(header() + "\n" + day_rows("2019-01-01", 24, "nan"), "load_kw");
    fails_with(header() + "\n" + day_rows("2019-01-01", 24, "-5"), "load_kw");
    fails_with(header() + "\n" + day_rows("2019-13-01"), "2019-13-01");
  }

  TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_scenarios("/nonexistent/none.csv"), FileNotFound);
  }

  TEST_CASE("seasons") {
    CHECK(season_of_date("2019-01-15") == Season::kWinter);
    CHECK(season_of_date("2019-05-01") == Season::kSummer);
    CHECK(season_of_date("2019-09-30") == Season::kSummer);
    CHECK(season_of_date("2019-10-01") == Season::kWinter);
    const std::vector<Scenario> s{testing::constant_scenario(1, 1, "2019-01-01"),
                                  testing::constant_scenario(1, 1, "2019-07-01"),
                                  testing::constant_scenario(1, 1, "2019-12-01")};
    const auto split = split_by_season(s);
    CHECK(split.winter.size() == 2);
    CHECK(split.summer.size() == 1);
  }

  TEST_CASE("add_days crosses months and years") {
    CHECK(add_days("2019-01-31", 1) == "2019-02-01");
    CHECK(add_days("2019-12-31", 1) == "2020-01-01");
    CHECK(add_days("2020-02-28", 1) == "2020-02-29");
    CHECK(add_days("2020-03-01", -1) == "2020-02-29");
  }

  TEST_CASE("synthetic generator") {
    SyntheticSpec spec = default_synthetic_spec(Season::kWinter);
    spec.days = 10;
    spec.seed = 4;
    const auto a = generate_synthetic(spec);
    const auto b = generate_synthetic(spec);
    REQUIRE(a.size() == 10);
    CHECK(a[9].date == add_days(spec.start_date, 9));
    for (std::size_t d = 0; d < a.size(); ++d)
      for (std::size_t t = 0; t < 24; ++t) {
        const auto& h = a[d].hours[t];
        CHECK(h.observable.temperature_c == b[d].hours[t].observable.temperature_c);
        CHECK(h.hidden.heat_load_klbh >= 0);
        CHECK(h.observable.solar_wm2 >= 0);
        CHECK(h.hidden.hydro_output_kw <= spec.hydro_cap_kw);
        CHECK(h.hidden.solar_output_kw == doctest::Approx(spec.solar_kw_per_wm2 * h.observable.solar_wm2));
      }
    spec.seed = 5;
    CHECK(generate_synthetic(spec)[0].hours[0].observable.temperature_c != a[0].hours[0].observable.temperature_c);

    // Zero noise reproduces the deterministic profile exactly.
    SyntheticSpec flat = default_synthetic_spec(Season::kSummer);
    for (SignalSpec* s : {&flat.temperature, &flat.wind, &flat.solar, &flat.streamflow, &flat.prior_price, &flat.gas_price})
      s->noise = s->day_noise = 0;
    flat.load_noise = flat.heat_noise = flat.rt_price_noise = 0;
    flat.days = 1;
    const auto f = generate_synthetic(flat);
    const double T6 = flat.temperature.mean + flat.temperature.amplitude * std::sin(2 * M_PI * (6 - flat.temperature.phase) / 24);
    CHECK(f[0].hours[6].observable.temperature_c == doctest::Approx(T6));
    CHECK(f[0].hours[6].hidden.electric_load_kw == doctest::Approx(flat.load_base + flat.load_per_degree * T6));
    CHECK(f[0].hours[6].hidden.rt_price == doctest::Approx(f[0].hours[6].observable.prior_day_rt_price));
  }

  TEST_CASE("synthetic spec JSON keeps defaults for missing keys") {
    const SyntheticSpec d = default_synthetic_spec(Season::kSummer);
    nlohmann::json j = {{"season", "summer"}, {"days", 3}};
    const auto s = j.get<SyntheticSpec>();
    CHECK(s.days == 3);
    CHECK(s.load_base == d.load_base);
    CHECK(nlohmann::json(d).get<SyntheticSpec>().temperature.amplitude == d.temperature.amplitude);
    SyntheticSpec bad = d;
    bad.days = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}
