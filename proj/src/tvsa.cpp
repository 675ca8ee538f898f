#include "gridpolicy/tvsa.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "gridpolicy/numeric_text.hpp"
#include "gridpolicy/svg.hpp"

namespace gridpolicy::tvsa {

namespace {

void check_hour(std::span<const Scenario> scenarios, int t) {
  if (t < 0 || t >= kHoursPerDay) throw std::domain_error("tvsa: hour index out of range");
  for (const Scenario& s : scenarios) {
    if (s.hours.size() != static_cast<std::size_t>(kHoursPerDay)) {
      throw std::domain_error("tvsa: scenario " + s.date + " does not have 24 hours");
    }
  }
}

std::array<double, kPolicyInputs> reference_input(const Moments& m, std::span<const Scenario> scenarios, int t) {
  std::array<double, kPolicyInputs> x{};
  for (std::size_t a = 0; a < kExogenousInputs; ++a) x[a] = m.mean[a];
  x[kExogenousInputs] = scenarios.front().hours[static_cast<std::size_t>(t)].observable.hour_of_day;
  return x;
}

}  // namespace

Moments ensemble_moments(std::span<const Scenario> scenarios, int t) {
  if (scenarios.size() < 2) throw std::domain_error("tvsa: need at least two scenarios for a covariance");
  check_hour(scenarios, t);
  const double n = static_cast<double>(scenarios.size());
  Moments m;
  for (const Scenario& s : scenarios) {
    const auto x = to_input_vector(s.hours[static_cast<std::size_t>(t)].observable);
    for (std::size_t a = 0; a < kExogenousInputs; ++a) m.mean[a] += x[a];
  }
  for (double& v : m.mean) v /= n;
  for (const Scenario& s : scenarios) {
    const auto x = to_input_vector(s.hours[static_cast<std::size_t>(t)].observable);
    for (std::size_t a = 0; a < kExogenousInputs; ++a) {
      for (std::size_t b = 0; b < kExogenousInputs; ++b) {
        m.covariance(a, b) += (x[a] - m.mean[a]) * (x[b] - m.mean[b]);
      }
    }
  }
  for (double& v : m.covariance.data) v /= n - 1.0;
  return m;
}

double Decomposition::total() const {
  double sum = 0.0;
  for (double v : first_order) sum += v;
  for (double v : second_order.data) sum += v;
  return sum;
}

Decomposition decompose_variance(std::span<const double> gradient, const Matrix& covariance) {
  const std::size_t n = gradient.size();
  if (covariance.rows != n || covariance.cols != n) {
    throw std::domain_error("decompose_variance: covariance does not match gradient length");
  }
  Decomposition d;
  d.first_order.resize(n);
  d.second_order = Matrix(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    d.first_order[a] = gradient[a] * gradient[a] * covariance(a, a);
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b) d.second_order(a, b) = gradient[a] * gradient[b] * covariance(a, b);
    }
  }
  return d;
}

std::string to_string(GradientPoint point) {
  return point == GradientPoint::kEnsembleMean ? "ensemble_mean" : "scenario_average";
}

GradientPoint gradient_point_from_string(const std::string& name) {
  if (name == "ensemble_mean") return GradientPoint::kEnsembleMean;
  if (name == "scenario_average") return GradientPoint::kScenarioAverage;
  throw std::invalid_argument("unknown gradient point '" + name + "' (ensemble_mean, scenario_average)");
}

std::array<double, kExogenousInputs> decision_gradient(const PolicyNetwork& policy, std::span<const Scenario> scenarios,
                                                       int t, std::size_t k, GradientPoint point) {
  if (k >= policy.architecture().output_dim) throw std::domain_error("tvsa: decision index out of range");
  std::array<double, kExogenousInputs> g{};
  if (point == GradientPoint::kEnsembleMean) {
    const Moments m = ensemble_moments(scenarios, t);
    const auto x = reference_input(m, scenarios, t);
    const Matrix jac = policy.input_gradient_raw(x);
    for (std::size_t a = 0; a < kExogenousInputs; ++a) g[a] = jac(k, a);
    return g;
  }
  if (scenarios.empty()) throw std::domain_error("tvsa: no scenarios");
  check_hour(scenarios, t);
  for (const Scenario& s : scenarios) {
    const Matrix jac = policy.input_gradient(s.hours[static_cast<std::size_t>(t)].observable);
    for (std::size_t a = 0; a < kExogenousInputs; ++a) g[a] += jac(k, a);
  }
  for (double& v : g) v /= static_cast<double>(scenarios.size());
  return g;
}

Decomposition decompose(const PolicyNetwork& policy, std::span<const Scenario> scenarios, int t, std::size_t k,
                        GradientPoint point) {
  const Moments m = ensemble_moments(scenarios, t);
  const auto g = decision_gradient(policy, scenarios, t, k, point);
  return decompose_variance(g, m.covariance);
}

Cell make_cell(const Decomposition& raw, std::size_t decision, int hour) {
  if (raw.first_order.size() != kExogenousInputs) throw std::domain_error("make_cell: expected five inputs");
  Cell cell;
  cell.decision = decision;
  cell.hour = hour;
  for (std::size_t a = 0; a < kExogenousInputs; ++a) cell.first_raw[a] = raw.first_order[a];
  for (std::size_t a = 0; a < kExogenousInputs; ++a) {
    for (std::size_t b = a + 1; b < kExogenousInputs; ++b) {
      cell.pairs.push_back({a, b, raw.second_order(a, b) + raw.second_order(b, a), 0.0});
    }
  }
  cell.decomposed_variance = raw.total();
  normalize_cell(cell);
  return cell;
}

void normalize_cell(Cell& cell) {
  double total = 0.0;
  for (double v : cell.first_raw) total += std::abs(v);
  for (const PairTerm& p : cell.pairs) total += std::abs(p.raw);
  cell.absolute_total = total;
  cell.zero = total == 0.0;
  for (std::size_t a = 0; a < kExogenousInputs; ++a) cell.first_normalized[a] = cell.zero ? 0.0 : cell.first_raw[a] / total;
  for (PairTerm& p : cell.pairs) p.normalized = cell.zero ? 0.0 : p.raw / total;
}

const Cell& Report::at(std::size_t decision, int hour) const {
  const std::size_t idx = decision * kHoursPerDay + static_cast<std::size_t>(hour);
  if (idx >= cells.size()) throw std::out_of_range("tvsa report: no such cell");
  return cells[idx];
}

Report analyze(const PolicyNetwork& policy, std::span<const Scenario> scenarios, const MicrogridConfig& config,
               GradientPoint point) {
  const DecisionLayout layout = DecisionLayout::for_config(config);
  if (policy.architecture().output_dim != layout.size()) {
    throw std::domain_error("tvsa: policy has " + std::to_string(policy.architecture().output_dim) +
                            " outputs, configuration needs " + std::to_string(layout.size()));
  }
  Report report;
  report.point = point;
  for (const auto& e : layout.entries) report.decision_names.push_back(e.name);
  report.input_names.assign(exogenous_input_names().begin(), exogenous_input_names().end());

  std::vector<Moments> moments;
  std::vector<std::vector<double>> reference_u;
  std::vector<std::vector<std::vector<double>>> sample_u;  // [hour][scenario][decision]
  for (int t = 0; t < kHoursPerDay; ++t) {
    moments.push_back(ensemble_moments(scenarios, t));
    reference_u.push_back(policy.forward_raw(reference_input(moments.back(), scenarios, t)));
    std::vector<std::vector<double>> us;
    for (const Scenario& s : scenarios) us.push_back(policy.forward(s.hours[static_cast<std::size_t>(t)].observable));
    sample_u.push_back(std::move(us));
  }

  const double n = static_cast<double>(scenarios.size());
  for (std::size_t k = 0; k < layout.size(); ++k) {
    const auto& entry = layout.entries[k];
    const bool continuous = entry.kind != DecisionLayout::Kind::kCommitment;
    const auto commit = layout.commitment_index(entry.unit);
    for (int t = 0; t < kHoursPerDay; ++t) {
      const auto g = decision_gradient(policy, scenarios, t, k, point);
      Cell cell = make_cell(decompose_variance(g, moments[static_cast<std::size_t>(t)].covariance), k, t);

      const auto& us = sample_u[static_cast<std::size_t>(t)];
      double mean = 0.0;
      for (const auto& u : us) mean += u[k];
      mean /= n;
      double var = 0.0;
      for (const auto& u : us) var += (u[k] - mean) * (u[k] - mean);
      cell.empirical_variance = var / (n - 1.0);

      if (continuous && commit) {
        cell.unit_off = reference_u[static_cast<std::size_t>(t)][*commit] < kCommitThreshold;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void write_report_csv(std::ostream& out, const Report& report) {
  out << "decision,hour,term_type,input_a,input_b,raw,normalized,flag\n";
  for (const Cell& c : report.cells) {
    const std::string& name = report.decision_names.at(c.decision);
    const std::string flag = c.unit_off ? "unit_off" : c.zero ? "zero" : "";
    auto norm = [&](double v) { return c.flagged() ? std::string() : format_double(v); };
    for (std::size_t a = 0; a < kExogenousInputs; ++a) {
      out << name << ',' << c.hour << ",first," << report.input_names[a] << ",," << format_double(c.first_raw[a])
          << ',' << norm(c.first_normalized[a]) << ',' << flag << '\n';
    }
    for (const PairTerm& p : c.pairs) {
      out << name << ',' << c.hour << ',' << (p.raw < 0 ? "second_neg" : "second_pos") << ','
          << report.input_names[p.a] << ',' << report.input_names[p.b] << ',' << format_double(p.raw) << ','
          << norm(p.normalized) << ',' << flag << '\n';
    }
  }
}

std::string render_decision_svg(const Report& report, std::size_t decision) {
  if (decision >= report.decision_names.size()) throw std::out_of_range("tvsa svg: no such decision");
  std::vector<std::string> hours;
  for (int t = 0; t < kHoursPerDay; ++t) hours.push_back(std::to_string(t));

  svg::StackedPanel first{"First-order share", {}, {}};
  svg::StackedPanel positive{"Positive interactions", {}, {}};
  svg::StackedPanel negative{"Negative interactions", {}, {}};
  for (std::size_t a = 0; a < kExogenousInputs; ++a) first.series.push_back({report.input_names[a], {}});
  const auto& pairs = report.at(decision, 0).pairs;
  for (const PairTerm& p : pairs) {
    const std::string label = report.input_names[p.a] + " x " + report.input_names[p.b];
    positive.series.push_back({label, {}});
    negative.series.push_back({label, {}});
  }
  for (int t = 0; t < kHoursPerDay; ++t) {
    const Cell& c = report.at(decision, t);
    for (auto* panel : {&first, &positive, &negative}) panel->blank.push_back(c.flagged());
    for (std::size_t a = 0; a < kExogenousInputs; ++a) first.series[a].values.push_back(c.first_normalized[a]);
    for (std::size_t i = 0; i < c.pairs.size(); ++i) {
      const double v = c.pairs[i].normalized;
      positive.series[i].values.push_back(v > 0 ? v : 0.0);
      negative.series[i].values.push_back(v < 0 ? v : 0.0);
    }
  }
  return svg::stacked_bars("Normalized conditional variance: " + report.decision_names[decision], hours,
                           {first, positive, negative});
}

}  // namespace gridpolicy::tvsa
