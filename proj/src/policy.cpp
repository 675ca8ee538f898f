#include "gridpolicy/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gridpolicy {

namespace {
constexpr double kLastHour = kHoursPerDay - 1;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void InputNormalization::validate() const {
  if (offset.size() != scale.size()) throw std::invalid_argument("normalization: offset/scale length mismatch");
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (!std::isfinite(offset[i]) || !std::isfinite(scale[i]) || !(scale[i] > 0.0)) {
      throw std::invalid_argument("normalization: input " + std::to_string(i) + " needs a finite offset and positive scale");
    }
  }
}

InputNormalization InputNormalization::identity() {
  InputNormalization n;
  n.offset.assign(kPolicyInputs, 0.0);
  n.scale.assign(kPolicyInputs, 1.0);
  n.scale[kExogenousInputs] = kLastHour;
  return n;
}

InputNormalization InputNormalization::fit(std::span<const Scenario> scenarios) {
  InputNormalization n = identity();
  if (scenarios.empty()) return n;
  std::array<double, kExogenousInputs> lo;
  std::array<double, kExogenousInputs> hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (const Scenario& s : scenarios) {
    for (const HourRecord& h : s.hours) {
      const auto x = to_input_vector(h.observable);
      for (std::size_t a = 0; a < kExogenousInputs; ++a) {
        lo[a] = std::min(lo[a], x[a]);
        hi[a] = std::max(hi[a], x[a]);
      }
    }
  }
  for (std::size_t a = 0; a < kExogenousInputs; ++a) {
    if (!std::isfinite(lo[a])) continue;
    n.offset[a] = lo[a];
    n.scale[a] = hi[a] > lo[a] ? hi[a] - lo[a] : 1.0;
  }
  return n;
}

PolicyNetwork::PolicyNetwork(Architecture arch, InputNormalization normalization, std::vector<double> weights)
    : arch_(arch), normalization_(std::move(normalization)), weights_(std::move(weights)) {
  if (arch_.input_dim == 0 || arch_.hidden_dim == 0 || arch_.output_dim == 0) {
    throw std::domain_error("policy: architecture dimensions must be positive");
  }
  if (weights_.size() != arch_.weight_count()) {
    throw std::domain_error("policy: expected " + std::to_string(arch_.weight_count()) + " weights, got " +
                            std::to_string(weights_.size()));
  }
  if (normalization_.size() != arch_.input_dim) {
    throw std::domain_error("policy: normalization covers " + std::to_string(normalization_.size()) +
                            " inputs, architecture has " + std::to_string(arch_.input_dim));
  }
  normalization_.validate();
}

PolicyNetwork PolicyNetwork::zeros(Architecture arch, InputNormalization normalization) {
  std::vector<double> w(arch.weight_count(), 0.0);
  return PolicyNetwork(arch, std::move(normalization), std::move(w));
}

void PolicyNetwork::hidden_layer(std::span<const double> raw, std::vector<double>& activation) const {
  if (raw.size() != arch_.input_dim) throw std::domain_error("policy: input width mismatch");
  std::array<double, 16> small{};
  std::vector<double> large;
  double* x = small.data();
  if (arch_.input_dim > small.size()) {
    large.resize(arch_.input_dim);
    x = large.data();
  }
  for (std::size_t a = 0; a < arch_.input_dim; ++a) x[a] = normalization_.apply(a, raw[a]);

  activation.resize(arch_.hidden_dim);
  for (std::size_t j = 0; j < arch_.hidden_dim; ++j) {
    double z = b1(j);
    for (std::size_t a = 0; a < arch_.input_dim; ++a) z += w1(j, a) * x[a];
    activation[j] = sigmoid(z);
  }
}

std::vector<double> PolicyNetwork::forward(const ObservableState& obs) const {
  const auto raw = to_input_vector(obs);
  return forward_raw(raw);
}

std::vector<double> PolicyNetwork::forward_raw(std::span<const double> raw) const {
  std::vector<double> hidden;
  hidden_layer(raw, hidden);
  std::vector<double> u(arch_.output_dim);
  for (std::size_t k = 0; k < arch_.output_dim; ++k) {
    double z = b2(k);
    for (std::size_t j = 0; j < arch_.hidden_dim; ++j) z += w2(k, j) * hidden[j];
    u[k] = sigmoid(z);
  }
  return u;
}

Matrix PolicyNetwork::input_gradient(const ObservableState& obs) const {
  const auto raw = to_input_vector(obs);
  return input_gradient_raw(raw);
}

Matrix PolicyNetwork::input_gradient_raw(std::span<const double> raw) const {
  std::vector<double> hidden;
  hidden_layer(raw, hidden);
  // sigma'(z) = sigma(z) (1 - sigma(z))
  std::vector<double> hidden_slope(arch_.hidden_dim);
  for (std::size_t j = 0; j < arch_.hidden_dim; ++j) hidden_slope[j] = hidden[j] * (1.0 - hidden[j]);

  Matrix grad(arch_.output_dim, arch_.input_dim);
  for (std::size_t k = 0; k < arch_.output_dim; ++k) {
    double z = b2(k);
    for (std::size_t j = 0; j < arch_.hidden_dim; ++j) z += w2(k, j) * hidden[j];
    const double u = sigmoid(z);
    const double out_slope = u * (1.0 - u);
    for (std::size_t a = 0; a < arch_.input_dim; ++a) {
      double acc = 0.0;
      for (std::size_t j = 0; j < arch_.hidden_dim; ++j) acc += w2(k, j) * hidden_slope[j] * w1(j, a);
      grad(k, a) = out_slope * acc / normalization_.scale[a];
    }
  }
  return grad;
}

std::vector<double> encode(const PolicyNetwork& net) {
  const auto w = net.weights();
  return {w.begin(), w.end()};
}

PolicyNetwork decode(std::span<const double> genome, const Architecture& arch, const InputNormalization& normalization) {
  if (genome.size() != arch.weight_count()) {
    throw std::domain_error("decode: genome length " + std::to_string(genome.size()) + " does not match architecture (" +
                            std::to_string(arch.input_dim) + "," + std::to_string(arch.hidden_dim) + "," +
                            std::to_string(arch.output_dim) + ") which needs " + std::to_string(arch.weight_count()));
  }
  return PolicyNetwork(arch, normalization, std::vector<double>(genome.begin(), genome.end()));
}

void to_json(nlohmann::json& j, const InputNormalization& n) { j = {{"offset", n.offset}, {"scale", n.scale}}; }

void from_json(const nlohmann::json& j, InputNormalization& n) {
  n.offset = j.at("offset").get<std::vector<double>>();
  n.scale = j.at("scale").get<std::vector<double>>();
  n.validate();
}

void to_json(nlohmann::json& j, const Architecture& a) {
  j = {{"input_dim", a.input_dim}, {"hidden_dim", a.hidden_dim}, {"output_dim", a.output_dim}};
}

void from_json(const nlohmann::json& j, Architecture& a) {
  a.input_dim = j.at("input_dim").get<std::size_t>();
  a.hidden_dim = j.at("hidden_dim").get<std::size_t>();
  a.output_dim = j.at("output_dim").get<std::size_t>();
}

nlohmann::json policy_to_json(const PolicyNetwork& net) {
  const auto w = net.weights();
  return {{"architecture", net.architecture()},
          {"normalization", net.normalization()},
          {"weights", std::vector<double>(w.begin(), w.end())}};
}

PolicyNetwork policy_from_json(const nlohmann::json& j) {
  const auto arch = j.at("architecture").get<Architecture>();
  const auto norm = j.at("normalization").get<InputNormalization>();
  const auto weights = j.at("weights").get<std::vector<double>>();
  return decode(weights, arch, norm);
}

}  // namespace gridpolicy
