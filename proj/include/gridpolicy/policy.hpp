#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "gridpolicy/state.hpp"

namespace gridpolicy {

/// Dense row-major matrix, just enough for Jacobians and covariances.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Per-input affine map x = (raw - offset) / scale.
struct InputNormalization {
  std::vector<double> offset;
  std::vector<double> scale;

  std::size_t size() const { return offset.size(); }
  double apply(std::size_t input, double raw) const { return (raw - offset[input]) / scale[input]; }
  void validate() const;

  /// offset 0, scale 1 for the exogenous signals; hour of day maps to h/23.
  static InputNormalization identity();
  /// Min-max over the training scenarios for each exogenous signal; hour of
  /// day is always h/23. Constant signals get scale 1.
  static InputNormalization fit(std::span<const Scenario> scenarios);

  bool operator==(const InputNormalization&) const = default;
};

struct Architecture {
  std::size_t input_dim = kPolicyInputs;
  std::size_t hidden_dim = 15;
  std::size_t output_dim = 0;

  /// (input_dim + 1) * hidden_dim + (hidden_dim + 1) * output_dim
  std::size_t weight_count() const { return (input_dim + 1) * hidden_dim + (hidden_dim + 1) * output_dim; }
  bool operator==(const Architecture&) const = default;
};

/// Single-hidden-layer sigmoid network u = sig(W2 sig(W1 x + b1) + b2).
///
/// Flat weight layout (stable, used by archives and policy files):
///   W1 row-major [hidden][input], b1 [hidden], W2 row-major [output][hidden], b2 [output].
/// Immutable after construction.
class PolicyNetwork {
 public:
  PolicyNetwork(Architecture arch, InputNormalization normalization, std::vector<double> weights);

  static PolicyNetwork zeros(Architecture arch, InputNormalization normalization);

  const Architecture& architecture() const { return arch_; }
  const InputNormalization& normalization() const { return normalization_; }
  std::span<const double> weights() const { return weights_; }

  std::vector<double> forward(const ObservableState& obs) const;
  /// Forward pass on raw (unnormalized) inputs.
  std::vector<double> forward_raw(std::span<const double> raw) const;

  /// Jacobian du_k / d(raw input a), output_dim x input_dim.
  Matrix input_gradient(const ObservableState& obs) const;
  Matrix input_gradient_raw(std::span<const double> raw) const;

  bool operator==(const PolicyNetwork&) const = default;

 private:
  double w1(std::size_t j, std::size_t a) const { return weights_[j * arch_.input_dim + a]; }
  double b1(std::size_t j) const { return weights_[arch_.hidden_dim * arch_.input_dim + j]; }
  double w2(std::size_t k, std::size_t j) const { return weights_[w2_offset() + k * arch_.hidden_dim + j]; }
  double b2(std::size_t k) const { return weights_[w2_offset() + arch_.output_dim * arch_.hidden_dim + k]; }
  std::size_t w2_offset() const { return (arch_.input_dim + 1) * arch_.hidden_dim; }

  void hidden_layer(std::span<const double> raw, std::vector<double>& activation) const;

  Architecture arch_;
  InputNormalization normalization_;
  std::vector<double> weights_;
};

double sigmoid(double z);

std::vector<double> encode(const PolicyNetwork& net);
/// Throws std::domain_error when the genome length does not match `arch`.
PolicyNetwork decode(std::span<const double> genome, const Architecture& arch, const InputNormalization& normalization);

void to_json(nlohmann::json& j, const InputNormalization& n);
void from_json(const nlohmann::json& j, InputNormalization& n);
void to_json(nlohmann::json& j, const Architecture& a);
void from_json(const nlohmann::json& j, Architecture& a);

/// Policy artifact: {"architecture": ..., "normalization": ..., "weights": [...]}.
nlohmann::json policy_to_json(const PolicyNetwork& net);
PolicyNetwork policy_from_json(const nlohmann::json& j);

}  // namespace gridpolicy
