#include "gridpolicy/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gridpolicy::bench {

std::vector<double> dtlz2(std::span<const double> x, std::size_t objectives) {
  if (objectives < 2 || x.size() < objectives) throw std::domain_error("dtlz2: need n >= M >= 2");
  const std::size_t m = objectives;
  double g = 0.0;
  for (std::size_t i = m - 1; i < x.size(); ++i) g += (x[i] - 0.5) * (x[i] - 0.5);

  std::vector<double> f(m, 1.0 + g);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j + i + 1 < m; ++j) f[i] *= std::cos(0.5 * std::numbers::pi * x[j]);
    if (i > 0) f[i] *= std::sin(0.5 * std::numbers::pi * x[m - 1 - i]);
  }
  return f;
}

moea::Evaluator dtlz2_evaluator(std::size_t objectives) {
  return [objectives](std::span<const double> x) { return moea::Evaluation{dtlz2(x, objectives), 0.0}; };
}

double generational_distance_sphere(const moea::Archive& archive) {
  if (archive.empty()) throw std::domain_error("generational distance of an empty archive");
  double sum = 0.0;
  for (const moea::Solution& s : archive.members()) {
    double r2 = 0.0;
    for (double f : s.objectives) r2 += f * f;
    const double d = std::sqrt(r2) - 1.0;
    sum += d * d;
  }
  return std::sqrt(sum) / static_cast<double>(archive.size());
}

moea::Archive random_search(const moea::Evaluator& evaluator, std::size_t num_variables, double lower, double upper,
                            std::vector<double> epsilons, std::size_t nfe, std::uint64_t seed) {
  moea::Rng rng(seed);
  std::uniform_real_distribution<double> dist(lower, upper);
  moea::Archive archive(std::move(epsilons));
  std::vector<double> x(num_variables);
  for (std::size_t i = 0; i < nfe; ++i) {
    for (double& v : x) v = dist(rng);
    moea::Evaluation e = evaluator(x);
    archive.insert(moea::Solution{x, std::move(e.objectives), e.violation, moea::Operator::kInitial});
  }
  return archive;
}

}  // namespace gridpolicy::bench
