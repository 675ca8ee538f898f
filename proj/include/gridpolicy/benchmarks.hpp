#pragma once

// Analytic test problems for checking the optimizer in isolation.

#include <cstdint>
#include <span>
#include <vector>

#include "gridpolicy/moea.hpp"

namespace gridpolicy::bench {

/// DTLZ2 with `objectives` objectives on x in [0,1]^n. The Pareto front is
/// the positive part of the unit sphere.
std::vector<double> dtlz2(std::span<const double> x, std::size_t objectives);

/// Evaluator wrapping dtlz2; no constraints.
moea::Evaluator dtlz2_evaluator(std::size_t objectives);

/// sqrt(sum d_i^2) / n where d_i = | ||f_i|| - 1 | is the distance of each
/// member to the unit sphere front.
double generational_distance_sphere(const moea::Archive& archive);

/// Archive of `nfe` uniform samples in [lower, upper]^n.
moea::Archive random_search(const moea::Evaluator& evaluator, std::size_t num_variables, double lower, double upper,
                            std::vector<double> epsilons, std::size_t nfe, std::uint64_t seed);

}  // namespace gridpolicy::bench
