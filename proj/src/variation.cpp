#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gridpolicy/moea.hpp"

namespace gridpolicy::moea {

namespace {

using Vec = std::vector<double>;

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
double normal(Rng& rng, double sd) { return sd * std::normal_distribution<double>(0.0, 1.0)(rng); }

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }
double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

void axpy(double s, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

Vec centroid(std::span<const Vec> parents) {
  Vec g(parents.front().size(), 0.0);
  for (const Vec& p : parents) axpy(1.0, p, g);
  for (double& v : g) v /= static_cast<double>(parents.size());
  return g;
}

// Removes from v its components along the orthonormal vectors in basis.
void project_out(Vec& v, const std::vector<Vec>& basis) {
  for (const Vec& e : basis) axpy(-dot(v, e), e, v);
}

// Gram-Schmidt step: appends the normalized remainder of v unless it vanishes.
bool extend_basis(Vec v, std::vector<Vec>& basis) {
  project_out(v, basis);
  const double n = norm(v);
  if (n < 1e-12) return false;
  for (double& x : v) x /= n;
  basis.push_back(std::move(v));
  return true;
}

double effective_rate(double rate, std::size_t n) { return rate < 0.0 ? 1.0 / static_cast<double>(n) : rate; }

Vec sbx(const Vec& p1, const Vec& p2, const VariationParams& params, double lo, double hi, Rng& rng) {
  Vec child = p1;
  if (uniform(rng) > params.sbx_rate) return child;
  const double eta = params.sbx_index;
  for (std::size_t i = 0; i < child.size(); ++i) {
    if (uniform(rng) > 0.5) continue;
    const double y1 = std::min(p1[i], p2[i]);
    const double y2 = std::max(p1[i], p2[i]);
    if (y2 - y1 < 1e-14) continue;

    const double u = uniform(rng);
    auto spread = [&](double beta) {
      const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
      if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
      return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    };
    const double beta_lo = 1.0 + 2.0 * (y1 - lo) / (y2 - y1);
    const double beta_hi = 1.0 + 2.0 * (hi - y2) / (y2 - y1);
    const double c1 = 0.5 * ((y1 + y2) - spread(beta_lo) * (y2 - y1));
    const double c2 = 0.5 * ((y1 + y2) + spread(beta_hi) * (y2 - y1));
    child[i] = uniform(rng) < 0.5 ? c1 : c2;
  }
  return child;
}

void polynomial_mutation(Vec& x, const VariationParams& params, double lo, double hi, Rng& rng) {
  const double rate = effective_rate(params.pm_rate, x.size());
  const double eta = params.pm_index;
  const double range = hi - lo;
  for (double& v : x) {
    if (uniform(rng) >= rate) continue;
    const double d1 = (v - lo) / range;
    const double d2 = (hi - v) / range;
    const double u = uniform(rng);
    const double power = 1.0 / (eta + 1.0);
    double dq;
    if (u < 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
      dq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
      dq = 1.0 - std::pow(val, power);
    }
    v += dq * range;
  }
}

Vec differential(std::span<const Vec> parents, const VariationParams& params, Rng& rng) {
  const Vec& target = parents[0];
  const Vec& base = parents[1];
  const Vec& a = parents[2];
  const Vec& b = parents[3];
  Vec child = target;
  const std::size_t forced = std::uniform_int_distribution<std::size_t>(0, child.size() - 1)(rng);
  for (std::size_t i = 0; i < child.size(); ++i) {
    if (i == forced || uniform(rng) < params.de_crossover) child[i] = base[i] + params.de_step * (a[i] - b[i]);
  }
  return child;
}

Vec pcx(std::span<const Vec> parents, const VariationParams& params, Rng& rng) {
  const std::size_t n = parents.front().size();
  const Vec g = centroid(parents);
  const Vec& index_parent = parents.back();
  const Vec d = sub(index_parent, g);

  std::vector<Vec> basis;
  const bool has_direction = extend_basis(d, basis);
  double mean_distance = 0.0;
  for (std::size_t i = 0; i + 1 < parents.size(); ++i) {
    Vec r = sub(parents[i], g);
    project_out(r, basis);
    mean_distance += norm(r);
  }
  mean_distance /= static_cast<double>(parents.size() - 1);

  Vec child = index_parent;
  if (has_direction) axpy(normal(rng, params.pcx_zeta), d, child);
  Vec noise(n);
  for (double& v : noise) v = normal(rng, params.pcx_eta * mean_distance);
  project_out(noise, basis);
  axpy(1.0, noise, child);
  return child;
}

Vec spx(std::span<const Vec> parents, const VariationParams& params, Rng& rng) {
  const std::size_t k = parents.size();
  const Vec g = centroid(parents);
  std::vector<Vec> y(k);
  for (std::size_t i = 0; i < k; ++i) {
    y[i] = g;
    axpy(params.spx_expansion, sub(parents[i], g), y[i]);
  }
  Vec c(g.size(), 0.0);
  for (std::size_t i = 1; i < k; ++i) {
    const double r = std::pow(uniform(rng), 1.0 / static_cast<double>(i));
    Vec next = sub(y[i - 1], y[i]);
    axpy(1.0, c, next);
    for (double& v : next) v *= r;
    c = std::move(next);
  }
  Vec child = y[k - 1];
  axpy(1.0, c, child);
  return child;
}

Vec undx(std::span<const Vec> parents, const VariationParams& params, Rng& rng) {
  const std::size_t n = parents.front().size();
  const std::size_t k = parents.size();
  const Vec g = centroid(parents.first(k - 1));

  std::vector<Vec> basis;
  std::vector<double> magnitude;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    Vec d = sub(parents[i], g);
    const double m = norm(d);
    if (extend_basis(std::move(d), basis)) magnitude.push_back(m);
  }
  Vec far = sub(parents.back(), g);
  project_out(far, basis);
  const double distance = norm(far);

  Vec child = g;
  for (std::size_t i = 0; i < basis.size(); ++i) axpy(normal(rng, params.undx_zeta) * magnitude[i], basis[i], child);
  if (basis.size() < n) {
    const double sd = params.undx_eta * distance / std::sqrt(static_cast<double>(n - basis.size()));
    Vec noise(n);
    for (double& v : noise) v = normal(rng, sd);
    project_out(noise, basis);
    axpy(1.0, noise, child);
  }
  return child;
}

Vec uniform_mutation(const Vec& parent, const VariationParams& params, double lo, double hi, Rng& rng) {
  Vec child = parent;
  const double rate = effective_rate(params.um_rate, child.size());
  for (double& v : child) {
    if (uniform(rng) < rate) v = lo + uniform(rng) * (hi - lo);
  }
  return child;
}

}  // namespace

std::size_t arity(Operator op, const VariationParams& params) {
  switch (op) {
    case Operator::kSbx: return 2;
    case Operator::kDe: return 4;
    case Operator::kPcx:
    case Operator::kSpx:
    case Operator::kUndx: return params.multiparent_arity;
    case Operator::kUm: return 1;
    case Operator::kInitial:
    case Operator::kRestart: break;
  }
  throw std::domain_error("arity: '" + to_string(op) + "' is not a variation operator");
}

std::vector<double> vary(std::span<const std::vector<double>> parents, Operator op, const VariationParams& params,
                         double lower, double upper, Rng& rng) {
  const std::size_t k = arity(op, params);
  if (parents.size() != k) {
    throw std::domain_error("vary: " + to_string(op) + " needs " + std::to_string(k) + " parents, got " +
                            std::to_string(parents.size()));
  }
  if (k < 2 && op != Operator::kUm) throw std::domain_error("vary: multi-parent operators need at least 2 parents");
  const std::size_t n = parents.front().size();
  if (n == 0) throw std::domain_error("vary: empty genome");
  for (const Vec& p : parents) {
    if (p.size() != n) throw std::domain_error("vary: parents have different lengths");
  }

  Vec child;
  switch (op) {
    case Operator::kSbx: child = sbx(parents[0], parents[1], params, lower, upper, rng); break;
    case Operator::kDe: child = differential(parents, params, rng); break;
    case Operator::kPcx: child = pcx(parents, params, rng); break;
    case Operator::kSpx: child = spx(parents, params, rng); break;
    case Operator::kUndx: child = undx(parents, params, rng); break;
    case Operator::kUm: child = uniform_mutation(parents[0], params, lower, upper, rng); break;
    default: break;
  }
  for (double& v : child) v = std::clamp(v, lower, upper);
  if (op != Operator::kUm && params.mutate_after_recombination) {
    polynomial_mutation(child, params, lower, upper, rng);
    for (double& v : child) v = std::clamp(v, lower, upper);
  }
  return child;
}

}  // namespace gridpolicy::moea
