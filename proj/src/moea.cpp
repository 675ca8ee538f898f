#include "gridpolicy/moea.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace gridpolicy::moea {

std::string to_string(Operator op) {
  switch (op) {
    case Operator::kSbx: return "sbx";
    case Operator::kDe: return "de";
    case Operator::kPcx: return "pcx";
    case Operator::kSpx: return "spx";
    case Operator::kUndx: return "undx";
    case Operator::kUm: return "um";
    case Operator::kInitial: return "init";
    case Operator::kRestart: return "restart";
  }
  return "unknown";
}

Operator operator_from_string(const std::string& name) {
  for (Operator op : {Operator::kSbx, Operator::kDe, Operator::kPcx, Operator::kSpx, Operator::kUndx, Operator::kUm,
                      Operator::kInitial, Operator::kRestart}) {
    if (to_string(op) == name) return op;
  }
  throw std::invalid_argument("unknown operator tag '" + name + "'");
}

Dominance eps_dominates(const Solution& a, const Solution& b, std::span<const double> eps) {
  if (a.objectives.size() != eps.size() || b.objectives.size() != eps.size()) {
    throw std::domain_error("eps_dominates: objective count does not match epsilon vector");
  }
  const bool fa = a.feasible();
  const bool fb = b.feasible();
  if (fa && !fb) return Dominance::kADominates;
  if (!fa && fb) return Dominance::kBDominates;
  if (!fa && !fb && a.violation != b.violation) {
    return a.violation < b.violation ? Dominance::kADominates : Dominance::kBDominates;
  }

  bool a_better = false;
  bool b_better = false;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double box_a = std::floor(a.objectives[i] / eps[i]);
    const double box_b = std::floor(b.objectives[i] / eps[i]);
    if (box_a < box_b) a_better = true;
    else if (box_b < box_a) b_better = true;
    if (a_better && b_better) return Dominance::kNeither;
  }
  if (a_better) return Dominance::kADominates;
  if (b_better) return Dominance::kBDominates;
  return Dominance::kSameBox;
}

double box_corner_distance_sq(const Solution& s, std::span<const double> eps) {
  double d = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double scaled = s.objectives[i] / eps[i];
    const double offset = scaled - std::floor(scaled);
    d += offset * offset;
  }
  return d;
}

bool nearer_box_corner(const Solution& challenger, const Solution& incumbent, std::span<const double> eps) {
  return box_corner_distance_sq(challenger, eps) < box_corner_distance_sq(incumbent, eps);
}

Archive::Archive(std::vector<double> epsilons) : eps_(std::move(epsilons)) {
  if (eps_.empty()) throw std::domain_error("archive: epsilon vector is empty");
  for (double e : eps_) {
    if (!(e > 0.0) || !std::isfinite(e)) throw std::domain_error("archive: epsilons must be finite and positive");
  }
}

InsertResult Archive::insert(const Solution& candidate) {
  if (candidate.objectives.size() != eps_.size()) {
    throw std::domain_error("archive insert: candidate has " + std::to_string(candidate.objectives.size()) +
                            " objectives, archive expects " + std::to_string(eps_.size()));
  }
  std::vector<std::size_t> evicted;
  bool same_box_replacement = false;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    switch (eps_dominates(candidate, members_[i], eps_)) {
      case Dominance::kBDominates:
        return {};
      case Dominance::kSameBox:
        if (!nearer_box_corner(candidate, members_[i], eps_)) return {};
        same_box_replacement = true;
        evicted.push_back(i);
        break;
      case Dominance::kADominates:
        evicted.push_back(i);
        break;
      case Dominance::kNeither:
        break;
    }
  }
  for (auto it = evicted.rbegin(); it != evicted.rend(); ++it) {
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(*it));
  }
  members_.push_back(candidate);
  return {true, !same_box_replacement};
}

std::array<std::size_t, kOperatorCount> Archive::operator_counts() const {
  std::array<std::size_t, kOperatorCount> counts{};
  for (const Solution& s : members_) {
    const auto idx = static_cast<std::size_t>(s.origin);
    if (idx < kOperatorCount) ++counts[idx];
  }
  return counts;
}

Archive merge_archives(std::span<const Archive> archives) {
  if (archives.empty()) throw std::domain_error("merge_archives: nothing to merge");
  Archive merged(archives.front().epsilons());
  for (const Archive& a : archives) {
    if (a.epsilons() != merged.epsilons()) throw std::domain_error("merge_archives: epsilon vectors differ");
    for (const Solution& s : a.members()) merged.insert(s);
  }
  return merged;
}

std::array<double, kOperatorCount> operator_probabilities(const std::array<std::size_t, kOperatorCount>& counts) {
  std::array<double, kOperatorCount> p{};
  double total = 0.0;
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    p[i] = static_cast<double>(counts[i]) + 1.0;
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

Operator select_operator(const std::array<std::size_t, kOperatorCount>& counts, Rng& rng) {
  const auto p = operator_probabilities(counts);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = unit(rng);
  double cumulative = 0.0;
  for (std::size_t i = 0; i < kOperatorCount; ++i) {
    cumulative += p[i];
    if (r < cumulative) return kSearchOperators[i];
  }
  return kSearchOperators.back();
}

Operator select_operator(const Archive& archive, Rng& rng) { return select_operator(archive.operator_counts(), rng); }

void MoeaConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("moea config: " + what); };
  if (num_variables == 0) fail("num_variables must be positive");
  if (!(lower_bound < upper_bound)) fail("lower_bound must be below upper_bound");
  if (epsilons.empty()) fail("epsilons must not be empty");
  for (double e : epsilons) {
    if (!(e > 0.0)) fail("epsilons must be positive");
  }
  if (population_size < 2) fail("population_size must be at least 2");
  if (max_nfe < population_size) fail("max_nfe must be at least population_size");
  if (tournament_size < 1) fail("tournament_size must be positive");
  if (!(injection_ratio > 0.0 && injection_ratio <= 1.0)) fail("injection_ratio must lie in (0, 1]");
  if (min_population_size > max_population_size) fail("min_population_size exceeds max_population_size");
  if (batch_size < 1 || workers < 1) fail("batch_size and workers must be positive");
}

namespace {

class Optimizer {
 public:
  Optimizer(const MoeaConfig& config, const Evaluator& evaluator, std::uint64_t seed)
      : config_(config), evaluator_(evaluator), rng_(seed), archive_(config.epsilons) {}

  RunResult run() {
    initialize();
    const std::size_t window = config_.restart_window == 0 ? config_.population_size : config_.restart_window;
    while (stats_.nfe < config_.max_nfe) {
      if (stats_.nfe - last_progress_nfe_ >= window && !archive_.empty()) {
        restart();
        continue;
      }
      step();
    }
    return {std::move(archive_), stats_};
  }

 private:
  std::vector<double> random_genome() {
    std::uniform_real_distribution<double> dist(config_.lower_bound, config_.upper_bound);
    std::vector<double> g(config_.num_variables);
    for (double& x : g) x = dist(rng_);
    return g;
  }

  std::size_t uniform_index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::vector<Solution> evaluate(std::vector<std::vector<double>> genomes, const std::vector<Operator>& origins) {
    std::vector<Solution> out(genomes.size());
    auto work = [&](std::size_t i) {
      Evaluation e = evaluator_(genomes[i]);
      if (e.objectives.size() != config_.epsilons.size()) {
        throw std::runtime_error("evaluator returned " + std::to_string(e.objectives.size()) + " objectives, expected " +
                                 std::to_string(config_.epsilons.size()));
      }
      for (double v : e.objectives) {
        if (!std::isfinite(v)) throw std::runtime_error("evaluator returned a non-finite objective");
      }
      if (!(e.violation >= 0.0)) throw std::runtime_error("evaluator returned a negative or NaN violation");
      out[i] = Solution{std::move(genomes[i]), std::move(e.objectives), e.violation, origins[i]};
    };

    const std::size_t n = out.size();
    const std::size_t threads = std::min(config_.workers, n);
    if (threads <= 1) {
      for (std::size_t i = 0; i < n; ++i) work(i);
    } else {
      std::vector<std::exception_ptr> errors(threads);
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t i = t; i < n; i += threads) work(i);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      pool.clear();
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    stats_.nfe += n;
    return out;
  }

  void archive_insert(const Solution& s) {
    if (archive_.insert(s).eps_progress) last_progress_nfe_ = stats_.nfe;
  }

  void initialize() {
    const std::size_t n = std::min(config_.population_size, config_.max_nfe);
    std::vector<std::vector<double>> genomes;
    for (std::size_t i = 0; i < n; ++i) genomes.push_back(random_genome());
    population_ = evaluate(std::move(genomes), std::vector<Operator>(n, Operator::kInitial));
    for (const Solution& s : population_) archive_insert(s);
    last_progress_nfe_ = stats_.nfe;
  }

  // Binary (or larger) tournament under the archive's comparison rules.
  const Solution& tournament() {
    const Solution* winner = &population_[uniform_index(population_.size())];
    for (std::size_t i = 1; i < config_.tournament_size; ++i) {
      const Solution& challenger = population_[uniform_index(population_.size())];
      switch (eps_dominates(challenger, *winner, config_.epsilons)) {
        case Dominance::kADominates:
          winner = &challenger;
          break;
        case Dominance::kSameBox:
          if (nearer_box_corner(challenger, *winner, config_.epsilons)) winner = &challenger;
          break;
        case Dominance::kNeither:
          if (std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < 0.5) winner = &challenger;
          break;
        case Dominance::kBDominates:
          break;
      }
    }
    return *winner;
  }

  void step() {
    const std::size_t batch = std::min(config_.batch_size, config_.max_nfe - stats_.nfe);
    std::vector<std::vector<double>> children;
    std::vector<Operator> origins;
    for (std::size_t b = 0; b < batch; ++b) {
      const Operator op = select_operator(archive_, rng_);
      const std::size_t k = arity(op, config_.variation);
      std::vector<std::vector<double>> parents;
      parents.reserve(k);
      // One parent from the archive, the rest by tournament.
      parents.push_back(archive_.members()[uniform_index(archive_.size())].genome);
      while (parents.size() < k) parents.push_back(tournament().genome);
      std::shuffle(parents.begin(), parents.end(), rng_);
      children.push_back(vary(parents, op, config_.variation, config_.lower_bound, config_.upper_bound, rng_));
      origins.push_back(op);
      ++stats_.operator_uses[static_cast<std::size_t>(op)];
    }
    for (Solution& child : evaluate(std::move(children), origins)) {
      archive_insert(child);
      population_insert(std::move(child));
    }
  }

  void population_insert(Solution child) {
    std::vector<std::size_t> dominated;
    bool child_dominated = false;
    for (std::size_t i = 0; i < population_.size(); ++i) {
      const Dominance d = eps_dominates(child, population_[i], config_.epsilons);
      if (d == Dominance::kADominates) dominated.push_back(i);
      else if (d == Dominance::kBDominates) child_dominated = true;
    }
    if (!dominated.empty()) {
      population_[dominated[uniform_index(dominated.size())]] = std::move(child);
    } else if (!child_dominated) {
      population_[uniform_index(population_.size())] = std::move(child);
    }
  }

  void restart() {
    ++stats_.restarts;
    const auto& members = archive_.members();
    const double wanted = std::ceil(static_cast<double>(members.size()) / config_.injection_ratio);
    const std::size_t size = std::clamp(static_cast<std::size_t>(wanted), config_.min_population_size,
                                        config_.max_population_size);
    population_.assign(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(std::min(size, members.size())));

    const std::size_t fill = std::min(size - population_.size(), config_.max_nfe - stats_.nfe);
    std::vector<std::vector<double>> mutants;
    for (std::size_t i = 0; i < fill; ++i) {
      const std::vector<double>& source = members[uniform_index(members.size())].genome;
      mutants.push_back(vary(std::span(&source, 1), Operator::kUm, config_.variation, config_.lower_bound,
                             config_.upper_bound, rng_));
    }
    for (Solution& s : evaluate(std::move(mutants), std::vector<Operator>(fill, Operator::kRestart))) {
      archive_insert(s);
      population_.push_back(std::move(s));
    }
    last_progress_nfe_ = stats_.nfe;
  }

  const MoeaConfig& config_;
  const Evaluator& evaluator_;
  Rng rng_;
  Archive archive_;
  std::vector<Solution> population_;
  RunStats stats_;
  std::size_t last_progress_nfe_ = 0;
};

}  // namespace

RunResult run(const MoeaConfig& config, const Evaluator& evaluator, std::uint64_t seed) {
  config.validate();
  Optimizer optimizer(config, evaluator, seed);
  return optimizer.run();
}

}  // namespace gridpolicy::moea
