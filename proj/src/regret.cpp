#include "aquafill/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "aquafill/errors.hpp"
#include "aquafill/harmonic.hpp"
#include "aquafill/hindsight.hpp"
#include "aquafill/rng.hpp"

namespace aquafill {

nlohmann::ordered_json RegretReport::to_json() const {
  nlohmann::ordered_json j;
  j["objective"] = objective;
  j["domain"] = domain;
  j["alpha"] = alpha;
  j["policy_value"] = policy_value;
  j["hindsight_value"] = hindsight_value;
  j["regret"] = regret;
  if (witness_loads) {
    j["witness_loads"] = std::vector<double>(witness_loads->begin(), witness_loads->end());
  }
  j["evaluations"] = evaluations;
  j["tolerance"] = tolerance;
  return j;
}

RegretReport alpha_regret(const RequestSequence& sequence, Policy& policy,
                          const ObjectiveSpec& objective, double alpha,
                          const ExpectationMode& mode) {
  validate(sequence);

  double policy_value = 0;
  if (mode.kind == ExpectationMode::Kind::Exact) {
    for (const Branch& branch : enumerate_branches(sequence, policy)) {
      policy_value += to_double(branch.probability) * objective.evaluate(branch.loads.back());
    }
  } else {
    if (mode.samples < 1) throw InvalidParameter("Monte Carlo needs at least one sample");
    for (int s = 0; s < mode.samples; ++s) {
      AllocationTrace trace =
          run_policy(sequence, policy, mode.seed + static_cast<std::uint64_t>(s));
      policy_value += objective.evaluate(trace.final_loads);
    }
    policy_value /= mode.samples;
  }

  double hindsight_value = objective.evaluate(opt_hindsight(sequence));

  RegretReport report;
  report.objective = objective.name;
  report.domain = "instance n=" + std::to_string(sequence.n) +
                  " m=" + std::to_string(sequence.m());
  report.alpha = alpha;
  report.policy_value = policy_value;
  report.hindsight_value = hindsight_value;
  report.regret = objective.direction == Direction::Maximize
                      ? alpha * hindsight_value - policy_value
                      : policy_value - alpha * hindsight_value;
  return report;
}

namespace {

DMat harmonic_matrix_d(int n) {
  RMat exact = harmonic_matrix(n);
  DMat h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = to_double(exact(i, j));
  }
  return h;
}

enum class DomainKind { SimplexTotal, UnitMaxBox };

struct SearchDomain {
  DomainKind kind;
  int n;
  double total;  // SimplexTotal only
};

// Parameters are free nonnegative reals; the domain map sorts and
// normalizes, so every parameter vector is a feasible point and coordinate
// moves never leave the domain.
DVec domain_point(const SearchDomain& domain, DVec theta) {
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = std::max(theta(i), 0.0);
  std::sort(theta.begin(), theta.end());
  if (domain.kind == DomainKind::SimplexTotal) {
    double sum = theta.sum();
    if (sum <= 0) {
      theta.setConstant(domain.total / static_cast<double>(domain.n));
    } else {
      theta *= domain.total / sum;
    }
  } else {
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = std::min(theta(i), 1.0);
    theta(theta.size() - 1) = 1.0;
  }
  return theta;
}

constexpr double kRejected = -std::numeric_limits<double>::infinity();

struct SearchOutcome {
  double value = kRejected;
  DVec point;      // in-domain loads, not raw parameters
  long evaluations = 0;
};

// Coordinate refinement: sweep coordinates, trying additive and
// multiplicative nudges of the current step size, shrinking the step when a
// full sweep fails to improve. The score callback returns kRejected for
// points outside its implicit domain (e.g. zero denominators).
template <typename Score>
void refine(const Score& score, const SearchDomain& domain, DVec theta,
            const SearchConfig& config, SearchOutcome& best) {
  DVec point = domain_point(domain, theta);
  double current = score(point);
  ++best.evaluations;
  if (current > best.value) {
    best.value = current;
    best.point = point;
  }

  double step = 0.25;
  for (int sweep = 0; sweep < config.max_sweeps && step >= config.tolerance; ++sweep) {
    bool improved = false;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      const double original = theta(i);
      const double candidates[4] = {original + step, std::max(original - step, 0.0),
                                    original * (1.0 + step),
                                    original / (1.0 + step)};
      for (double candidate : candidates) {
        if (candidate == original) continue;
        theta(i) = candidate;
        DVec mapped = domain_point(domain, theta);
        double value = score(mapped);
        ++best.evaluations;
        if (value > current) {
          current = value;
          improved = true;
          if (value > best.value) {
            best.value = value;
            best.point = mapped;
          }
          break;
        }
        theta(i) = original;
      }
    }
    if (!improved) step *= config.shrink;
  }
}

std::vector<DVec> structured_seeds(const SearchDomain& domain) {
  const int n = domain.n;
  std::vector<DVec> seeds;
  seeds.push_back(DVec::Ones(n));

  // Step profiles (0, ..., 0, beta, 1, ..., 1): the extremal family for the
  // capped objectives, and useful corners everywhere else.
  const double betas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int ones = 0; ones < n; ++ones) {
    for (double beta : betas) {
      DVec v = DVec::Zero(n);
      for (int i = 0; i < ones; ++i) v(n - 1 - i) = 1.0;
      v(n - 1 - ones) = beta;
      seeds.push_back(std::move(v));
    }
  }

  // Geometric decay approaches the boundary where product-style objectives
  // attain their infimum only in the limit.
  for (double epsilon : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    DVec v(n);
    double value = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      v(i) = value;
      value *= epsilon;
    }
    seeds.push_back(std::move(v));
  }
  return seeds;
}

template <typename Score>
SearchOutcome multistart_search(const Score& score, const SearchDomain& domain,
                                const SearchConfig& config) {
  SearchOutcome best;
  for (const DVec& seed : structured_seeds(domain)) {
    refine(score, domain, seed, config, best);
  }
  Rng rng(config.seed);
  for (int start = 0; start < config.multistarts; ++start) {
    DVec theta(domain.n);
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = rng.unit();
    refine(score, domain, theta, config, best);
  }
  return best;
}

}  // namespace

RegretReport numeric_minimax_regret(int n, const ObjectiveSpec& objective, double alpha,
                                    const Rat& total_quantity, const SearchConfig& config) {
  if (n < 1) throw InvalidParameter("regret search needs n >= 1");
  if (total_quantity <= 0) throw NonpositiveQuantity("regret search needs a positive total");

  const DMat h = harmonic_matrix_d(n);
  const SearchDomain domain{DomainKind::SimplexTotal, n, to_double(total_quantity)};

  auto score = [&](const DVec& loads) {
    DVec online = h * loads;
    double opt_value = objective.evaluate(loads);
    double online_value = objective.evaluate(online);
    return objective.direction == Direction::Maximize ? alpha * opt_value - online_value
                                                      : online_value - alpha * opt_value;
  };

  SearchOutcome outcome = multistart_search(score, domain, config);

  RegretReport report;
  report.objective = objective.name;
  report.domain = "sorted nonnegative vectors, n=" + std::to_string(n) +
                  ", total=" + format_rational(total_quantity);
  report.alpha = alpha;
  report.witness_loads = outcome.point;
  report.hindsight_value = objective.evaluate(outcome.point);
  report.policy_value = objective.evaluate(DVec(h * outcome.point));
  report.regret = outcome.value;
  report.evaluations = outcome.evaluations;
  report.tolerance = config.tolerance;
  return report;
}

RegretReport numeric_competitive_ratio(int n, const ObjectiveSpec& objective,
                                       const SearchConfig& config) {
  if (n < 1) throw InvalidParameter("competitive-ratio search needs n >= 1");
  if (objective.cr_domain == CrDomain::Unsupported) {
    throw NotHomogeneous(objective.name +
                         " has no scale normalization; no competitive ratio search");
  }

  const DMat h = harmonic_matrix_d(n);
  const SearchDomain domain{objective.cr_domain == CrDomain::UnitMaxBox
                                ? DomainKind::UnitMaxBox
                                : DomainKind::SimplexTotal,
                            n, 1.0};

  // Worst ratio: minimize f(online)/f(opt) for maximization objectives,
  // maximize it for minimization ones. The refinement always maximizes, so
  // flip the sign for the former and flip it back when reporting.
  const bool maximizing = objective.direction == Direction::Maximize;
  auto score = [&](const DVec& loads) {
    double opt_value = objective.evaluate(loads);
    if (!(opt_value > 1e-12)) return kRejected;
    double ratio = objective.evaluate(DVec(h * loads)) / opt_value;
    return maximizing ? -ratio : ratio;
  };

  SearchOutcome outcome = multistart_search(score, domain, config);
  if (outcome.value == kRejected) {
    throw Error("competitive-ratio search found no admissible point");
  }

  RegretReport report;
  report.objective = objective.name;
  report.domain = std::string("normalized sorted vectors, n=") + std::to_string(n);
  report.alpha = maximizing ? -outcome.value : outcome.value;
  report.witness_loads = outcome.point;
  report.hindsight_value = objective.evaluate(outcome.point);
  report.policy_value = objective.evaluate(DVec(h * outcome.point));
  report.regret = 0;
  report.evaluations = outcome.evaluations;
  report.tolerance = config.tolerance;
  return report;
}

Rat fm_sequence(int k) {
  if (k < 1) throw InvalidParameter("fm_sequence needs k >= 1");
  Rat h_k = harmonic_number(k);
  Rat sum(0);
  for (int i = 0; i <= k; ++i) {
    Rat term = h_k - harmonic_number(i);
    if (term > 1) term = 1;
    if (term > 0) sum += term;
  }
  return sum / k;
}

CrObjective cr_objective_from_name(std::string_view name) {
  if (name == "nsw") return CrObjective::Nsw;
  if (name == "maximin" || name == "egalitarian") return CrObjective::Maximin;
  if (name == "makespan" || name == "makespan-min") return CrObjective::MakespanMin;
  if (name == "matching") return CrObjective::Matching;
  if (name == "separable-concave") return CrObjective::SeparableConcave;
  throw UnknownObjective("no closed-form competitive ratio for: " + std::string(name));
}

std::string_view to_string(CrObjective objective) {
  switch (objective) {
    case CrObjective::Nsw: return "nsw";
    case CrObjective::Maximin: return "maximin";
    case CrObjective::MakespanMin: return "makespan-min";
    case CrObjective::Matching: return "matching";
    case CrObjective::SeparableConcave: return "separable-concave";
  }
  return "nsw";
}

ClosedFormCr closed_form_cr(CrObjective objective, int n) {
  if (n < 1) throw InvalidParameter("closed-form competitive ratio needs n >= 1");
  ClosedFormCr result;
  switch (objective) {
    case CrObjective::Nsw: {
      double log_factorial = 0;
      for (int i = 2; i <= n; ++i) log_factorial += std::log(static_cast<double>(i));
      result.value = std::exp(-log_factorial / static_cast<double>(n));
      return result;
    }
    case CrObjective::Maximin: {
      result.exact = rat(1, n);
      result.value = to_double(*result.exact);
      return result;
    }
    case CrObjective::MakespanMin: {
      result.exact = harmonic_number(n);
      result.value = to_double(*result.exact);
      return result;
    }
    case CrObjective::Matching:
    case CrObjective::SeparableConcave: {
      Rat best = fm_sequence(1);
      for (int k = 2; k <= n; ++k) {
        Rat candidate = fm_sequence(k);
        if (candidate < best) best = candidate;
      }
      result.exact = best;
      result.value = to_double(best);
      result.lower_bound_only = (objective == CrObjective::SeparableConcave);
      return result;
    }
  }
  throw InvalidParameter("unhandled competitive-ratio objective");
}

}  // namespace aquafill
