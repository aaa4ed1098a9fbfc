#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "aquafill/objectives.hpp"
#include "aquafill/policies.hpp"
#include "aquafill/sequence.hpp"

namespace aquafill {

struct RegretReport {
  std::string objective;
  std::string domain;  // instance description or search-space description
  double alpha = 1;
  double policy_value = 0;     // expected objective of the online policy
  double hindsight_value = 0;  // objective of the offline optimum
  double regret = 0;
  std::optional<DVec> witness_loads;  // argmax of a numeric search
  long evaluations = 0;
  double tolerance = 0;

  nlohmann::ordered_json to_json() const;
};

// Regret of the policy on one instance at discount alpha:
//   maximize:  alpha * f(opt) - E[f(policy loads)]
//   minimize:  E[f(policy loads)] - alpha * f(opt)
// The expectation is ex post: the objective is evaluated per branch or per
// sample, then averaged.
RegretReport alpha_regret(const RequestSequence& sequence, Policy& policy,
                          const ObjectiveSpec& objective, double alpha,
                          const ExpectationMode& mode);

struct SearchConfig {
  int multistarts = 32;      // random starts, on top of the structured seeds
  int max_sweeps = 400;      // coordinate refinement sweeps per start
  double shrink = 0.5;
  double tolerance = 1e-10;  // stop once the step drops below this
  std::uint64_t seed = 0;
};

// Lower bound on the worst-case regret of water-filling at discount alpha
// over instances with n nodes and the given total quantity. Water-filling's
// worst final loads over all sequences with hindsight optimum l form the
// harmonic image of l, so the search maximizes the regret of that image
// over the sorted nonnegative vectors with the given total. Multi-start
// coordinate refinement; deterministic in config.seed; reported value is a
// certified-feasible point, not a certified supremum.
RegretReport numeric_minimax_regret(int n, const ObjectiveSpec& objective, double alpha,
                                    const Rat& total_quantity,
                                    const SearchConfig& config = {});

// Worst ratio between water-filling's value and the hindsight value over
// the objective's normalized domain (see CrDomain). Smaller is worse for
// maximization objectives; for minimization objectives the ratio is
// inverted, so larger is worse. Throws NotHomogeneous when the objective
// has no scale normalization.
RegretReport numeric_competitive_ratio(int n, const ObjectiveSpec& objective,
                                       const SearchConfig& config = {});

// M_k = (1/k) * sum_{i=0}^{k} min(1, H_k - H_i): the matching objective's
// value per node when one unit arrives for each of k nodes in a complete
// upper-triangular pattern. Exact.
Rat fm_sequence(int k);

enum class CrObjective { Nsw, Maximin, MakespanMin, Matching, SeparableConcave };

CrObjective cr_objective_from_name(std::string_view name);
std::string_view to_string(CrObjective objective);

struct ClosedFormCr {
  double value = 0;
  std::optional<Rat> exact;     // present when the closed form is rational
  bool lower_bound_only = false;
};

// Closed-form competitive ratios for water-filling with n nodes:
//   nsw        (n!)^(-1/n)
//   maximin    1/n
//   makespan   H_n (ratio of the minimization objective)
//   matching   min over k <= n of M_k
// For separable concave objectives min_k M_k is only a guarantee, not
// known tight, so the result is flagged lower_bound_only.
ClosedFormCr closed_form_cr(CrObjective objective, int n);

}  // namespace aquafill
