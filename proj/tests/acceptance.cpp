// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL]
// line with its running time; the process exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "aquafill/errors.hpp"
#include "aquafill/harmonic.hpp"
#include "aquafill/hindsight.hpp"
#include "aquafill/majorization.hpp"
#include "aquafill/objectives.hpp"
#include "aquafill/policies.hpp"
#include "aquafill/regret.hpp"
#include "aquafill/transforms.hpp"
#include "aquafill/waterfill.hpp"
#include "support.hpp"

using namespace aquafill;
using namespace aquafill::testing;

namespace {

struct Checker {
  bool good = true;
  std::string detail;

  void need(bool condition, const std::string& message) {
    if (!condition && good) {
      good = false;
      detail = message;
    }
  }
};

bool no_more_balanced(const RVec& left, const RVec& right) {
  MajorizationRelation rel = compare_majorization(left, right);
  return rel == MajorizationRelation::RightMajorizesLeft ||
         rel == MajorizationRelation::Equivalent;
}

// Rename nodes so the last-eligible times come out nondecreasing, keeping
// the arrival order; renaming never changes nestedness or load multisets.
RequestSequence relabel_by_departure(const RequestSequence& e) {
  std::vector<int> order(static_cast<size_t>(e.n));
  std::iota(order.begin(), order.end(), 1);
  std::vector<int> mu = e.mu_all();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return mu[static_cast<size_t>(a - 1)] < mu[static_cast<size_t>(b - 1)];
  });
  std::vector<int> new_id(static_cast<size_t>(e.n) + 1, 0);
  for (int position = 1; position <= e.n; ++position) {
    new_id[static_cast<size_t>(order[static_cast<size_t>(position - 1)])] = position;
  }
  RequestSequence out;
  out.n = e.n;
  for (const Arrival& arrival : e.arrivals) {
    Arrival renamed;
    renamed.quantity = arrival.quantity;
    for (int i : arrival.neighbors) renamed.neighbors.push_back(new_id[static_cast<size_t>(i)]);
    std::sort(renamed.neighbors.begin(), renamed.neighbors.end());
    out.arrivals.push_back(std::move(renamed));
  }
  return out;
}

int criteria_failed = 0;

void criterion(int id, const std::string& name, double budget_seconds,
               const std::function<void(Checker&)>& body) {
  auto start = std::chrono::steady_clock::now();
  Checker check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.good = false;
    check.detail = std::string("exception: ") + e.what();
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_seconds > 0 && seconds > budget_seconds) {
    check.good = false;
    if (check.detail.empty()) {
      check.detail = "exceeded the " + std::to_string(budget_seconds) + "s budget";
    }
  }
  std::printf("[%s] %d. %s (%.2fs)%s%s\n", check.good ? "PASS" : "FAIL", id, name.c_str(),
              seconds, check.detail.empty() ? "" : ": ", check.detail.c_str());
  std::fflush(stdout);
  if (!check.good) ++criteria_failed;
}

}  // namespace

int main() {
  criterion(1, "running example solved exactly", 1.0, [](Checker& check) {
    RequestSequence e = example_instance();
    AllocationTrace trace = run_waterfill(e);
    check.need(exactly_equal(trace.final_loads, rvec({2, 2, 4, 4})), "filling loads");
    HindsightResult hindsight = opt_hindsight_with_witness(e);
    check.need(exactly_equal(hindsight.loads, rvec({3, 3, 3, 3})), "hindsight loads");
    check.need(check_feasible(e, hindsight.witness), "hindsight witness feasibility");
  });

  criterion(2, "nested rewrite of the example, step by step", 0, [](Checker& check) {
    NestifyResult result = nestify(example_instance());
    check.need(result.audit.sigma_inverse == std::vector<int>{1, 4, 2, 5, 3},
               "replay order");
    std::vector<Edge> dropped = run_waterfill(example_instance()).inactive_edges();
    check.need(dropped == std::vector<Edge>{{2, 4}, {3, 5}}, "pruned edges");

    RequestSequence expected;
    expected.n = 4;
    expected.arrivals = {
        {{1, 2, 3, 4}, Rat(2)}, {{1, 2, 3, 4}, Rat(1)}, {{1, 2, 3, 4}, Rat(5)},
        {{3, 4}, Rat(2)},       {{3}, Rat(2)},
    };
    check.need(result.sequence == expected, "rewritten sequence");
    check.need(exactly_equal(run_waterfill(result.sequence).final_loads,
                             rvec({2, 2, 5, 3})),
               "rewritten filling loads");
    check.need(compare_majorization(rvec({2, 2, 4, 4}), rvec({2, 2, 5, 3})) ==
                   MajorizationRelation::RightMajorizesLeft,
               "filling strictly worse on the rewrite");
    check.need(exactly_equal(opt_hindsight(result.sequence), rvec({3, 3, 3, 3})),
               "hindsight unchanged");
  });

  criterion(3, "nested rewrite and policy relabeling guarantees, 500 random instances",
            60.0, [](Checker& check) {
    Rng rng(2024);
    auto proportional = make_policy("proportional");
    auto greedy = make_policy("greedy-lowest");
    for (int k = 0; k < 500 && check.good; ++k) {
      RequestSequence e = random_general_instance(rng);
      NestifyResult nested = nestify(e);
      RVec wf_original = run_waterfill(e).final_loads;
      RVec wf_nested = run_waterfill(nested.sequence).final_loads;
      check.need(is_nested(nested.sequence), "rewrite is nested");
      check.need(no_more_balanced(wf_original, wf_nested),
                 "filling must not improve under the rewrite");
      check.need(no_more_balanced(opt_hindsight(nested.sequence), opt_hindsight(e)),
                 "hindsight must not degrade under the rewrite");

      for (Policy* policy : {proportional.get(), greedy.get()}) {
        RequestSequence relabeled =
            policy_deviation(nested.sequence, *policy, ExpectationMode::exact());
        RVec policy_loads = run_policy(relabeled, *policy, 0).final_loads;
        check.need(no_more_balanced(wf_nested, policy_loads),
                   std::string(policy->name()) + " must end at least as unbalanced");
        check.need(exactly_equal(sorted_ascending(opt_hindsight(relabeled)),
                                 sorted_ascending(opt_hindsight(nested.sequence))),
                   "hindsight multiset preserved by relabeling");
        check.need(no_more_balanced(wf_original, policy_loads),
                   "end-to-end chain must not help the policy");
      }
    }
  });

  criterion(4, "worst-case rewrite guarantees, 500 random nested instances", 0,
            [](Checker& check) {
    Rng rng(2025);
    for (int k = 0; k < 500 && check.good; ++k) {
      RequestSequence e = random_nested_instance(rng);
      RequestSequence out = worstcase_upper_triangular(e);
      check.need(is_nested(out), "rewrite is nested");
      check.need(out.total_quantity() == e.total_quantity(), "total preserved");

      int skipped = out.n - out.m();
      for (int t = 1; t <= out.m(); ++t) {
        const Arrival& a = out.arrivals[static_cast<size_t>(t - 1)];
        check.need(static_cast<int>(a.neighbors.size()) == out.n - skipped - t + 1 &&
                       a.neighbors.front() == skipped + t,
                   "suffix neighborhoods");
        if (t > 1) {
          check.need(a.quantity >= out.arrivals[static_cast<size_t>(t - 2)].quantity,
                     "quantities nondecreasing");
        }
      }

      RVec q = sorted_ascending(opt_hindsight(e));
      check.need(exactly_equal(sorted_ascending(opt_hindsight(out)), q),
                 "hindsight multiset preserved");
      RVec filled = run_waterfill(out).final_loads;
      check.need(exactly_equal(filled, apply_harmonic(harmonic_matrix(e.n), q)),
                 "filling equals the harmonic image");
      check.need(no_more_balanced(run_waterfill(e).final_loads, filled),
                 "rewrite is at least as bad for filling");
    }
  });

  criterion(5, "harmonic identities, 1000 nested cases and 1000 ordered pairs", 0,
            [](Checker& check) {
    Rng rng(2026);
    for (int k = 0; k < 1000 && check.good; ++k) {
      RequestSequence e = relabel_by_departure(random_nested_instance(rng));
      std::vector<int> mu = e.mu_all();
      RVec z = RVec::Zero(e.n);
      int previous = 0;
      for (int i = 1; i <= e.n; ++i) {
        for (int t = previous + 1; t <= mu[static_cast<size_t>(i - 1)]; ++t) {
          z(i - 1) += e.arrivals[static_cast<size_t>(t - 1)].quantity;
        }
        previous = mu[static_cast<size_t>(i - 1)];
      }
      check.need(exactly_equal(run_waterfill(e).final_loads,
                               apply_harmonic(harmonic_matrix(e.n), z)),
                 "filling equals the harmonic image of departure masses");
    }
    for (int k = 0; k < 1000 && check.good; ++k) {
      int n = rng.between(2, 7);
      auto [x, y] = prefix_dominated_pair(rng, n);
      RMat h = harmonic_matrix(n);
      MajorizationRelation rel =
          compare_majorization(apply_harmonic(h, x), apply_harmonic(h, y));
      check.need(rel == MajorizationRelation::LeftMajorizesRight ||
                     rel == MajorizationRelation::Equivalent,
                 "prefix-dominated input must map to the more unbalanced image");
    }
  });

  criterion(6, "hindsight optimum is majorized by every feasible outcome, 200x50", 0,
            [](Checker& check) {
    Rng rng(2027);
    for (int k = 0; k < 200 && check.good; ++k) {
      RequestSequence e = random_general_instance(rng);
      RVec opt = opt_hindsight(e);
      for (int s = 0; s < 50 && check.good; ++s) {
        std::vector<RVec> allocation = sample_feasible(e, rng.next());
        RVec loads = RVec::Zero(e.n);
        for (const RVec& x : allocation) loads += x;
        check.need(no_more_balanced(opt, loads), "optimum must be the most balanced");
      }
    }
  });

  criterion(7, "guarantee table, closed form vs numeric search, n = 2..6", 120.0,
            [](Checker& check) {
    struct Row {
      const char* label;
      CrObjective closed;
      const char* objective;
    };
    const std::vector<Row> rows = {
        {"nsw", CrObjective::Nsw, "nsw"},
        {"maximin", CrObjective::Maximin, "egalitarian"},
        {"makespan-min", CrObjective::MakespanMin, "makespan"},
        {"matching", CrObjective::Matching, "matching:1"},
    };
    std::printf("    %-14s %-3s %-22s %-12s\n", "objective", "n", "closed", "numeric");
    for (const Row& row : rows) {
      for (int n = 2; n <= 6; ++n) {
        ClosedFormCr closed = closed_form_cr(row.closed, n);
        RegretReport numeric = numeric_competitive_ratio(n, make_objective(row.objective));
        std::string closed_text = closed.exact
                                      ? format_rational(*closed.exact) + " = " +
                                            std::to_string(closed.value).substr(0, 8)
                                      : std::to_string(closed.value).substr(0, 8);
        std::printf("    %-14s %-3d %-22s %-12.8f\n", row.label, n, closed_text.c_str(),
                    numeric.alpha);
        check.need(std::abs(numeric.alpha - closed.value) < 1e-3,
                   std::string(row.label) + " at n=" + std::to_string(n) +
                       " off by more than 1e-3");
      }
    }
    check.need(*closed_form_cr(CrObjective::Matching, 2).exact == rat(3, 4),
               "matching guarantee at n=2");
    check.need(*closed_form_cr(CrObjective::Matching, 3).exact == rat(13, 18),
               "matching guarantee at n=3");
    check.need(*closed_form_cr(CrObjective::MakespanMin, 6).exact == rat(49, 20),
               "makespan guarantee at n=6");
  });

  criterion(8, "cautious play beats filling on the two-node indicator", 0,
            [](Checker& check) {
    RequestSequence display = two_node_instance();
    ObjectiveSpec indicator = make_objective("indicator-half");
    auto wf = make_policy("wf");
    auto guard = make_policy("threshold-guard");

    for (double alpha : {0.6, 1.0}) {
      RegretReport filling =
          alpha_regret(display, *wf, indicator, alpha, ExpectationMode::exact());
      check.need(filling.regret == alpha,
                 "filling regret must be exactly the discount");
      RegretReport guarded =
          alpha_regret(display, *guard, indicator, alpha, ExpectationMode::exact());
      check.need(guarded.regret == alpha - 0.5,
                 "guarded regret must be exactly discount minus one half");

      // The guarantee holds across the shapes a two-node sequence can take:
      // forced singletons, one lump, and everything in between.
      std::vector<RequestSequence> shapes;
      RequestSequence crammed;
      crammed.n = 2;
      crammed.arrivals = {{{1}, Rat(1)}, {{1}, Rat(1)}};
      shapes.push_back(crammed);
      RequestSequence split;
      split.n = 2;
      split.arrivals = {{{1}, Rat(1)}, {{2}, Rat(1)}};
      shapes.push_back(split);
      shapes.push_back(display);
      RequestSequence lump;
      lump.n = 2;
      lump.arrivals = {{{1, 2}, Rat(2)}};
      shapes.push_back(lump);
      RequestSequence trickle;
      trickle.n = 2;
      trickle.arrivals = {{{1, 2}, Rat(1)}, {{2}, rat(1, 2)}, {{2}, rat(1, 2)}};
      shapes.push_back(trickle);

      Rng rng(2028);
      for (int k = 0; k < 100; ++k) {
        RequestSequence random_shape;
        random_shape.n = 2;
        int m = rng.between(1, 4);
        std::vector<long> weights(static_cast<size_t>(m));
        long total = 0;
        for (long& w : weights) {
          w = rng.between(1, 6);
          total += w;
        }
        for (int t = 0; t < m; ++t) {
          Arrival arrival;
          int shape = rng.between(0, 2);
          if (shape == 0) arrival.neighbors = {1};
          if (shape == 1) arrival.neighbors = {2};
          if (shape == 2) arrival.neighbors = {1, 2};
          arrival.quantity = Rat(2) * rat(weights[static_cast<size_t>(t)], total);
          random_shape.arrivals.push_back(std::move(arrival));
        }
        shapes.push_back(std::move(random_shape));
      }

      double bound = std::max(0.0, alpha - 0.5);
      for (const RequestSequence& shape : shapes) {
        RegretReport report =
            alpha_regret(shape, *guard, indicator, alpha, ExpectationMode::exact());
        check.need(report.regret <= bound + 1e-12,
                   "guarded regret exceeded its guarantee on a unit-total-2 shape");
      }
    }
  });

  criterion(9, "adaptive play equals the precomputed relabeling, 200 seeds", 0,
            [](Checker& check) {
    Rng rng(2029);
    for (int k = 0; k < 200 && check.good; ++k) {
      RequestSequence e = random_nested_instance(rng);
      for (std::string_view name : {"wf", "proportional", "greedy-lowest"}) {
        auto policy = make_policy(name);
        RequestSequence rewritten =
            policy_deviation(e, *policy, ExpectationMode::exact());
        GameTranscript transcript = adaptive_game(*policy, e, rng.next());
        check.need(transcript.realized == rewritten,
                   "transcript sequence must match the precomputed rewrite");
        AllocationTrace replay = run_policy(rewritten, *policy, 0);
        bool allocations_equal =
            transcript.allocations.size() == replay.allocations.size();
        for (size_t t = 0; allocations_equal && t < replay.allocations.size(); ++t) {
          allocations_equal = exactly_equal(transcript.allocations[t],
                                            replay.allocations[t]);
        }
        check.need(allocations_equal && exactly_equal(transcript.final_loads,
                                                      replay.final_loads),
                   "transcript allocations must match a replay");
      }
    }
  });

  if (criteria_failed == 0) {
    std::printf("all 9 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", criteria_failed);
  return 1;
}
