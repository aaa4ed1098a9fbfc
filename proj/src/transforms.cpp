#include "aquafill/transforms.hpp"

#include <algorithm>
#include <numeric>

#include "aquafill/errors.hpp"
#include "aquafill/hindsight.hpp"
#include "aquafill/instance_io.hpp"

namespace aquafill {

NestifyResult nestify(const RequestSequence& sequence) {
  validate(sequence);
  AllocationTrace trace = run_waterfill(sequence);
  const int m = sequence.m();

  NestifyAudit audit;
  audit.inactive = trace.inactive;

  audit.pruned.n = sequence.n;
  for (int t = 1; t <= m; ++t) {
    Arrival a;
    a.quantity = sequence.arrivals[static_cast<size_t>(t - 1)].quantity;
    const RVec& x = trace.allocations[static_cast<size_t>(t - 1)];
    for (int i : sequence.arrivals[static_cast<size_t>(t - 1)].neighbors) {
      if (x(i - 1) > 0) a.neighbors.push_back(i);
    }
    audit.pruned.arrivals.push_back(std::move(a));
  }

  // Replay order: water level ascending; equal levels replay the later
  // arrival first. After pruning, equal-level arrivals have disjoint
  // supports, and the reversal is what makes the reordering safe.
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Rat& ha = trace.heights[static_cast<size_t>(a - 1)];
    const Rat& hb = trace.heights[static_cast<size_t>(b - 1)];
    if (ha != hb) return ha < hb;
    return a > b;
  });

  audit.sigma.assign(static_cast<size_t>(m), 0);
  audit.sigma_inverse = order;
  audit.permuted.n = sequence.n;
  for (int pos = 1; pos <= m; ++pos) {
    int original = order[static_cast<size_t>(pos - 1)];
    audit.sigma[static_cast<size_t>(original - 1)] = pos;
    audit.permuted.arrivals.push_back(audit.pruned.arrivals[static_cast<size_t>(original - 1)]);
  }

  audit.mu = audit.permuted.mu_all();
  audit.nested = induced_nested(audit.permuted);

  NestifyResult result;
  result.sequence = audit.nested;
  result.audit = std::move(audit);
  return result;
}

nlohmann::ordered_json nestify_audit_to_json(const NestifyAudit& audit) {
  nlohmann::ordered_json j;
  j["pruned"] = instance_to_json(audit.pruned);
  j["inactive"] = audit.inactive;
  j["sigma"] = audit.sigma;
  j["sigma_inverse"] = audit.sigma_inverse;
  j["permuted"] = instance_to_json(audit.permuted);
  j["mu"] = audit.mu;
  j["nested"] = instance_to_json(audit.nested);
  return j;
}

namespace {

// Retire `count` nodes from the surviving set, smallest load first, ties
// broken toward the largest node id.
std::vector<int> retire_lowest(std::vector<char>& surviving, const RVec& loads, int count) {
  std::vector<int> candidates;
  for (int i = 1; i <= static_cast<int>(surviving.size()) - 1; ++i) {
    if (surviving[static_cast<size_t>(i)]) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (loads(a - 1) != loads(b - 1)) return loads(a - 1) < loads(b - 1);
    return a > b;
  });
  std::vector<int> removed(candidates.begin(),
                           candidates.begin() + std::min<size_t>(static_cast<size_t>(count),
                                                                 candidates.size()));
  for (int i : removed) surviving[static_cast<size_t>(i)] = 0;
  std::sort(removed.begin(), removed.end());
  return removed;
}

std::vector<int> removal_schedule(const RequestSequence& sequence) {
  std::vector<int> phi(static_cast<size_t>(sequence.m()) + 1, 0);
  for (int mu : sequence.mu_all()) ++phi[static_cast<size_t>(mu)];
  return phi;
}

Arrival surviving_arrival(const std::vector<char>& surviving, const Rat& quantity) {
  Arrival a;
  a.quantity = quantity;
  for (int i = 1; i <= static_cast<int>(surviving.size()) - 1; ++i) {
    if (surviving[static_cast<size_t>(i)]) a.neighbors.push_back(i);
  }
  return a;
}

}  // namespace

RequestSequence policy_deviation(const RequestSequence& nested_sequence, Policy& policy,
                                 const ExpectationMode& mode, DeviationAudit* audit) {
  validate(nested_sequence);
  if (!is_nested(nested_sequence)) {
    throw NotNested("policy_deviation needs a nested input sequence");
  }

  const int n = nested_sequence.n;
  const int m = nested_sequence.m();
  std::vector<int> phi = removal_schedule(nested_sequence);
  std::vector<char> surviving(static_cast<size_t>(n) + 1, 1);
  surviving[0] = 0;

  if (audit) {
    audit->phi.assign(phi.begin() + 1, phi.end());
    audit->removed.clear();
  }

  // Nodes the input never offers are retired before anything is allocated.
  std::vector<int> upfront = retire_lowest(surviving, RVec::Zero(n), phi[0]);
  if (audit) audit->removed_upfront = upfront;

  RequestSequence out;
  out.n = n;
  for (int t = 1; t <= m; ++t) {
    out.arrivals.push_back(surviving_arrival(
        surviving, nested_sequence.arrivals[static_cast<size_t>(t - 1)].quantity));
    ExpectedLoads expectation = expected_loads(out, policy, mode);
    std::vector<int> removed =
        retire_lowest(surviving, expectation.final_loads(), phi[static_cast<size_t>(t)]);
    if (audit) audit->removed.push_back(std::move(removed));
  }
  return out;
}

RequestSequence worstcase_upper_triangular(const RequestSequence& nested_sequence) {
  validate(nested_sequence);
  if (!is_nested(nested_sequence)) {
    throw NotNested("worstcase_upper_triangular needs a nested input sequence");
  }

  RVec quantities = sorted_ascending(opt_hindsight(nested_sequence));
  RequestSequence out;
  out.n = nested_sequence.n;
  for (int t = 1; t <= nested_sequence.n; ++t) {
    if (quantities(t - 1) == 0) continue;  // node the input never offered
    Arrival a;
    a.quantity = quantities(t - 1);
    for (int i = t; i <= nested_sequence.n; ++i) a.neighbors.push_back(i);
    out.arrivals.push_back(std::move(a));
  }
  if (out.arrivals.empty()) {
    throw DegenerateOutput("worst-case construction produced no arrivals");
  }
  return out;
}

GameTranscript adaptive_game(Policy& policy, const RequestSequence& seed_sequence,
                             std::uint64_t seed) {
  validate(seed_sequence);
  if (!is_nested(seed_sequence)) {
    throw NotNested("adaptive_game needs a nested seed sequence");
  }

  const int n = seed_sequence.n;
  const int m = seed_sequence.m();
  std::vector<int> phi = removal_schedule(seed_sequence);
  std::vector<char> surviving(static_cast<size_t>(n) + 1, 1);
  surviving[0] = 0;
  retire_lowest(surviving, RVec::Zero(n), phi[0]);

  GameTranscript transcript;
  transcript.realized.n = n;

  policy.begin_run(n);
  SeededChoiceSource choices(seed);
  std::vector<Arrival> seen;
  RVec loads = RVec::Zero(n);
  for (int t = 1; t <= m; ++t) {
    Arrival a = surviving_arrival(
        surviving, seed_sequence.arrivals[static_cast<size_t>(t - 1)].quantity);
    PolicyContext context{n, seen, transcript.allocations, loads};
    RVec x = checked_policy_step(policy, context, a, choices);
    loads += x;
    transcript.allocations.push_back(x);
    transcript.realized.arrivals.push_back(a);
    seen.push_back(std::move(a));
    retire_lowest(surviving, loads, phi[static_cast<size_t>(t)]);
  }
  transcript.final_loads = loads;

  // The realized sequence is a relabeling of the seed, so the guard that
  // bounds opt_hindsight applies identically to both.
  transcript.realized_opt = opt_hindsight(transcript.realized);
  return transcript;
}

nlohmann::ordered_json transcript_to_json(const GameTranscript& transcript) {
  nlohmann::ordered_json j;
  j["realized"] = instance_to_json(transcript.realized);
  j["allocations"] = nlohmann::ordered_json::array();
  for (const RVec& x : transcript.allocations) j["allocations"].push_back(format_vector(x));
  j["final_loads"] = format_vector(transcript.final_loads);
  j["realized_opt"] = format_vector(transcript.realized_opt);
  return j;
}

}  // namespace aquafill
