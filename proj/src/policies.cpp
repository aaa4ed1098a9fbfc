#include "aquafill/policies.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "aquafill/errors.hpp"

namespace aquafill {

int SeededChoiceSource::choose(int arity) {
  if (arity < 1) throw InvalidParameter("choice arity must be positive");
  return arity == 1 ? 0 : rng_.below(arity);
}

int ForcedChoiceSource::choose(int arity) {
  if (arity < 1) throw InvalidParameter("choice arity must be positive");
  if (cursor_ < path_.size()) {
    if (arities_[cursor_] != arity) {
      throw std::logic_error("policy branch tree changed arity between replays");
    }
    return path_[cursor_++];
  }
  path_.push_back(0);
  arities_.push_back(arity);
  ++cursor_;
  return 0;
}

bool ForcedChoiceSource::advance() {
  while (!path_.empty()) {
    if (path_.back() + 1 < arities_.back()) {
      ++path_.back();
      cursor_ = 0;
      return true;
    }
    path_.pop_back();
    arities_.pop_back();
  }
  cursor_ = 0;
  return false;
}

Rat ForcedChoiceSource::branch_probability() const {
  Rat p(1);
  for (int arity : arities_) p /= arity;
  return p;
}

void Policy::begin_run(int n) {
  if (n < 1) throw InvalidParameter("policy run needs n >= 1");
}

RVec checked_policy_step(Policy& policy, const PolicyContext& context,
                         const Arrival& current, ChoiceSource& choices) {
  RVec x = policy.step(context, current, choices);
  if (x.size() != context.n) {
    throw PolicyInfeasibleOutput(std::string(policy.name()) +
                                 " returned an allocation of the wrong length");
  }
  Rat total(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < 0) {
      throw PolicyInfeasibleOutput(std::string(policy.name()) +
                                   " returned a negative allocation entry");
    }
    if (x(i) > 0 && !std::binary_search(current.neighbors.begin(), current.neighbors.end(),
                                        static_cast<int>(i) + 1)) {
      throw PolicyInfeasibleOutput(std::string(policy.name()) +
                                   " allocated outside the neighborhood");
    }
    total += x(i);
  }
  if (total != current.quantity) {
    throw PolicyInfeasibleOutput(std::string(policy.name()) +
                                 " did not allocate the exact quantity");
  }
  return x;
}

namespace {

struct RunOutput {
  std::vector<RVec> allocations;
  std::vector<RVec> loads;
};

RunOutput run_once(const RequestSequence& sequence, Policy& policy, ChoiceSource& choices) {
  policy.begin_run(sequence.n);
  RunOutput out;
  std::vector<Arrival> seen;
  RVec loads = RVec::Zero(sequence.n);
  for (const Arrival& a : sequence.arrivals) {
    PolicyContext context{sequence.n, seen, out.allocations, loads};
    RVec x = checked_policy_step(policy, context, a, choices);
    loads += x;
    out.allocations.push_back(std::move(x));
    out.loads.push_back(loads);
    seen.push_back(a);
  }
  return out;
}

class WaterFillingPolicy final : public Policy {
 public:
  std::string_view name() const override { return "wf"; }
  bool deterministic() const override { return true; }
  bool finite_support() const override { return true; }

  RVec step(const PolicyContext& context, const Arrival& current, ChoiceSource&) override {
    return water_fill_step(current.neighbors, current.quantity, context.loads).allocation;
  }
};

class ProportionalPolicy final : public Policy {
 public:
  std::string_view name() const override { return "proportional"; }
  bool deterministic() const override { return true; }
  bool finite_support() const override { return true; }

  RVec step(const PolicyContext& context, const Arrival& current, ChoiceSource&) override {
    RVec x = RVec::Zero(context.n);
    Rat share = current.quantity / static_cast<int>(current.neighbors.size());
    for (int i : current.neighbors) x(i - 1) = share;
    return x;
  }
};

class GreedyLowestIndexPolicy final : public Policy {
 public:
  std::string_view name() const override { return "greedy-lowest"; }
  bool deterministic() const override { return true; }
  bool finite_support() const override { return true; }

  RVec step(const PolicyContext& context, const Arrival& current, ChoiceSource&) override {
    RVec x = RVec::Zero(context.n);
    x(current.neighbors.front() - 1) = current.quantity;
    return x;
  }
};

// Two-node policy that picks a uniformly random primary node up front,
// fills it to the 3/4 threshold on arrivals eligible for both nodes, and
// routes the overflow to the other node. Singleton arrivals are forced.
class ThresholdGuardPolicy final : public Policy {
 public:
  std::string_view name() const override { return "threshold-guard"; }
  bool deterministic() const override { return false; }
  bool finite_support() const override { return true; }

  void begin_run(int n) override {
    if (n != 2) {
      throw UnsupportedDimension("threshold-guard is defined for exactly 2 nodes");
    }
    primary_ = 0;
  }

  RVec step(const PolicyContext& context, const Arrival& current,
            ChoiceSource& choices) override {
    if (primary_ == 0) primary_ = 1 + choices.choose(2);
    RVec x = RVec::Zero(context.n);
    if (current.neighbors.size() == 1) {
      x(current.neighbors.front() - 1) = current.quantity;
      return x;
    }
    const int primary = primary_;
    const int secondary = 3 - primary;
    Rat headroom = rat(3, 4) - context.loads(primary - 1);
    if (headroom < 0) headroom = 0;
    Rat to_primary = std::min(current.quantity, headroom);
    x(primary - 1) = to_primary;
    x(secondary - 1) = current.quantity - to_primary;
    return x;
  }

 private:
  int primary_ = 0;
};

}  // namespace

std::unique_ptr<Policy> make_policy(std::string_view name) {
  if (name == "wf") return std::make_unique<WaterFillingPolicy>();
  if (name == "proportional") return std::make_unique<ProportionalPolicy>();
  if (name == "greedy-lowest") return std::make_unique<GreedyLowestIndexPolicy>();
  if (name == "threshold-guard") return std::make_unique<ThresholdGuardPolicy>();
  throw InvalidParameter("unknown policy: " + std::string(name));
}

std::vector<std::string_view> policy_names() {
  return {"wf", "proportional", "greedy-lowest", "threshold-guard"};
}

AllocationTrace run_policy(const RequestSequence& sequence, Policy& policy,
                           std::uint64_t seed) {
  validate(sequence);
  SeededChoiceSource choices(seed);
  RunOutput run = run_once(sequence, policy, choices);

  AllocationTrace trace;
  trace.n = sequence.n;
  trace.allocations = std::move(run.allocations);
  trace.loads = std::move(run.loads);
  for (int t = 1; t <= sequence.m(); ++t) {
    const Arrival& a = sequence.arrivals[static_cast<size_t>(t - 1)];
    const RVec& x = trace.allocations[static_cast<size_t>(t - 1)];
    const RVec& loads = trace.loads[static_cast<size_t>(t - 1)];
    Rat height(0);
    bool first = true;
    std::vector<int> passed_over;
    for (int i : a.neighbors) {
      if (x(i - 1) > 0) {
        if (first || loads(i - 1) > height) height = loads(i - 1);
        first = false;
      } else {
        passed_over.push_back(i);
      }
    }
    trace.heights.push_back(height);
    trace.inactive.push_back(std::move(passed_over));
  }
  trace.final_loads = trace.loads.back();
  return trace;
}

std::vector<Branch> enumerate_branches(const RequestSequence& sequence, Policy& policy,
                                       int max_branches) {
  validate(sequence);
  if (!policy.finite_support()) {
    throw ExactUnavailable(std::string(policy.name()) +
                           " has no finite branch tree; use Monte Carlo");
  }
  std::vector<Branch> branches;
  ForcedChoiceSource choices;
  while (true) {
    choices.rewind();
    RunOutput run = run_once(sequence, policy, choices);
    branches.push_back({choices.branch_probability(), std::move(run.allocations),
                        std::move(run.loads)});
    if (static_cast<int>(branches.size()) > max_branches) {
      throw BranchLimitExceeded("policy branch tree exceeds " +
                                std::to_string(max_branches) + " branches");
    }
    if (!choices.advance()) break;
  }
  return branches;
}

ExpectedLoads expected_loads(const RequestSequence& sequence, Policy& policy,
                             const ExpectationMode& mode) {
  validate(sequence);
  ExpectedLoads out;
  out.kind = mode.kind;
  out.per_step.assign(static_cast<size_t>(sequence.m()), RVec::Zero(sequence.n));

  if (mode.kind == ExpectationMode::Kind::Exact) {
    std::vector<Branch> branches = enumerate_branches(sequence, policy);
    for (const Branch& branch : branches) {
      for (size_t t = 0; t < branch.loads.size(); ++t) {
        out.per_step[t] += branch.probability * branch.loads[t];
      }
    }
    out.resolution = static_cast<int>(branches.size());
    return out;
  }

  if (mode.samples < 1) throw InvalidParameter("Monte Carlo needs at least one sample");
  for (int s = 0; s < mode.samples; ++s) {
    SeededChoiceSource choices(mode.seed + static_cast<std::uint64_t>(s));
    RunOutput run = run_once(sequence, policy, choices);
    for (size_t t = 0; t < run.loads.size(); ++t) out.per_step[t] += run.loads[t];
  }
  Rat inverse = rat(1, mode.samples);
  for (RVec& v : out.per_step) v *= inverse;
  out.resolution = mode.samples;
  return out;
}

}  // namespace aquafill
