#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "aquafill/rng.hpp"
#include "aquafill/sequence.hpp"
#include "aquafill/vectors.hpp"
#include "aquafill/waterfill.hpp"

namespace aquafill {

// Randomness a policy is allowed to consume. Each call picks uniformly
// from {0, ..., arity-1}. Seeded sources sample; forced sources replay a
// recorded branch so exact expectations can enumerate every outcome.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;
  virtual int choose(int arity) = 0;
};

class SeededChoiceSource final : public ChoiceSource {
 public:
  explicit SeededChoiceSource(std::uint64_t seed) : rng_(seed) {}
  int choose(int arity) override;

 private:
  Rng rng_;
};

// Depth-first enumeration of a finite branch tree. Run the policy once per
// branch: choose() replays the recorded prefix and extends it with outcome
// 0 when the policy asks for a fresh draw; advance() steps to the next
// branch in odometer order and reports false once the tree is exhausted.
class ForcedChoiceSource final : public ChoiceSource {
 public:
  int choose(int arity) override;

  void rewind() { cursor_ = 0; }
  bool advance();

  // Product of 1/arity along the current branch; branch weights over the
  // full tree sum to exactly 1.
  Rat branch_probability() const;

 private:
  std::vector<int> path_;
  std::vector<int> arities_;
  size_t cursor_ = 0;
};

// What a policy sees before answering the current arrival: everything that
// already happened, including its own past allocations.
struct PolicyContext {
  int n = 0;
  const std::vector<Arrival>& past_arrivals;
  const std::vector<RVec>& past_allocations;
  const RVec& loads;
};

class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string_view name() const = 0;
  virtual bool deterministic() const = 0;
  // True when every run consumes finitely many uniform choices, so exact
  // expectations can enumerate the branch tree.
  virtual bool finite_support() const = 0;

  // Called once per run before the first arrival; resets per-run state and
  // may reject the dimension.
  virtual void begin_run(int n);

  // Allocation over all n nodes for the current arrival. Must be a point
  // of the arrival's simplex; run_policy rejects anything else.
  virtual RVec step(const PolicyContext& context, const Arrival& current,
                    ChoiceSource& choices) = 0;
};

// Runs one step and rejects any response that is not a point of the
// arrival's simplex (wrong length, negative mass, mass outside the
// neighborhood, or wrong total).
RVec checked_policy_step(Policy& policy, const PolicyContext& context,
                         const Arrival& current, ChoiceSource& choices);

// wf | proportional | greedy-lowest | threshold-guard
std::unique_ptr<Policy> make_policy(std::string_view name);
std::vector<std::string_view> policy_names();

// Plays the policy over the whole sequence, validating each step. The
// trace's height of an arrival is the largest post-step load among the
// nodes it actually used, which coincides with the water level when the
// policy is water-filling. Deterministic in the seed.
AllocationTrace run_policy(const RequestSequence& sequence, Policy& policy,
                           std::uint64_t seed);

struct ExpectationMode {
  enum class Kind { Exact, MonteCarlo };
  Kind kind = Kind::Exact;
  int samples = 10000;       // Monte Carlo only
  std::uint64_t seed = 0;    // Monte Carlo only

  static ExpectationMode exact() { return {}; }
  static ExpectationMode monte_carlo(int samples, std::uint64_t seed) {
    return {Kind::MonteCarlo, samples, seed};
  }
};

// One fully resolved run of a finite-support policy.
struct Branch {
  Rat probability;
  std::vector<RVec> allocations;
  std::vector<RVec> loads;  // cumulative, one entry per arrival
};

// Every branch of the policy's tree on this sequence. Throws
// ExactUnavailable for infinite-support policies and BranchLimitExceeded
// past max_branches.
std::vector<Branch> enumerate_branches(const RequestSequence& sequence, Policy& policy,
                                       int max_branches = 4096);

struct ExpectedLoads {
  // Expected cumulative loads after each arrival. Exact expectations are
  // branch-weighted rational averages; Monte Carlo reports the empirical
  // mean over the drawn runs, which is still an exact rational.
  std::vector<RVec> per_step;
  int resolution = 1;  // branches enumerated, or samples drawn
  ExpectationMode::Kind kind = ExpectationMode::Kind::Exact;

  const RVec& final_loads() const { return per_step.back(); }
};

ExpectedLoads expected_loads(const RequestSequence& sequence, Policy& policy,
                             const ExpectationMode& mode);

}  // namespace aquafill
