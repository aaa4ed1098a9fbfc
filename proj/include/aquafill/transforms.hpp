#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "aquafill/policies.hpp"
#include "aquafill/sequence.hpp"
#include "aquafill/waterfill.hpp"

namespace aquafill {

// Everything nestify did, for auditing. sigma maps original arrival times
// to their position in the reordered sequence; sigma_inverse lists, per new
// position, the original time that landed there.
struct NestifyAudit {
  RequestSequence pruned;                  // unused edges removed
  std::vector<std::vector<int>> inactive;  // pruned nodes per original arrival
  std::vector<int> sigma;
  std::vector<int> sigma_inverse;
  RequestSequence permuted;
  std::vector<int> mu;                     // per node, last arrival in permuted
  RequestSequence nested;
};

struct NestifyResult {
  RequestSequence sequence;
  NestifyAudit audit;
};

// Rewrites any sequence into a nested one in three majorization-safe moves:
// drop the edges water-filling left unused, replay arrivals in order of
// their water level (ties replayed in reverse original order), and close
// the result under the induced nested extension. Water-filling on the
// output is never better off than on the input, while the hindsight
// optimum is never worse off.
NestifyResult nestify(const RequestSequence& sequence);

nlohmann::ordered_json nestify_audit_to_json(const NestifyAudit& audit);

struct DeviationAudit {
  std::vector<int> phi;                          // removals scheduled per round
  std::vector<std::vector<int>> removed;         // nodes removed after each round
  std::vector<int> removed_upfront;              // nodes never offered at all
};

// Relabels a nested sequence against the given policy: at each round the
// arrival offers every surviving node, and the nodes the policy loaded the
// least (in expectation) are retired according to the input's shape. The
// output is nested with the same dimensions and quantities; against the
// chosen policy it is at least as hard as the input is for water-filling.
// Nodes the input never offers are retired before the first round, keeping
// the output a relabeling of the input. Expected loads come from the given
// mode; ties retire the largest node id first.
RequestSequence policy_deviation(const RequestSequence& nested_sequence, Policy& policy,
                                 const ExpectationMode& mode,
                                 DeviationAudit* audit = nullptr);

// Replaces a nested sequence with its worst case for water-filling at equal
// hindsight optimum: arrival t offers the suffix {t, ..., n} and carries
// the t-th smallest entry of the input's hindsight optimum. Zero entries
// (nodes the input never offers) produce no arrival.
RequestSequence worstcase_upper_triangular(const RequestSequence& nested_sequence);

struct GameTranscript {
  RequestSequence realized;
  std::vector<RVec> allocations;
  RVec final_loads;
  RVec realized_opt;
};

// Adaptive variant of policy_deviation: the adversary watches the realized
// allocations instead of expectations, retiring the least-loaded nodes
// after each observed step. For a deterministic policy the transcript
// reproduces policy_deviation exactly. Deterministic in the seed.
GameTranscript adaptive_game(Policy& policy, const RequestSequence& seed_sequence,
                             std::uint64_t seed);

nlohmann::ordered_json transcript_to_json(const GameTranscript& transcript);

}  // namespace aquafill
