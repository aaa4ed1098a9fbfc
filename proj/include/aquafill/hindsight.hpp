#pragma once

#include <cstdint>
#include <vector>

#include "aquafill/sequence.hpp"
#include "aquafill/vectors.hpp"

namespace aquafill {

// Total quantity forced into the node subset: the sum of q_t over arrivals
// whose neighborhood meets the subset. This is the rank function of the
// polymatroid whose base polytope is exactly the set of achievable final
// load vectors. Subset ids are 1-indexed.
Rat rank(const RequestSequence& sequence, const std::vector<int>& subset);

// Node-subset enumeration width the exact solver will accept. Defaults to
// 20; the AQUAFILL_MAX_N environment variable overrides it.
int hindsight_max_n();

struct HindsightResult {
  RVec loads;
  // Per-arrival allocation realizing loads; passes check_feasible.
  std::vector<RVec> witness;
  // Successive fill levels found by the recursion, strictly increasing.
  std::vector<Rat> levels;
};

// The offline optimum: the unique load vector achievable with full
// knowledge of the sequence that is minimal in the majorization preorder
// among all achievable load vectors. Computed exactly by peeling tight
// subsets: find the smallest ratio rank(S)/|S| over nonempty subsets, fix
// every node of the union of minimizers at that level, contract the rank
// function, and repeat. Throws InstanceTooLarge past hindsight_max_n().
RVec opt_hindsight(const RequestSequence& sequence);
HindsightResult opt_hindsight_with_witness(const RequestSequence& sequence);

// Random feasible allocation: each arrival's quantity is split over its
// neighborhood at a random rational point of the simplex. Deterministic in
// the seed. Useful as a reference point: the offline optimum is majorized
// by the loads of every feasible allocation.
std::vector<RVec> sample_feasible(const RequestSequence& sequence, std::uint64_t seed);

}  // namespace aquafill
