#pragma once

#include <cstdint>
#include <vector>

#include "aquafill/rational.hpp"
#include "aquafill/vectors.hpp"

namespace aquafill {

// One online request: a set of eligible nodes and a divisible quantity.
// Neighbor ids are 1-indexed, kept sorted and unique.
struct Arrival {
  std::vector<int> neighbors;
  Rat quantity;

  bool operator==(const Arrival& other) const = default;
};

// An instance: n offline nodes and the arrivals in online order. Arrival
// times are 1-indexed everywhere, matching node ids and the file format.
struct RequestSequence {
  int n = 0;
  std::vector<Arrival> arrivals;

  int m() const { return static_cast<int>(arrivals.size()); }
  Rat total_quantity() const;

  // Arrival times whose neighborhood contains the node, ascending.
  std::vector<int> gamma(int node) const;

  // Last arrival time the node is eligible for, 0 if it never appears.
  int mu(int node) const;

  // mu for every node; entry i-1 belongs to node i.
  std::vector<int> mu_all() const;

  bool operator==(const RequestSequence& other) const = default;
};

// Checks n >= 1, m >= 1, every neighborhood nonempty with ids in [1, n],
// and every quantity strictly positive. Returns its argument on success so
// call sites can wrap constructors.
const RequestSequence& validate(const RequestSequence& sequence);

// Neighborhoods shrink over time: N_1 contains N_2 contains ... contains N_m.
bool is_nested(const RequestSequence& sequence);

// Smallest nested sequence extending this one: arrival t becomes eligible
// for every node whose last appearance is at time t or later. Only adds
// edges and is idempotent. Throws DegenerateOutput if some arrival would
// end up with no neighbors.
RequestSequence induced_nested(const RequestSequence& sequence);

// allocation[t-1] is arrival t's allocation over all n nodes. Checks
// nonnegativity, support inside the neighborhood, and exact totals.
bool check_feasible(const RequestSequence& sequence, const std::vector<RVec>& allocation);

struct InstanceParams {
  int n = 4;
  int m = 5;
  Rat total_quantity = Rat(12);
  double density = 0.5;          // independent edge probability
  int quantity_denominator = 12; // raw weights drawn as k/D before rescaling
  std::uint64_t seed = 0;
};

// Deterministic in params.seed. Every arrival gets at least one neighbor;
// quantities are positive rationals that sum to total_quantity exactly.
RequestSequence random_instance(const InstanceParams& params);

}  // namespace aquafill
