#pragma once

#include <vector>

#include "json.hpp"

#include "aquafill/sequence.hpp"
#include "aquafill/vectors.hpp"

namespace aquafill {

// One water-filling step. The allocation tops up the least-loaded eligible
// nodes until they meet at a common water level:
//   x(i) = max(level - loads(i), 0) for eligible i, and 0 elsewhere,
// with the level chosen so the allocation spends exactly the arrival's
// quantity. Among all feasible responses to the arrival it is the unique
// one whose resulting load vector is minimal in the majorization preorder.
struct StepResult {
  RVec allocation;
  Rat level;
  std::vector<int> support;  // nodes receiving positive mass, ascending
};

// Exact level search: scan the breakpoints given by the sorted neighbor
// loads instead of bisecting. Throws on empty neighborhoods, nonpositive
// quantities, and out-of-range node ids.
StepResult water_fill_step(const std::vector<int>& neighbors, const Rat& quantity,
                           const RVec& loads);

// An edge is the pair (node, arrival). Arrival t's edge to node i is active
// when the allocator put positive mass on it.
struct Edge {
  int node = 0;
  int arrival = 0;

  bool operator==(const Edge& other) const = default;
};

struct AllocationTrace {
  int n = 0;
  std::vector<RVec> allocations;          // x_t
  std::vector<RVec> loads;                // cumulative loads after arrival t
  std::vector<Rat> heights;               // water level of arrival t
  std::vector<std::vector<int>> inactive; // eligible nodes passed over at t
  RVec final_loads;

  std::vector<Edge> active_edges() const;
  std::vector<Edge> inactive_edges() const;
};

AllocationTrace run_waterfill(const RequestSequence& sequence);

nlohmann::ordered_json trace_to_json(const AllocationTrace& trace);

}  // namespace aquafill
