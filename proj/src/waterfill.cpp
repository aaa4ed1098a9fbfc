#include "aquafill/waterfill.hpp"

#include <algorithm>
#include <string>

#include "aquafill/errors.hpp"

namespace aquafill {

StepResult water_fill_step(const std::vector<int>& neighbors, const Rat& quantity,
                           const RVec& loads) {
  if (neighbors.empty()) throw EmptyNeighborhood("water-filling step with no neighbors");
  if (quantity <= 0) throw NonpositiveQuantity("water-filling step with nonpositive quantity");
  for (int i : neighbors) {
    if (i < 1 || i > loads.size()) {
      throw IndexOutOfRange("neighbor " + std::to_string(i) + " outside the load vector");
    }
  }

  std::vector<Rat> values;
  values.reserve(neighbors.size());
  for (int i : neighbors) values.push_back(loads(i - 1));
  std::sort(values.begin(), values.end());

  // The level sits in the segment where raising the j lowest nodes to a
  // common value spends the quantity exactly. Filling cost is piecewise
  // linear and strictly increasing in the level, so exactly one segment
  // matches (boundary ties give the same level either way).
  const int k = static_cast<int>(values.size());
  Rat level;
  Rat prefix(0);
  for (int j = 1; j <= k; ++j) {
    prefix += values[static_cast<size_t>(j - 1)];
    Rat candidate = (quantity + prefix) / j;
    if (candidate >= values[static_cast<size_t>(j - 1)] &&
        (j == k || candidate <= values[static_cast<size_t>(j)])) {
      level = candidate;
      break;
    }
  }

  StepResult result;
  result.level = level;
  result.allocation = RVec::Zero(loads.size());
  for (int i : neighbors) {
    if (loads(i - 1) < level) {
      result.allocation(i - 1) = level - loads(i - 1);
      result.support.push_back(i);
    }
  }
  return result;
}

AllocationTrace run_waterfill(const RequestSequence& sequence) {
  validate(sequence);
  AllocationTrace trace;
  trace.n = sequence.n;
  RVec loads = RVec::Zero(sequence.n);
  for (int t = 1; t <= sequence.m(); ++t) {
    const Arrival& a = sequence.arrivals[static_cast<size_t>(t - 1)];
    StepResult step = water_fill_step(a.neighbors, a.quantity, loads);
    loads += step.allocation;

    std::vector<int> passed_over;
    for (int i : a.neighbors) {
      if (step.allocation(i - 1) == 0) passed_over.push_back(i);
    }

    trace.allocations.push_back(std::move(step.allocation));
    trace.loads.push_back(loads);
    trace.heights.push_back(step.level);
    trace.inactive.push_back(std::move(passed_over));
  }
  trace.final_loads = loads;
  return trace;
}

std::vector<Edge> AllocationTrace::active_edges() const {
  std::vector<Edge> edges;
  for (int t = 1; t <= static_cast<int>(allocations.size()); ++t) {
    const RVec& x = allocations[static_cast<size_t>(t - 1)];
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) > 0) edges.push_back({static_cast<int>(i) + 1, t});
    }
  }
  return edges;
}

std::vector<Edge> AllocationTrace::inactive_edges() const {
  std::vector<Edge> edges;
  for (int t = 1; t <= static_cast<int>(inactive.size()); ++t) {
    for (int i : inactive[static_cast<size_t>(t - 1)]) edges.push_back({i, t});
  }
  return edges;
}

nlohmann::ordered_json trace_to_json(const AllocationTrace& trace) {
  nlohmann::ordered_json j;
  j["n"] = trace.n;
  j["m"] = trace.allocations.size();
  j["allocations"] = nlohmann::ordered_json::array();
  for (const RVec& x : trace.allocations) j["allocations"].push_back(format_vector(x));
  j["loads"] = nlohmann::ordered_json::array();
  for (const RVec& l : trace.loads) j["loads"].push_back(format_vector(l));
  j["heights"] = nlohmann::ordered_json::array();
  for (const Rat& h : trace.heights) j["heights"].push_back(format_rational(h));
  j["active_edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : trace.active_edges()) j["active_edges"].push_back({e.node, e.arrival});
  j["inactive_edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : trace.inactive_edges()) j["inactive_edges"].push_back({e.node, e.arrival});
  j["final_loads"] = format_vector(trace.final_loads);
  return j;
}

}  // namespace aquafill
