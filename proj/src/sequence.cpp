#include "aquafill/sequence.hpp"

#include <algorithm>
#include <string>

#include "aquafill/errors.hpp"
#include "aquafill/rng.hpp"

namespace aquafill {

Rat RequestSequence::total_quantity() const {
  Rat total(0);
  for (const Arrival& a : arrivals) total += a.quantity;
  return total;
}

std::vector<int> RequestSequence::gamma(int node) const {
  std::vector<int> times;
  for (int t = 1; t <= m(); ++t) {
    const auto& nb = arrivals[t - 1].neighbors;
    if (std::binary_search(nb.begin(), nb.end(), node)) times.push_back(t);
  }
  return times;
}

int RequestSequence::mu(int node) const {
  for (int t = m(); t >= 1; --t) {
    const auto& nb = arrivals[t - 1].neighbors;
    if (std::binary_search(nb.begin(), nb.end(), node)) return t;
  }
  return 0;
}

std::vector<int> RequestSequence::mu_all() const {
  std::vector<int> out(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) out[static_cast<size_t>(i - 1)] = mu(i);
  return out;
}

const RequestSequence& validate(const RequestSequence& sequence) {
  if (sequence.n < 1) throw InvalidParameter("sequence needs at least one node");
  if (sequence.m() < 1) throw InvalidParameter("sequence needs at least one arrival");
  for (int t = 1; t <= sequence.m(); ++t) {
    const Arrival& a = sequence.arrivals[static_cast<size_t>(t - 1)];
    if (a.neighbors.empty()) {
      throw EmptyNeighborhood("arrival " + std::to_string(t) + " has no neighbors");
    }
    if (!std::is_sorted(a.neighbors.begin(), a.neighbors.end()) ||
        std::adjacent_find(a.neighbors.begin(), a.neighbors.end()) != a.neighbors.end()) {
      throw InvalidParameter("arrival " + std::to_string(t) +
                             " neighbors must be sorted and unique");
    }
    for (int i : a.neighbors) {
      if (i < 1 || i > sequence.n) {
        throw IndexOutOfRange("arrival " + std::to_string(t) + " references node " +
                              std::to_string(i) + " outside [1, " +
                              std::to_string(sequence.n) + "]");
      }
    }
    if (a.quantity <= 0) {
      throw NonpositiveQuantity("arrival " + std::to_string(t) +
                                " has nonpositive quantity");
    }
  }
  return sequence;
}

bool is_nested(const RequestSequence& sequence) {
  for (int t = 2; t <= sequence.m(); ++t) {
    const auto& outer = sequence.arrivals[static_cast<size_t>(t - 2)].neighbors;
    const auto& inner = sequence.arrivals[static_cast<size_t>(t - 1)].neighbors;
    if (!std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) return false;
  }
  return true;
}

RequestSequence induced_nested(const RequestSequence& sequence) {
  validate(sequence);
  std::vector<int> mu = sequence.mu_all();
  RequestSequence out;
  out.n = sequence.n;
  out.arrivals.reserve(sequence.arrivals.size());
  for (int t = 1; t <= sequence.m(); ++t) {
    Arrival a;
    a.quantity = sequence.arrivals[static_cast<size_t>(t - 1)].quantity;
    for (int i = 1; i <= sequence.n; ++i) {
      if (mu[static_cast<size_t>(i - 1)] >= t) a.neighbors.push_back(i);
    }
    if (a.neighbors.empty()) {
      throw DegenerateOutput("induced nested sequence drops arrival " + std::to_string(t));
    }
    out.arrivals.push_back(std::move(a));
  }
  return out;
}

bool check_feasible(const RequestSequence& sequence, const std::vector<RVec>& allocation) {
  if (static_cast<int>(allocation.size()) != sequence.m()) return false;
  for (int t = 1; t <= sequence.m(); ++t) {
    const Arrival& a = sequence.arrivals[static_cast<size_t>(t - 1)];
    const RVec& x = allocation[static_cast<size_t>(t - 1)];
    if (x.size() != sequence.n) return false;
    Rat total(0);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) < 0) return false;
      if (x(i) > 0 &&
          !std::binary_search(a.neighbors.begin(), a.neighbors.end(),
                              static_cast<int>(i) + 1)) {
        return false;
      }
      total += x(i);
    }
    if (total != a.quantity) return false;
  }
  return true;
}

RequestSequence random_instance(const InstanceParams& params) {
  if (params.n < 1 || params.m < 1) throw InvalidParameter("instance needs n >= 1, m >= 1");
  if (params.total_quantity <= 0) throw NonpositiveQuantity("total quantity must be positive");
  if (params.quantity_denominator < 1) {
    throw InvalidParameter("quantity denominator must be at least 1");
  }

  Rng rng(params.seed);
  RequestSequence out;
  out.n = params.n;
  out.arrivals.resize(static_cast<size_t>(params.m));

  for (Arrival& a : out.arrivals) {
    for (int i = 1; i <= params.n; ++i) {
      if (rng.unit() < params.density) a.neighbors.push_back(i);
    }
    if (a.neighbors.empty()) a.neighbors.push_back(rng.between(1, params.n));
  }

  // Weights k_t / D with k_t >= 1, rescaled so the total is hit exactly.
  std::vector<long> weights(static_cast<size_t>(params.m));
  long weight_sum = 0;
  for (long& w : weights) {
    w = rng.between(1, params.quantity_denominator);
    weight_sum += w;
  }
  for (int t = 0; t < params.m; ++t) {
    out.arrivals[static_cast<size_t>(t)].quantity =
        params.total_quantity * rat(weights[static_cast<size_t>(t)], weight_sum);
  }
  validate(out);
  return out;
}

}  // namespace aquafill
