#include "aquafill/hindsight.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <queue>
#include <string>

#include "aquafill/errors.hpp"
#include "aquafill/rng.hpp"

namespace aquafill {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> neighbor_masks(const RequestSequence& sequence) {
  std::vector<Mask> masks(sequence.arrivals.size(), 0);
  for (size_t t = 0; t < sequence.arrivals.size(); ++t) {
    for (int i : sequence.arrivals[t].neighbors) masks[t] |= Mask{1} << (i - 1);
  }
  return masks;
}

Rat rank_of_mask(const RequestSequence& sequence, const std::vector<Mask>& masks, Mask subset) {
  Rat total(0);
  for (size_t t = 0; t < masks.size(); ++t) {
    if (masks[t] & subset) total += sequence.arrivals[t].quantity;
  }
  return total;
}

// Exact max-flow (shortest augmenting paths) on the bipartite transport
// network: source -> arrivals -> nodes -> sink. Augmentation count is
// bounded by V * E regardless of capacities, so rational capacities are
// safe. Used only to extract a witness allocation at desk scale.
class ExactFlow {
 public:
  explicit ExactFlow(int vertex_count) : adjacency_(static_cast<size_t>(vertex_count)) {}

  void add_edge(int from, int to, Rat capacity) {
    adjacency_[static_cast<size_t>(from)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, std::move(capacity)});
    adjacency_[static_cast<size_t>(to)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, Rat(0)});
  }

  Rat max_flow(int source, int sink) {
    Rat total(0);
    while (true) {
      std::vector<int> parent_edge(adjacency_.size(), -1);
      std::queue<int> frontier;
      frontier.push(source);
      std::vector<char> seen(adjacency_.size(), 0);
      seen[static_cast<size_t>(source)] = 1;
      while (!frontier.empty() && !seen[static_cast<size_t>(sink)]) {
        int v = frontier.front();
        frontier.pop();
        for (int id : adjacency_[static_cast<size_t>(v)]) {
          const EdgeRec& e = edges_[static_cast<size_t>(id)];
          if (!seen[static_cast<size_t>(e.to)] && e.capacity > 0) {
            seen[static_cast<size_t>(e.to)] = 1;
            parent_edge[static_cast<size_t>(e.to)] = id;
            frontier.push(e.to);
          }
        }
      }
      if (!seen[static_cast<size_t>(sink)]) break;

      Rat bottleneck;
      bool first = true;
      for (int v = sink; v != source;) {
        const EdgeRec& e = edges_[static_cast<size_t>(parent_edge[static_cast<size_t>(v)])];
        if (first || e.capacity < bottleneck) bottleneck = e.capacity;
        first = false;
        v = edges_[static_cast<size_t>(parent_edge[static_cast<size_t>(v)] ^ 1)].to;
      }
      for (int v = sink; v != source;) {
        int id = parent_edge[static_cast<size_t>(v)];
        edges_[static_cast<size_t>(id)].capacity -= bottleneck;
        edges_[static_cast<size_t>(id ^ 1)].capacity += bottleneck;
        v = edges_[static_cast<size_t>(id ^ 1)].to;
      }
      total += bottleneck;
    }
    return total;
  }

  // Flow pushed along a forward edge, identified by insertion order.
  Rat flow_on(int edge_index, const Rat& original_capacity) const {
    return original_capacity - edges_[static_cast<size_t>(edge_index)].capacity;
  }

 private:
  struct EdgeRec {
    int to;
    Rat capacity;
  };
  std::vector<std::vector<int>> adjacency_;
  std::vector<EdgeRec> edges_;
};

std::vector<RVec> extract_witness(const RequestSequence& sequence, const RVec& target) {
  const int m = sequence.m();
  const int n = sequence.n;
  // Vertices: 0 = source, 1..m arrivals, m+1..m+n nodes, m+n+1 = sink.
  ExactFlow flow(m + n + 2);
  const int source = 0;
  const int sink = m + n + 1;

  struct ArcRef {
    int edge_index;
    Rat capacity;
  };
  std::vector<std::vector<std::pair<int, ArcRef>>> arcs(static_cast<size_t>(m));

  int next_edge = 0;
  for (int t = 1; t <= m; ++t) {
    const Arrival& a = sequence.arrivals[static_cast<size_t>(t - 1)];
    flow.add_edge(source, t, a.quantity);
    next_edge += 2;
    for (int i : a.neighbors) {
      arcs[static_cast<size_t>(t - 1)].push_back({i, {next_edge, a.quantity}});
      flow.add_edge(t, m + i, a.quantity);
      next_edge += 2;
    }
  }
  for (int i = 1; i <= n; ++i) {
    flow.add_edge(m + i, sink, target(i - 1));
    next_edge += 2;
  }

  Rat pushed = flow.max_flow(source, sink);
  if (pushed != sequence.total_quantity()) {
    throw Error("hindsight witness extraction failed to route the full quantity");
  }

  std::vector<RVec> witness(static_cast<size_t>(m));
  for (int t = 1; t <= m; ++t) {
    RVec x = RVec::Zero(n);
    for (const auto& [node, arc] : arcs[static_cast<size_t>(t - 1)]) {
      x(node - 1) = flow.flow_on(arc.edge_index, arc.capacity);
    }
    witness[static_cast<size_t>(t - 1)] = std::move(x);
  }
  return witness;
}

}  // namespace

Rat rank(const RequestSequence& sequence, const std::vector<int>& subset) {
  validate(sequence);
  for (int i : subset) {
    if (i < 1 || i > sequence.n) {
      throw IndexOutOfRange("rank queried with node " + std::to_string(i) +
                            " outside [1, " + std::to_string(sequence.n) + "]");
    }
  }
  Rat total(0);
  for (const Arrival& a : sequence.arrivals) {
    bool meets = false;
    for (int i : a.neighbors) {
      if (std::find(subset.begin(), subset.end(), i) != subset.end()) {
        meets = true;
        break;
      }
    }
    if (meets) total += a.quantity;
  }
  return total;
}

int hindsight_max_n() {
  if (const char* raw = std::getenv("AQUAFILL_MAX_N")) {
    char* tail = nullptr;
    long parsed = std::strtol(raw, &tail, 10);
    if (tail != raw && *tail == '\0' && parsed >= 1 && parsed <= 30) {
      return static_cast<int>(parsed);
    }
  }
  return 20;
}

HindsightResult opt_hindsight_with_witness(const RequestSequence& sequence) {
  validate(sequence);
  const int n = sequence.n;
  if (n > hindsight_max_n()) {
    throw InstanceTooLarge("hindsight optimum enumerates 2^n subsets; n = " +
                           std::to_string(n) + " exceeds the limit " +
                           std::to_string(hindsight_max_n()) +
                           " (set AQUAFILL_MAX_N to raise it)");
  }

  std::vector<Mask> masks = neighbor_masks(sequence);
  const Mask everyone = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);

  HindsightResult result;
  result.loads = RVec::Zero(n);

  Mask fixed = 0;
  Rat fixed_rank(0);
  Mask remaining = everyone;
  while (remaining != 0) {
    // Smallest fill ratio of the contracted rank over nonempty subsets of
    // the remaining nodes. Tight subsets are closed under union, so the
    // union of all minimizers is itself tight and gives a canonical choice.
    bool have_best = false;
    Rat best_ratio;
    Mask tight_union = 0;
    for (Mask s = remaining; s != 0; s = (s - 1) & remaining) {
      Rat contracted = rank_of_mask(sequence, masks, s | fixed) - fixed_rank;
      Rat ratio = contracted / static_cast<int>(std::popcount(s));
      if (!have_best || ratio < best_ratio) {
        have_best = true;
        best_ratio = ratio;
        tight_union = s;
      } else if (ratio == best_ratio) {
        tight_union |= s;
      }
    }

    for (int i = 1; i <= n; ++i) {
      if (tight_union & (Mask{1} << (i - 1))) result.loads(i - 1) = best_ratio;
    }
    result.levels.push_back(best_ratio);
    fixed |= tight_union;
    fixed_rank = rank_of_mask(sequence, masks, fixed);
    remaining &= ~tight_union;
  }

  result.witness = extract_witness(sequence, result.loads);
  return result;
}

RVec opt_hindsight(const RequestSequence& sequence) {
  return opt_hindsight_with_witness(sequence).loads;
}

std::vector<RVec> sample_feasible(const RequestSequence& sequence, std::uint64_t seed) {
  validate(sequence);
  Rng rng(seed);
  std::vector<RVec> allocation;
  allocation.reserve(sequence.arrivals.size());
  for (const Arrival& a : sequence.arrivals) {
    std::vector<long> weights(a.neighbors.size());
    long weight_sum = 0;
    for (long& w : weights) {
      w = rng.between(0, 12);
      weight_sum += w;
    }
    if (weight_sum == 0) {
      weights[static_cast<size_t>(rng.below(static_cast<int>(weights.size())))] = 1;
      weight_sum = 1;
    }
    RVec x = RVec::Zero(sequence.n);
    for (size_t k = 0; k < a.neighbors.size(); ++k) {
      x(a.neighbors[k] - 1) = a.quantity * rat(weights[k], weight_sum);
    }
    allocation.push_back(std::move(x));
  }
  return allocation;
}

}  // namespace aquafill
