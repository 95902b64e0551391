#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "procmine/petri_net.hpp"

namespace procmine {

inline constexpr std::size_t kDefaultStateCap = 1'048'576;

struct ReachabilityGraph {
  struct Edge {
    std::uint32_t from;
    TransitionIndex transition;
    std::uint32_t to;

    bool operator==(const Edge&) const = default;
  };

  std::vector<Marking> vertices;  // breadth-first discovery order; vertices[0] is the initial marking
  std::vector<Edge> edges;

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
};

// Witness that some reachable marking strictly covers one of its ancestors.
struct Unbounded {
  Marking ancestor;
  Marking covering;
};

using ReachabilityResult = std::variant<ReachabilityGraph, Unbounded>;

// Breadth-first construction from the initial marking. Throws CapExceeded when
// more than `state_cap` vertices are needed without an unboundedness verdict.
ReachabilityResult reachability_graph(const AcceptingPetriNet& apn, std::size_t state_cap = kDefaultStateCap);

}  // namespace procmine
