#include "procmine/reachability.hpp"

#include <stdexcept>
#include <unordered_map>

#include "procmine/errors.hpp"

namespace procmine {

ReachabilityResult reachability_graph(const AcceptingPetriNet& apn, std::size_t state_cap) {
  if (state_cap == 0) throw std::invalid_argument("state cap must be at least 1");
  const PetriNet& net = apn.net;
  if (apn.initial.size() != net.place_count()) throw std::invalid_argument("initial marking does not match the net");

  ReachabilityGraph graph;
  std::vector<std::uint32_t> parent;  // BFS tree
  std::vector<std::uint64_t> totals;
  std::unordered_map<Marking, std::uint32_t, MarkingHash> index;

  graph.vertices.push_back(apn.initial);
  parent.push_back(0);
  totals.push_back(apn.initial.total());
  index.emplace(apn.initial, 0);

  for (std::uint32_t current = 0; current < graph.vertices.size(); ++current) {
    for (TransitionIndex t = 0; t < net.transition_count(); ++t) {
      if (!is_enabled(net, graph.vertices[current], t)) continue;
      Marking next = fire(net, graph.vertices[current], t);
      auto found = index.find(next);
      if (found != index.end()) {
        graph.edges.push_back({current, t, found->second});
        continue;
      }
      const std::uint64_t next_total = next.total();
      for (std::uint32_t a = current;; a = parent[a]) {
        if (next_total > totals[a] && next.strictly_covers(graph.vertices[a])) {
          return Unbounded{graph.vertices[a], std::move(next)};
        }
        if (a == 0) break;
      }
      if (graph.vertices.size() >= state_cap) {
        throw CapExceeded("reachability graph exceeds " + std::to_string(state_cap) + " states");
      }
      auto id = static_cast<std::uint32_t>(graph.vertices.size());
      index.emplace(next, id);
      graph.vertices.push_back(std::move(next));
      parent.push_back(current);
      totals.push_back(next_total);
      graph.edges.push_back({current, t, id});
    }
  }
  return graph;
}

}  // namespace procmine
