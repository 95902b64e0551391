#include "procmine/complexity.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "procmine/errors.hpp"

namespace procmine {

Fraction density(const PetriNet& net) {
  if (net.place_count() == 0 || net.transition_count() == 0) {
    throw std::invalid_argument("density needs at least one place and one transition");
  }
  return Fraction(static_cast<std::int64_t>(net.arc_count()),
                  static_cast<std::int64_t>(2 * net.place_count() * net.transition_count()));
}

std::size_t ecam(const PetriNet& net) {
  std::size_t total = 0;
  for (PlaceIndex p = 0; p < net.place_count(); ++p) {
    std::set<std::vector<PlaceIndex>> postsets;
    for (TransitionIndex t : net.consumers(p)) {
      std::vector<PlaceIndex> post(net.outputs(t).begin(), net.outputs(t).end());
      std::sort(post.begin(), post.end());
      postsets.insert(std::move(post));
    }
    total += postsets.size();
  }
  return total;
}

// Iterative Tarjan; reachability graphs can be deep enough to overflow the call stack.
std::vector<std::size_t> strongly_connected_components(std::size_t vertex_count,
                                                       const std::vector<ReachabilityGraph::Edge>& edges,
                                                       std::size_t* component_count) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> offsets(vertex_count + 1, 0);
  for (const auto& e : edges) {
    if (e.from >= vertex_count || e.to >= vertex_count) throw std::invalid_argument("edge endpoint out of range");
    ++offsets[e.from + 1];
  }
  for (std::size_t v = 0; v < vertex_count; ++v) offsets[v + 1] += offsets[v];
  std::vector<std::size_t> targets(edges.size());
  {
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges) targets[fill[e.from]++] = e.to;
  }

  std::vector<std::size_t> index(vertex_count, kUnvisited), low(vertex_count, 0), component(vertex_count, kUnvisited);
  std::vector<bool> on_stack(vertex_count, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // vertex, next edge offset
  std::size_t counter = 0, components = 0;

  for (std::size_t root = 0; root < vertex_count; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, offsets[root]);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < offsets[v + 1]) {
        std::size_t w = targets[next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, offsets[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  if (component_count) *component_count = components;
  return component;
}

std::size_t ecym(const ReachabilityGraph& rg) {
  std::size_t components = 0;
  strongly_connected_components(rg.vertex_count(), rg.edges, &components);
  return rg.edge_count() + components - rg.vertex_count();
}

ComplexityReport complexity_report(const AcceptingPetriNet& apn, std::size_t state_cap) {
  ComplexityReport report;
  const PetriNet& net = apn.net;
  report.arcs = net.arc_count();
  report.places = net.place_count();
  report.transitions = net.transition_count();
  report.density = density(net);
  report.ecam = ecam(net);
  const auto wf = is_workflow_net(net);
  report.is_wf_net = wf.ok;
  report.wf_diagnosis = wf.diagnosis;
  try {
    auto result = reachability_graph(apn, state_cap);
    if (const auto* rg = std::get_if<ReachabilityGraph>(&result)) {
      report.rg_edges = rg->edge_count();
      report.rg_vertices = rg->vertex_count();
      report.ecym = ecym(*rg);
    } else {
      report.unbounded = true;
    }
  } catch (const CapExceeded&) {
    report.cap_exceeded = true;
  }
  return report;
}

}  // namespace procmine
