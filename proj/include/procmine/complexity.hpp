#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "procmine/alignment.hpp"
#include "procmine/petri_net.hpp"
#include "procmine/reachability.hpp"

namespace procmine {

struct ComplexityReport {
  Fraction density;
  std::size_t ecam = 0;
  // Absent when the reachability graph is unbounded or too large.
  std::optional<std::size_t> ecym;
  std::optional<std::size_t> rg_edges;
  std::optional<std::size_t> rg_vertices;
  std::size_t arcs = 0;
  std::size_t places = 0;
  std::size_t transitions = 0;
  bool unbounded = false;
  bool cap_exceeded = false;
  bool is_wf_net = false;
  std::string wf_diagnosis;
};

// |A| / (2 |P| |T|). Throws std::invalid_argument for a net without places or transitions.
Fraction density(const PetriNet& net);

// Sum over places of the number of distinct postsets among the place's output transitions.
std::size_t ecam(const PetriNet& net);

// Component id per vertex; ids are dense from 0.
std::vector<std::size_t> strongly_connected_components(std::size_t vertex_count,
                                                       const std::vector<ReachabilityGraph::Edge>& edges,
                                                       std::size_t* component_count = nullptr);

// |E| - |V| + number of strongly connected components.
std::size_t ecym(const ReachabilityGraph& rg);

ComplexityReport complexity_report(const AcceptingPetriNet& apn, std::size_t state_cap = kDefaultStateCap);

}  // namespace procmine
