#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "procmine/event_log.hpp"
#include "procmine/petri_net.hpp"

namespace procmine {

inline constexpr std::size_t kDefaultMaxClusterSize = 25;

// Possibly overlapping activity groups whose union is the log alphabet.
using ActivityClustering = std::vector<std::set<std::string>>;

using DiscoveryFunction = std::function<AcceptingPetriNet(const EventLog&)>;

// Groups start as the endpoints of each directly-follows edge; overlapping groups
// are merged greedily while the union stays within `max_cluster_size`.
// Activities without any edge get a singleton cluster.
ActivityClustering cluster_activities(const EventLog& log, std::size_t max_cluster_size = kDefaultMaxClusterSize);

// Discovers one subnet per projected sublog with `base`, merges them and reduces the result.
AcceptingPetriNet discover_decomposed(const EventLog& log, const DiscoveryFunction& base,
                                      std::size_t max_cluster_size = kDefaultMaxClusterSize);
// Uses the Inductive Miner as base discovery.
AcceptingPetriNet discover_decomposed(const EventLog& log, std::size_t max_cluster_size = kDefaultMaxClusterSize);

// Disjoint union of places. Visible transitions sharing a label are fused (one
// transition per combination of same-labeled transitions across the subnets
// that have the label); silent transitions are copied. Initial markings are
// united, final markings combined as a cross product.
AcceptingPetriNet merge(std::span<const AcceptingPetriNet> subnets);

// Applies until nothing changes: remove duplicate places, fuse place-tau-place
// series, drop isolated silent transitions. Preserves the visible language.
AcceptingPetriNet reduce(const AcceptingPetriNet& apn);

// Adds a fresh source with a silent split into the initial marking and one
// silent join per final marking into a fresh sink. Returns the net unchanged
// unless the initial and every final marking are non-empty with counts 0 or 1.
AcceptingPetriNet add_start_end_routing(const AcceptingPetriNet& apn);

}  // namespace procmine
