#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "procmine/event_log.hpp"
#include "procmine/petri_net.hpp"
#include "procmine/process_tree.hpp"

namespace procmine {

struct DirectlyFollowsGraph {
  std::set<std::string> activities;
  std::map<std::pair<std::string, std::string>, std::size_t> edges;
  std::map<std::string, std::size_t> start_activities;
  std::map<std::string, std::size_t> end_activities;

  bool has_edge(const std::string& from, const std::string& to) const { return edges.contains({from, to}); }
};

struct Cut {
  enum class Kind { exclusive_choice, sequence, parallel, loop };

  Kind kind;
  // Disjoint, non-empty, covering the graph's activities. For a sequence cut
  // the blocks are in execution order; for a loop cut blocks[0] is the body.
  std::vector<std::set<std::string>> blocks;

  bool operator==(const Cut&) const = default;
};

DirectlyFollowsGraph build_dfg(const EventLog& log);

// Tries exclusive choice, sequence, parallel and loop cuts in that order.
std::optional<Cut> find_cut(const DirectlyFollowsGraph& dfg);

// One sublog per block, each restricted to that block's activities.
std::vector<EventLog> split_log(const EventLog& log, const Cut& cut);

ProcessTree discover_tree(const EventLog& log);
AcceptingPetriNet discover_net(const EventLog& log);

}  // namespace procmine
