#include "procmine/petri_net.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "procmine/errors.hpp"

namespace procmine {

PlaceIndex PetriNet::add_place(std::string id, std::string name) {
  auto index = static_cast<PlaceIndex>(places_.size());
  if (!ids_.emplace(id, NodeRef{true, index}).second) {
    throw std::invalid_argument("duplicate node id '" + id + "'");
  }
  places_.push_back(Place{std::move(id), std::move(name)});
  producers_.emplace_back();
  consumers_.emplace_back();
  return index;
}

TransitionIndex PetriNet::add_transition(std::string id, std::optional<std::string> label) {
  auto index = static_cast<TransitionIndex>(transitions_.size());
  if (!ids_.emplace(id, NodeRef{false, index}).second) {
    throw std::invalid_argument("duplicate node id '" + id + "'");
  }
  transitions_.push_back(Transition{std::move(id), std::move(label)});
  inputs_.emplace_back();
  outputs_.emplace_back();
  return index;
}

void PetriNet::add_input_arc(PlaceIndex p, TransitionIndex t) {
  if (p >= places_.size() || t >= transitions_.size()) throw std::invalid_argument("arc references unknown node");
  auto& in = inputs_[t];
  if (std::find(in.begin(), in.end(), p) != in.end()) {
    throw std::invalid_argument("duplicate arc " + places_[p].id + " -> " + transitions_[t].id);
  }
  in.push_back(p);
  consumers_[p].push_back(t);
  arcs_.push_back(Arc{Arc::Direction::place_to_transition, p, t});
}

void PetriNet::add_output_arc(TransitionIndex t, PlaceIndex p) {
  if (p >= places_.size() || t >= transitions_.size()) throw std::invalid_argument("arc references unknown node");
  auto& out = outputs_[t];
  if (std::find(out.begin(), out.end(), p) != out.end()) {
    throw std::invalid_argument("duplicate arc " + transitions_[t].id + " -> " + places_[p].id);
  }
  out.push_back(p);
  producers_[p].push_back(t);
  arcs_.push_back(Arc{Arc::Direction::transition_to_place, p, t});
}

std::optional<PlaceIndex> PetriNet::find_place(std::string_view id) const {
  auto it = ids_.find(std::string(id));
  if (it == ids_.end() || !it->second.is_place) return std::nullopt;
  return it->second.index;
}

std::optional<TransitionIndex> PetriNet::find_transition(std::string_view id) const {
  auto it = ids_.find(std::string(id));
  if (it == ids_.end() || it->second.is_place) return std::nullopt;
  return it->second.index;
}

std::uint64_t Marking::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : tokens_) sum += c;
  return sum;
}

bool Marking::strictly_covers(const Marking& other) const {
  if (tokens_.size() != other.tokens_.size()) return false;
  bool greater = false;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i] < other.tokens_[i]) return false;
    if (tokens_[i] > other.tokens_[i]) greater = true;
  }
  return greater;
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto c : m.tokens()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

void AcceptingPetriNet::validate() const {
  if (initial.size() != net.place_count()) throw std::invalid_argument("initial marking does not match the net");
  if (finals.empty()) throw std::invalid_argument("accepting net needs at least one final marking");
  for (const auto& f : finals) {
    if (f.size() != net.place_count()) throw std::invalid_argument("final marking does not match the net");
  }
}

Marking single_token(const PetriNet& net, PlaceIndex place) {
  Marking m(net.place_count());
  m[place] = 1;
  return m;
}

bool is_enabled(const PetriNet& net, const Marking& m, TransitionIndex t) {
  for (PlaceIndex p : net.inputs(t)) {
    if (m[p] == 0) return false;
  }
  return true;
}

std::vector<TransitionIndex> enabled(const PetriNet& net, const Marking& m) {
  std::vector<TransitionIndex> result;
  for (TransitionIndex t = 0; t < net.transition_count(); ++t) {
    if (is_enabled(net, m, t)) result.push_back(t);
  }
  return result;
}

Marking fire(const PetriNet& net, const Marking& m, TransitionIndex t) {
  if (t >= net.transition_count()) throw ContractViolation("fire: unknown transition");
  if (!is_enabled(net, m, t)) {
    throw ContractViolation("fire: transition '" + net.transition(t).id + "' is not enabled");
  }
  Marking next = m;
  for (PlaceIndex p : net.inputs(t)) --next[p];
  for (PlaceIndex p : net.outputs(t)) ++next[p];
  return next;
}

std::vector<PlaceIndex> source_places(const PetriNet& net) {
  std::vector<PlaceIndex> result;
  for (PlaceIndex p = 0; p < net.place_count(); ++p) {
    if (net.producers(p).empty()) result.push_back(p);
  }
  return result;
}

std::vector<PlaceIndex> sink_places(const PetriNet& net) {
  std::vector<PlaceIndex> result;
  for (PlaceIndex p = 0; p < net.place_count(); ++p) {
    if (net.consumers(p).empty()) result.push_back(p);
  }
  return result;
}

WorkflowNetCheck is_workflow_net(const PetriNet& net) {
  auto sources = source_places(net);
  auto sinks = sink_places(net);
  if (sources.empty()) return {false, "no source place"};
  if (sources.size() > 1) return {false, "multiple sources"};
  if (sinks.empty()) return {false, "no sink place"};
  if (sinks.size() > 1) return {false, "multiple sinks"};

  // Nodes: places [0, P), transitions [P, P + T).
  const std::size_t np = net.place_count();
  const std::size_t n = np + net.transition_count();
  auto search = [&](std::size_t start, bool forward) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop_front();
      auto visit = [&](std::size_t next) {
        if (!seen[next]) {
          seen[next] = true;
          queue.push_back(next);
        }
      };
      if (node < np) {
        auto p = static_cast<PlaceIndex>(node);
        for (auto t : forward ? net.consumers(p) : net.producers(p)) visit(np + t);
      } else {
        auto t = static_cast<TransitionIndex>(node - np);
        for (auto p : forward ? net.outputs(t) : net.inputs(t)) visit(p);
      }
    }
    return seen;
  };
  auto from_source = search(sources.front(), true);
  auto to_sink = search(sinks.front(), false);
  for (std::size_t node = 0; node < n; ++node) {
    if (!from_source[node] || !to_sink[node]) {
      const std::string& id =
          node < np ? net.place(static_cast<PlaceIndex>(node)).id : net.transition(static_cast<TransitionIndex>(node - np)).id;
      return {false, "node not on path: " + id};
    }
  }
  return {true, {}};
}

std::vector<std::string> visible_labels(const PetriNet& net) {
  std::set<std::string> labels;
  for (const auto& t : net.transitions()) {
    if (t.label) labels.insert(*t.label);
  }
  return {labels.begin(), labels.end()};
}

}  // namespace procmine
