#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace procmine {

using PlaceIndex = std::uint32_t;
using TransitionIndex = std::uint32_t;

struct Place {
  std::string id;
  std::string name;

  bool operator==(const Place&) const = default;
};

// A transition without a label is silent (tau).
struct Transition {
  std::string id;
  std::optional<std::string> label;

  bool silent() const noexcept { return !label.has_value(); }
  bool operator==(const Transition&) const = default;
};

struct Arc {
  enum class Direction : std::uint8_t { place_to_transition, transition_to_place };
  Direction direction;
  PlaceIndex place;
  TransitionIndex transition;

  bool operator==(const Arc&) const = default;
};

// Labeled place/transition net with unit arc weights. Nodes are indexed in
// insertion order; all deterministic output follows that order.
class PetriNet {
 public:
  // Ids must be unique across places and transitions; throws std::invalid_argument otherwise.
  PlaceIndex add_place(std::string id, std::string name = {});
  TransitionIndex add_transition(std::string id, std::optional<std::string> label);
  // p -> t and t -> p. Throw std::invalid_argument on unknown nodes or a duplicate arc.
  void add_input_arc(PlaceIndex p, TransitionIndex t);
  void add_output_arc(TransitionIndex t, PlaceIndex p);

  std::size_t place_count() const noexcept { return places_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  const Place& place(PlaceIndex p) const { return places_.at(p); }
  const Transition& transition(TransitionIndex t) const { return transitions_.at(t); }
  const std::vector<Place>& places() const noexcept { return places_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  // Input / output places of a transition.
  std::span<const PlaceIndex> inputs(TransitionIndex t) const { return inputs_.at(t); }
  std::span<const PlaceIndex> outputs(TransitionIndex t) const { return outputs_.at(t); }
  // Transitions producing into / consuming from a place.
  std::span<const TransitionIndex> producers(PlaceIndex p) const { return producers_.at(p); }
  std::span<const TransitionIndex> consumers(PlaceIndex p) const { return consumers_.at(p); }

  std::optional<PlaceIndex> find_place(std::string_view id) const;
  std::optional<TransitionIndex> find_transition(std::string_view id) const;
  bool has_id(std::string_view id) const { return ids_.contains(std::string(id)); }

  bool operator==(const PetriNet& other) const {
    return places_ == other.places_ && transitions_ == other.transitions_ && arcs_ == other.arcs_;
  }

 private:
  struct NodeRef {
    bool is_place;
    std::uint32_t index;
  };

  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<PlaceIndex>> inputs_, outputs_;
  std::vector<std::vector<TransitionIndex>> producers_, consumers_;
  std::unordered_map<std::string, NodeRef> ids_;
};

// Token count per place, dense over the net's places (absent means 0).
class Marking {
 public:
  using Count = std::uint32_t;

  Marking() = default;
  explicit Marking(std::size_t place_count) : tokens_(place_count, 0) {}
  explicit Marking(std::vector<Count> tokens) : tokens_(std::move(tokens)) {}

  Count operator[](PlaceIndex p) const { return tokens_.at(p); }
  Count& operator[](PlaceIndex p) { return tokens_.at(p); }
  std::size_t size() const noexcept { return tokens_.size(); }
  std::span<const Count> tokens() const noexcept { return tokens_; }
  std::uint64_t total() const noexcept;

  // True if this >= other componentwise and > somewhere.
  bool strictly_covers(const Marking& other) const;

  auto operator<=>(const Marking&) const = default;

 private:
  std::vector<Count> tokens_;
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept;
};

// Labeled net with an initial marking and a non-empty collection of final markings.
struct AcceptingPetriNet {
  PetriNet net;
  Marking initial;
  std::vector<Marking> finals;

  // Throws std::invalid_argument if markings do not match the net's places or finals is empty.
  void validate() const;
  bool operator==(const AcceptingPetriNet&) const = default;
};

// Marking with one token on `place`.
Marking single_token(const PetriNet& net, PlaceIndex place);

bool is_enabled(const PetriNet& net, const Marking& m, TransitionIndex t);
std::vector<TransitionIndex> enabled(const PetriNet& net, const Marking& m);
// Throws ContractViolation if t is not enabled in m.
Marking fire(const PetriNet& net, const Marking& m, TransitionIndex t);

struct WorkflowNetCheck {
  bool ok = false;
  std::string diagnosis;  // empty when ok

  explicit operator bool() const noexcept { return ok; }
};

// One source place, one sink place, every node on a source-to-sink path.
WorkflowNetCheck is_workflow_net(const PetriNet& net);

// Places without producers / consumers, in index order.
std::vector<PlaceIndex> source_places(const PetriNet& net);
std::vector<PlaceIndex> sink_places(const PetriNet& net);

std::vector<std::string> visible_labels(const PetriNet& net);

}  // namespace procmine
