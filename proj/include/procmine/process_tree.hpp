#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "procmine/event_log.hpp"
#include "procmine/petri_net.hpp"

namespace procmine {

// Block-structured process model. A loop node is loop(do, redo...): run `do`,
// then zero or more times one of the redo children followed by `do` again.
class ProcessTree {
 public:
  enum class Operator { activity, tau, sequence, exclusive_choice, parallel, loop };

  static ProcessTree activity(std::string label);
  static ProcessTree tau();
  // Operators require at least two children; throw std::invalid_argument otherwise.
  static ProcessTree sequence(std::vector<ProcessTree> children);
  static ProcessTree exclusive_choice(std::vector<ProcessTree> children);
  static ProcessTree parallel(std::vector<ProcessTree> children);
  static ProcessTree loop(std::vector<ProcessTree> children);

  // Parses the textual notation, e.g. `seq(a, xor(b, tau), loop(c, d))`.
  // Labels that are not plain identifiers are written in double quotes.
  static ProcessTree parse(std::string_view text);

  Operator op() const noexcept { return op_; }
  const std::string& label() const noexcept { return label_; }
  const std::vector<ProcessTree>& children() const noexcept { return children_; }
  bool is_leaf() const noexcept { return op_ == Operator::activity || op_ == Operator::tau; }

  std::size_t depth() const;
  std::set<std::string> activities() const;
  std::string to_string() const;

  bool operator==(const ProcessTree&) const = default;

 private:
  ProcessTree(Operator op, std::string label, std::vector<ProcessTree> children);

  Operator op_ = Operator::tau;
  std::string label_;
  std::vector<ProcessTree> children_;
};

// Sound workflow net with initial {source:1} and the single final {sink:1}.
// Silent transitions realise tau leaves and the routing of and/loop blocks.
AcceptingPetriNet to_petri_net(const ProcessTree& tree);

// `count` traces drawn from the tree language; each loop repeats its redo part
// at most `max_loop` times. Deterministic for a given seed.
EventLog simulate(const ProcessTree& tree, std::size_t count, std::size_t max_loop, std::uint64_t seed);

// Random well-formed tree of depth <= max_depth whose activity labels are
// distinct, drawn from the first `alphabet_size` labels a, b, ..., z, aa, ab, ...
ProcessTree random_tree(std::size_t alphabet_size, std::size_t max_depth, std::uint64_t seed);

}  // namespace procmine
