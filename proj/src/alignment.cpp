#include "procmine/alignment.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "procmine/errors.hpp"

namespace procmine {

namespace {

using Token = std::uint16_t;

class ProductSearch {
 public:
  ProductSearch(const Word& trace, const AcceptingPetriNet& apn, const CostScheme& scheme, const SearchLimits& limits)
      : trace_(trace),
        net_(apn.net),
        scheme_(scheme),
        limits_(limits),
        places_(apn.net.place_count()),
        index_(1024, StateHash{this}, StateEqual{this}) {
    if (limits_.token_cap > 0xffff) throw std::invalid_argument("token cap must fit in 16 bits");
    apn.validate();
    scheme_.validate();

    std::map<std::string, int> label_ids;
    for (TransitionIndex t = 0; t < net_.transition_count(); ++t) {
      const auto& label = net_.transition(t).label;
      transition_label_.push_back(label ? label_ids.try_emplace(*label, static_cast<int>(label_ids.size())).first->second
                                        : -1);
    }
    for (const auto& a : trace_) {
      auto it = label_ids.find(a);
      event_label_.push_back(it == label_ids.end() ? -2 : it->second);
    }
    // Suffix count of events that can only be log moves.
    remaining_unmatched_.assign(trace_.size() + 1, 0);
    for (std::size_t i = trace_.size(); i-- > 0;) {
      remaining_unmatched_[i] = remaining_unmatched_[i + 1] + (event_label_[i] == -2 ? 1 : 0);
    }
    for (const auto& f : apn.finals) {
      std::vector<Token> tokens;
      bool reachable = true;
      for (auto c : f.tokens()) {
        if (c > limits_.token_cap) reachable = false;
        tokens.push_back(static_cast<Token>(std::min<std::uint32_t>(c, 0xffff)));
      }
      if (reachable) finals_.push_back(std::move(tokens));
    }
    initial_ = apn.initial;
  }

  Alignment run() {
    std::vector<Token> start(places_);
    for (std::size_t p = 0; p < places_; ++p) {
      if (initial_.tokens()[p] > limits_.token_cap) throw NoFinalReachable("initial marking exceeds the token cap");
      start[p] = static_cast<Token>(initial_.tokens()[p]);
    }
    discover(start, 0, 0, kNoParent, MoveKind::model, 0);

    std::size_t expanded = 0;
    std::vector<Token> scratch(places_);
    while (!open_.empty()) {
      Entry entry = open_.top();
      open_.pop();
      Node& node = nodes_[entry.node];
      if (node.closed || entry.g != node.g) continue;
      node.closed = true;
      const std::uint32_t current = entry.node;
      const std::uint32_t position = node.position;
      const std::int64_t g = node.g;

      if (position == trace_.size() && is_final(current)) return reconstruct(current, expanded);
      if (++expanded > limits_.max_expanded_states) {
        throw CapExceeded("alignment search exceeded " + std::to_string(limits_.max_expanded_states) +
                          " expanded states");
      }

      // Successor order fixes tie-breaking: synchronous, then model, then log moves.
      if (position < trace_.size()) {
        for (TransitionIndex t = 0; t < net_.transition_count(); ++t) {
          if (transition_label_[t] != event_label_[position] || !enabled(current, t)) continue;
          if (successor(current, t, scratch)) {
            discover(scratch, position + 1, g + scheme_.sync_move, current, MoveKind::synchronous, t);
          }
        }
      }
      for (TransitionIndex t = 0; t < net_.transition_count(); ++t) {
        if (!enabled(current, t)) continue;
        if (successor(current, t, scratch)) {
          std::int64_t cost = transition_label_[t] < 0 ? scheme_.tau_model_move : scheme_.visible_model_move;
          discover(scratch, position, g + cost, current, MoveKind::model, t);
        }
      }
      if (position < trace_.size()) {
        std::copy_n(tokens(current), places_, scratch.begin());
        discover(scratch, position + 1, g + scheme_.log_move, current, MoveKind::log, 0);
      }
    }
    throw NoFinalReachable("no final marking is reachable");
  }

 private:
  static constexpr std::uint32_t kNoParent = 0xffffffffu;

  struct Node {
    std::uint32_t position;
    std::uint32_t parent;
    std::int64_t g;
    MoveKind via;
    TransitionIndex transition;
    bool closed;
  };

  // Equal f: deeper in the trace first, then first discovered.
  struct Entry {
    std::int64_t f;
    std::int64_t g;
    std::uint32_t position;
    std::uint64_t sequence;
    std::uint32_t node;

    bool operator>(const Entry& other) const {
      if (f != other.f) return f > other.f;
      if (position != other.position) return position < other.position;
      return sequence > other.sequence;
    }
  };

  struct StateHash {
    const ProductSearch* search;
    std::size_t operator()(std::uint32_t id) const noexcept {
      std::uint64_t h = 1469598103934665603ull ^ search->nodes_[id].position;
      const Token* t = search->tokens(id);
      for (std::size_t p = 0; p < search->places_; ++p) {
        h ^= t[p];
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  struct StateEqual {
    const ProductSearch* search;
    bool operator()(std::uint32_t a, std::uint32_t b) const noexcept {
      return search->nodes_[a].position == search->nodes_[b].position &&
             std::equal(search->tokens(a), search->tokens(a) + search->places_, search->tokens(b));
    }
  };

  const Token* tokens(std::uint32_t id) const { return arena_.data() + static_cast<std::size_t>(id) * places_; }

  bool enabled(std::uint32_t id, TransitionIndex t) const {
    const Token* m = tokens(id);
    for (PlaceIndex p : net_.inputs(t)) {
      if (m[p] == 0) return false;
    }
    return true;
  }

  // False when the successor would exceed the token cap.
  bool successor(std::uint32_t id, TransitionIndex t, std::vector<Token>& out) const {
    std::copy_n(tokens(id), places_, out.begin());
    for (PlaceIndex p : net_.inputs(t)) --out[p];
    for (PlaceIndex p : net_.outputs(t)) {
      if (out[p] >= limits_.token_cap) return false;
      ++out[p];
    }
    return true;
  }

  bool is_final(std::uint32_t id) const {
    const Token* m = tokens(id);
    return std::any_of(finals_.begin(), finals_.end(),
                       [&](const std::vector<Token>& f) { return std::equal(f.begin(), f.end(), m); });
  }

  std::int64_t heuristic(std::uint32_t position) const {
    return limits_.use_heuristic ? static_cast<std::int64_t>(remaining_unmatched_[position]) * scheme_.log_move : 0;
  }

  void discover(const std::vector<Token>& marking, std::uint32_t position, std::int64_t g, std::uint32_t parent,
                MoveKind via, TransitionIndex t) {
    auto id = static_cast<std::uint32_t>(nodes_.size());
    arena_.insert(arena_.end(), marking.begin(), marking.end());
    nodes_.push_back(Node{position, parent, g, via, t, false});
    auto [it, inserted] = index_.insert(id);
    if (!inserted) {
      arena_.resize(arena_.size() - places_);
      nodes_.pop_back();
      Node& existing = nodes_[*it];
      if (existing.closed || existing.g <= g) return;
      existing.g = g;
      existing.parent = parent;
      existing.via = via;
      existing.transition = t;
      id = *it;
    }
    open_.push(Entry{g + heuristic(position), g, position, sequence_++, id});
  }

  Alignment reconstruct(std::uint32_t goal, std::size_t expanded) const {
    Alignment alignment;
    alignment.cost = nodes_[goal].g;
    alignment.complete = true;
    alignment.expanded_states = expanded;
    for (std::uint32_t id = goal; nodes_[id].parent != kNoParent; id = nodes_[id].parent) {
      const Node& node = nodes_[id];
      switch (node.via) {
        case MoveKind::synchronous:
          alignment.moves.push_back(Move{MoveKind::synchronous, trace_[node.position - 1], node.transition});
          break;
        case MoveKind::log:
          alignment.moves.push_back(Move{MoveKind::log, trace_[node.position - 1], std::nullopt});
          break;
        case MoveKind::model: {
          const auto& label = net_.transition(node.transition).label;
          alignment.moves.push_back(Move{MoveKind::model, label.value_or(""), node.transition});
          break;
        }
      }
    }
    std::reverse(alignment.moves.begin(), alignment.moves.end());
    return alignment;
  }

  const Word& trace_;
  const PetriNet& net_;
  CostScheme scheme_;
  SearchLimits limits_;
  std::size_t places_;
  Marking initial_;
  std::vector<int> transition_label_;  // -1 for silent
  std::vector<int> event_label_;       // -2 when no transition carries the label
  std::vector<std::uint32_t> remaining_unmatched_;
  std::vector<std::vector<Token>> finals_;

  std::vector<Token> arena_;
  std::vector<Node> nodes_;
  std::unordered_set<std::uint32_t, StateHash, StateEqual> index_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open_;
  std::uint64_t sequence_ = 0;
};

Fraction one_minus_ratio(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) return Fraction(1);
  return Fraction(1) - Fraction(numerator, denominator);
}

}  // namespace

void CostScheme::validate() const {
  if (log_move < 0 || visible_model_move < 0 || tau_model_move < 0 || sync_move < 0) {
    throw std::invalid_argument("move costs must be non-negative");
  }
  if (sync_move != 0 || tau_model_move != 0) throw std::invalid_argument("sync and tau moves must cost 0");
}

Alignment optimal_alignment(const Word& trace, const AcceptingPetriNet& apn, const CostScheme& scheme,
                            const SearchLimits& limits) {
  return ProductSearch(trace, apn, scheme, limits).run();
}

Alignment optimal_alignment(const Trace& trace, const AcceptingPetriNet& apn, const CostScheme& scheme,
                            const SearchLimits& limits) {
  return optimal_alignment(trace.activities(), apn, scheme, limits);
}

std::int64_t cheapest_model_run(const AcceptingPetriNet& apn, const CostScheme& scheme, const SearchLimits& limits) {
  return optimal_alignment(Word{}, apn, scheme, limits).cost;
}

FitnessReport fitness(const Alignment& alignment, std::size_t trace_length, std::int64_t model_run_cost,
                      const CostScheme& scheme) {
  if (!alignment.complete) throw ContractViolation("fitness needs a complete alignment");
  std::int64_t log_cost = 0;
  std::int64_t model_cost = 0;
  std::int64_t synchronous = 0;
  for (const auto& move : alignment.moves) {
    switch (move.kind) {
      case MoveKind::synchronous: ++synchronous; break;
      case MoveKind::log: log_cost += scheme.log_move; break;
      case MoveKind::model:
        model_cost += move.activity.empty() ? scheme.tau_model_move : scheme.visible_model_move;
        break;
    }
  }
  const std::int64_t all_log_moves = static_cast<std::int64_t>(trace_length) * scheme.log_move;
  FitnessReport report;
  report.raw_cost = alignment.cost;
  report.trace_fitness = one_minus_ratio(alignment.cost, all_log_moves + model_run_cost);
  report.move_log_fitness = one_minus_ratio(log_cost, all_log_moves);
  report.move_model_fitness = one_minus_ratio(model_cost, synchronous + model_cost);
  return report;
}

FitnessReport fitness(const Alignment& alignment, const Trace& trace, const AcceptingPetriNet& apn,
                      const CostScheme& scheme, const SearchLimits& limits) {
  return fitness(alignment, trace.events.size(), cheapest_model_run(apn, scheme, limits), scheme);
}

LogReplay replay_log(const EventLog& log, const AcceptingPetriNet& apn, const CostScheme& scheme,
                     const SearchLimits& limits, unsigned threads) {
  struct Outcome {
    std::optional<Alignment> alignment;
    std::optional<FitnessReport> report;
    std::string error;
  };

  std::map<Word, std::size_t> variant_index;
  std::vector<const Word*> distinct;
  std::vector<std::size_t> trace_variant;
  std::vector<Word> words;
  words.reserve(log.size());
  for (const auto& trace : log.traces()) words.push_back(trace.activities());
  for (const auto& word : words) {
    auto [it, inserted] = variant_index.try_emplace(word, distinct.size());
    if (inserted) distinct.push_back(&it->first);
    trace_variant.push_back(it->second);
  }

  std::vector<Outcome> outcomes(distinct.size());
  std::optional<std::int64_t> model_run;
  std::string model_run_error;
  if (!distinct.empty()) {
    try {
      model_run = cheapest_model_run(apn, scheme, limits);
    } catch (const std::exception& err) {
      model_run_error = err.what();
    }
  }

  auto work = [&](std::size_t v) {
    Outcome& out = outcomes[v];
    if (!model_run) {
      out.error = model_run_error;
      return;
    }
    try {
      out.alignment = optimal_alignment(*distinct[v], apn, scheme, limits);
      out.report = fitness(*out.alignment, distinct[v]->size(), *model_run, scheme);
    } catch (const std::exception& err) {
      out.alignment.reset();
      out.report.reset();
      out.error = err.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, distinct.size()));
  if (threads <= 1) {
    for (std::size_t v = 0; v < distinct.size(); ++v) work(v);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (std::size_t v = next++; v < distinct.size(); v = next++) work(v);
      });
    }
  }

  LogReplay replay;
  Fraction trace_sum, move_model_sum, move_log_sum;
  for (std::size_t i = 0; i < log.size(); ++i) {
    const Outcome& out = outcomes[trace_variant[i]];
    replay.traces.push_back(TraceReplay{log.traces()[i].case_id, out.alignment, out.report, out.error});
    if (out.report) {
      trace_sum += out.report->trace_fitness;
      move_model_sum += out.report->move_model_fitness;
      move_log_sum += out.report->move_log_fitness;
    }
  }
  if (!log.empty()) {
    const Fraction n(static_cast<std::int64_t>(log.size()));
    replay.global = GlobalStatistics{trace_sum / n, move_model_sum / n, move_log_sum / n};
  }
  return replay;
}

}  // namespace procmine
