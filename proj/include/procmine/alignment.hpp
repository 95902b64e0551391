#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "procmine/event_log.hpp"
#include "procmine/petri_net.hpp"

namespace procmine {

// Exact rational used for all fitness values.
using Fraction = boost::multiprecision::cpp_rational;

inline constexpr std::uint32_t kTokenCap = 32767;
inline constexpr std::size_t kDefaultSearchBudget = 5'000'000;

struct CostScheme {
  std::int64_t log_move = 1;
  std::int64_t visible_model_move = 1;
  std::int64_t tau_model_move = 0;
  std::int64_t sync_move = 0;

  // Costs must be non-negative; sync and tau moves must be free.
  void validate() const;
};

struct SearchLimits {
  std::size_t max_expanded_states = kDefaultSearchBudget;
  // States with more tokens than this in any place are pruned.
  std::uint32_t token_cap = kTokenCap;
  // Adds the admissible "events with no visible transition of their label" bound.
  bool use_heuristic = false;
};

enum class MoveKind { synchronous, log, model };

struct Move {
  MoveKind kind;
  std::string activity;                     // event label (sync/log) or transition label (model, empty for tau)
  std::optional<TransitionIndex> transition;  // sync/model

  bool operator==(const Move&) const = default;
};

struct Alignment {
  std::vector<Move> moves;
  std::int64_t cost = 0;
  bool complete = false;
  std::size_t expanded_states = 0;
};

// Minimum-cost alignment ending with the whole trace consumed and a final
// marking reached. Throws NoFinalReachable or CapExceeded.
Alignment optimal_alignment(const Word& trace, const AcceptingPetriNet& apn, const CostScheme& scheme = {},
                            const SearchLimits& limits = {});
Alignment optimal_alignment(const Trace& trace, const AcceptingPetriNet& apn, const CostScheme& scheme = {},
                            const SearchLimits& limits = {});

// Cost of the cheapest run from the initial to a final marking.
std::int64_t cheapest_model_run(const AcceptingPetriNet& apn, const CostScheme& scheme = {},
                                const SearchLimits& limits = {});

struct FitnessReport {
  Fraction trace_fitness;
  Fraction move_log_fitness;
  Fraction move_model_fitness;
  std::int64_t raw_cost = 0;

  bool perfect() const { return trace_fitness == 1 && move_log_fitness == 1 && move_model_fitness == 1; }
};

// trace fitness      = 1 - cost / (|trace| * log cost + cheapest model run)
// move-log fitness   = 1 - log-move cost / (|trace| * log cost)
// move-model fitness = 1 - model-move cost / (#sync moves + model-move cost)
// A zero denominator yields 1. Throws ContractViolation for an incomplete alignment.
FitnessReport fitness(const Alignment& alignment, std::size_t trace_length, std::int64_t model_run_cost,
                      const CostScheme& scheme = {});
FitnessReport fitness(const Alignment& alignment, const Trace& trace, const AcceptingPetriNet& apn,
                      const CostScheme& scheme = {}, const SearchLimits& limits = {});

struct TraceReplay {
  std::string case_id;
  std::optional<Alignment> alignment;
  std::optional<FitnessReport> report;
  std::string error;  // set when no report could be produced
};

// Arithmetic means over all traces; a trace that failed to replay counts as 0.
// An empty log has all three statistics equal to 1.
struct GlobalStatistics {
  Fraction trace_fitness{1};
  Fraction move_model_fitness{1};
  Fraction move_log_fitness{1};

  bool perfect() const { return trace_fitness == 1 && move_model_fitness == 1 && move_log_fitness == 1; }
};

struct LogReplay {
  std::vector<TraceReplay> traces;  // in log order
  GlobalStatistics global;
};

// Each distinct activity sequence is aligned once; `threads == 0` uses the
// hardware concurrency. Per-trace failures are recorded, never thrown.
LogReplay replay_log(const EventLog& log, const AcceptingPetriNet& apn, const CostScheme& scheme = {},
                     const SearchLimits& limits = {}, unsigned threads = 0);

}  // namespace procmine
