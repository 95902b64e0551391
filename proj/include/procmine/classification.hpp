#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "procmine/alignment.hpp"
#include "procmine/complexity.hpp"
#include "procmine/event_log.hpp"
#include "procmine/petri_net.hpp"

namespace procmine {

enum class Verdict { fitting, non_fitting };

// "+" / "-"
const char* verdict_symbol(Verdict v);

struct TraceVerdict {
  std::string case_id;
  Verdict verdict = Verdict::non_fitting;
  std::optional<FitnessReport> report;  // absent when replay failed
  std::string error;
};

// Fitting iff all three values are exactly 1.
Verdict classify_trace(const FitnessReport& report);

std::vector<TraceVerdict> classify_replay(const LogReplay& replay);
std::vector<TraceVerdict> classify_log(const EventLog& log, const AcceptingPetriNet& apn, const CostScheme& scheme = {},
                                       const SearchLimits& limits = {}, unsigned threads = 0);

struct RediscoverabilityResult {
  bool rediscoverable = false;
  GlobalStatistics global;

  explicit operator bool() const noexcept { return rediscoverable; }
};

RediscoverabilityResult check_rediscoverability(const EventLog& training_log, const AcceptingPetriNet& apn,
                                                const SearchLimits& limits = {}, unsigned threads = 0);

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t correctly_classified() const noexcept { return tp + tn; }
  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// truth[i] is true when trace i belongs to the process. Throws std::invalid_argument on a length mismatch.
ConfusionMatrix confusion(const std::vector<Verdict>& verdicts, const std::vector<bool>& truth);
ConfusionMatrix confusion(const std::vector<TraceVerdict>& verdicts, const std::vector<bool>& truth);

struct ModelCandidate {
  std::string name;
  ConfusionMatrix confusion;
  ComplexityReport complexity;
};

// Index of the chosen candidate: most correctly classified traces, then the
// lowest (ECaM, density, |A|), then the earliest. Throws std::invalid_argument if empty.
std::size_t select_model(const std::vector<ModelCandidate>& candidates);
std::vector<std::size_t> select_models(const std::vector<std::vector<ModelCandidate>>& per_log);

}  // namespace procmine
