#include "procmine/classification.hpp"

#include <stdexcept>
#include <tuple>

namespace procmine {

const char* verdict_symbol(Verdict v) { return v == Verdict::fitting ? "+" : "-"; }

Verdict classify_trace(const FitnessReport& report) {
  return report.perfect() ? Verdict::fitting : Verdict::non_fitting;
}

std::vector<TraceVerdict> classify_replay(const LogReplay& replay) {
  std::vector<TraceVerdict> out;
  out.reserve(replay.traces.size());
  for (const auto& row : replay.traces) {
    TraceVerdict v{row.case_id, Verdict::non_fitting, row.report, row.error};
    if (row.report) v.verdict = classify_trace(*row.report);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<TraceVerdict> classify_log(const EventLog& log, const AcceptingPetriNet& apn, const CostScheme& scheme,
                                       const SearchLimits& limits, unsigned threads) {
  return classify_replay(replay_log(log, apn, scheme, limits, threads));
}

RediscoverabilityResult check_rediscoverability(const EventLog& training_log, const AcceptingPetriNet& apn,
                                                const SearchLimits& limits, unsigned threads) {
  auto replay = replay_log(training_log, apn, CostScheme{}, limits, threads);
  return RediscoverabilityResult{replay.global.perfect(), replay.global};
}

ConfusionMatrix confusion(const std::vector<Verdict>& verdicts, const std::vector<bool>& truth) {
  if (verdicts.size() != truth.size()) {
    throw std::invalid_argument("got " + std::to_string(verdicts.size()) + " verdicts but " +
                                std::to_string(truth.size()) + " truth labels");
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const bool fitting = verdicts[i] == Verdict::fitting;
    if (fitting && truth[i]) ++m.tp;
    else if (fitting) ++m.fp;
    else if (truth[i]) ++m.fn;
    else ++m.tn;
  }
  return m;
}

ConfusionMatrix confusion(const std::vector<TraceVerdict>& verdicts, const std::vector<bool>& truth) {
  std::vector<Verdict> plain;
  plain.reserve(verdicts.size());
  for (const auto& v : verdicts) plain.push_back(v.verdict);
  return confusion(plain, truth);
}

std::size_t select_model(const std::vector<ModelCandidate>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("no candidate models");
  std::size_t best = 0;
  auto better = [](const ModelCandidate& a, const ModelCandidate& b) {
    const auto ca = a.confusion.correctly_classified();
    const auto cb = b.confusion.correctly_classified();
    if (ca != cb) return ca > cb;
    return std::tie(a.complexity.ecam, a.complexity.density, a.complexity.arcs) <
           std::tie(b.complexity.ecam, b.complexity.density, b.complexity.arcs);
  };
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (better(candidates[i], candidates[best])) best = i;
  }
  return best;
}

std::vector<std::size_t> select_models(const std::vector<std::vector<ModelCandidate>>& per_log) {
  std::vector<std::size_t> chosen;
  chosen.reserve(per_log.size());
  for (const auto& candidates : per_log) chosen.push_back(select_model(candidates));
  return chosen;
}

}  // namespace procmine
