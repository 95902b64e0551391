#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "procmine/alignment.hpp"
#include "procmine/classification.hpp"
#include "procmine/complexity.hpp"

namespace procmine {

// Decimal rendering rounded half-up to `digits` places; integers print without a point.
std::string format_fraction(const Fraction& value, int digits = 6);
// Always prints exactly `digits` decimals.
std::string format_fixed(const Fraction& value, int digits);

// case_id,move_model_fitness,trace_fitness,move_log_fitness,raw_cost,classification,error
// followed by a "# global" line unless the log is empty.
void write_replay_csv(const LogReplay& replay, std::ostream& out);
void write_replay_json(const LogReplay& replay, std::ostream& out);

void write_verdicts_csv(const std::vector<TraceVerdict>& verdicts, std::ostream& out);
void write_verdicts_json(const std::vector<TraceVerdict>& verdicts, const ConfusionMatrix* matrix, std::ostream& out);

void write_confusion_csv(const ConfusionMatrix& matrix, std::ostream& out);

using NamedReport = std::pair<std::string, ComplexityReport>;

// Model,Density,ECaM,ECyM,|E|,|V|,|A|,|P|,|T|,note
// "*" marks metrics missing because the state space is unbounded, "?" those
// missing because the state cap was hit; "**" in the note marks a non-WF-net.
void write_metrics_csv(const std::vector<NamedReport>& rows, std::ostream& out);
void write_metrics_json(const std::vector<NamedReport>& rows, std::ostream& out);

}  // namespace procmine
