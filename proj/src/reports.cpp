#include "procmine/reports.hpp"

#include <sstream>

#include "json.hpp"

namespace procmine {

namespace {

using boost::multiprecision::cpp_int;

// Scaled numerator rounded half away from zero.
cpp_int scaled(const Fraction& value, int digits, bool& negative) {
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  negative = num < 0;
  if (negative) num = -num;
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  return (num * scale * 2 + den) / (den * 2);
}

std::string render(const cpp_int& units, int digits, bool negative, bool trim) {
  std::string s = units.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    if (trim) {
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
    }
  }
  if (negative && s.find_first_not_of("0.") != std::string::npos) s.insert(0, "-");
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string single_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

double to_double(const Fraction& f) { return f.convert_to<double>(); }

nlohmann::ordered_json fitness_json(const FitnessReport& r) {
  nlohmann::ordered_json j;
  j["move_model_fitness"] = to_double(r.move_model_fitness);
  j["trace_fitness"] = to_double(r.trace_fitness);
  j["move_log_fitness"] = to_double(r.move_log_fitness);
  j["raw_cost"] = r.raw_cost;
  return j;
}

nlohmann::ordered_json global_json(const GlobalStatistics& g) {
  nlohmann::ordered_json j;
  j["move_model_fitness"] = to_double(g.move_model_fitness);
  j["trace_fitness"] = to_double(g.trace_fitness);
  j["move_log_fitness"] = to_double(g.move_log_fitness);
  return j;
}

std::string optional_count(const std::optional<std::size_t>& v, const ComplexityReport& r) {
  if (v) return std::to_string(*v);
  return r.unbounded ? "*" : "?";
}

}  // namespace

std::string format_fraction(const Fraction& value, int digits) {
  bool negative = false;
  auto units = scaled(value, digits, negative);
  return render(units, digits, negative, true);
}

std::string format_fixed(const Fraction& value, int digits) {
  bool negative = false;
  auto units = scaled(value, digits, negative);
  return render(units, digits, negative, false);
}

void write_replay_csv(const LogReplay& replay, std::ostream& out) {
  out << "case_id,move_model_fitness,trace_fitness,move_log_fitness,raw_cost,classification,error\n";
  for (const auto& row : replay.traces) {
    out << csv_field(row.case_id) << ',';
    if (row.report) {
      const auto& r = *row.report;
      out << format_fraction(r.move_model_fitness) << ',' << format_fraction(r.trace_fitness) << ','
          << format_fraction(r.move_log_fitness) << ',' << r.raw_cost << ','
          << verdict_symbol(classify_trace(r)) << ",\n";
    } else {
      out << ",,,," << verdict_symbol(Verdict::non_fitting) << ',' << csv_field(single_line(row.error)) << '\n';
    }
  }
  if (!replay.traces.empty()) {
    const auto& g = replay.global;
    out << "# global," << format_fraction(g.move_model_fitness) << ',' << format_fraction(g.trace_fitness) << ','
        << format_fraction(g.move_log_fitness) << ",,,\n";
  }
}

void write_replay_json(const LogReplay& replay, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["traces"] = nlohmann::ordered_json::array();
  for (const auto& row : replay.traces) {
    nlohmann::ordered_json j;
    j["case_id"] = row.case_id;
    if (row.report) {
      j.update(fitness_json(*row.report));
      j["classification"] = verdict_symbol(classify_trace(*row.report));
    } else {
      j["classification"] = verdict_symbol(Verdict::non_fitting);
      j["error"] = row.error;
    }
    doc["traces"].push_back(std::move(j));
  }
  doc["global"] = global_json(replay.global);
  out << doc.dump(2) << '\n';
}

void write_verdicts_csv(const std::vector<TraceVerdict>& verdicts, std::ostream& out) {
  out << "case_id,classification\n";
  for (const auto& v : verdicts) out << csv_field(v.case_id) << ',' << verdict_symbol(v.verdict) << '\n';
}

void write_verdicts_json(const std::vector<TraceVerdict>& verdicts, const ConfusionMatrix* matrix, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["verdicts"] = nlohmann::ordered_json::array();
  for (const auto& v : verdicts) {
    nlohmann::ordered_json j;
    j["case_id"] = v.case_id;
    j["classification"] = verdict_symbol(v.verdict);
    if (!v.error.empty()) j["error"] = v.error;
    doc["verdicts"].push_back(std::move(j));
  }
  if (matrix) {
    nlohmann::ordered_json m;
    m["True Positive"] = matrix->tp;
    m["False Positive"] = matrix->fp;
    m["True Negative"] = matrix->tn;
    m["False Negative"] = matrix->fn;
    m["Correctly Classified"] = matrix->correctly_classified();
    doc["confusion"] = std::move(m);
  }
  out << doc.dump(2) << '\n';
}

void write_confusion_csv(const ConfusionMatrix& matrix, std::ostream& out) {
  out << "True Positive," << matrix.tp << '\n'
      << "False Positive," << matrix.fp << '\n'
      << "True Negative," << matrix.tn << '\n'
      << "False Negative," << matrix.fn << '\n'
      << "Correctly Classified," << matrix.correctly_classified() << '\n';
}

void write_metrics_csv(const std::vector<NamedReport>& rows, std::ostream& out) {
  out << "Model,Density,ECaM,ECyM,|E|,|V|,|A|,|P|,|T|,note\n";
  for (const auto& [name, r] : rows) {
    std::string note;
    if (r.unbounded) note = "*";
    if (r.cap_exceeded) note = "state cap exceeded";
    if (!r.is_wf_net) note += note.empty() ? "**" : " **";
    out << csv_field(name) << ',' << format_fixed(r.density, 4) << ',' << r.ecam << ','
        << optional_count(r.ecym, r) << ',' << optional_count(r.rg_edges, r) << ','
        << optional_count(r.rg_vertices, r) << ',' << r.arcs << ',' << r.places << ',' << r.transitions << ','
        << csv_field(note) << '\n';
  }
}

void write_metrics_json(const std::vector<NamedReport>& rows, std::ostream& out) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& [name, r] : rows) {
    nlohmann::ordered_json j;
    j["model"] = name;
    j["density"] = format_fixed(r.density, 4);
    j["ecam"] = r.ecam;
    auto opt = [](const std::optional<std::size_t>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
    j["ecym"] = opt(r.ecym);
    j["rg_edges"] = opt(r.rg_edges);
    j["rg_vertices"] = opt(r.rg_vertices);
    j["arcs"] = r.arcs;
    j["places"] = r.places;
    j["transitions"] = r.transitions;
    j["unbounded"] = r.unbounded;
    j["cap_exceeded"] = r.cap_exceeded;
    j["is_wf_net"] = r.is_wf_net;
    if (!r.is_wf_net) j["wf_diagnosis"] = r.wf_diagnosis;
    doc.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace procmine
