#include "procmine/event_log.hpp"

#include <fstream>
#include <stdexcept>

#include "procmine/errors.hpp"
#include "procmine/xml.hpp"

namespace procmine {

namespace {

constexpr std::string_view kNameKey = "concept:name";

bool is_attribute_element(const xml::Element& e) {
  return e.attribute("key") != nullptr &&
         (e.name == "string" || e.name == "date" || e.name == "int" || e.name == "float" ||
          e.name == "boolean" || e.name == "id");
}

}  // namespace

Word Trace::activities() const {
  Word word;
  word.reserve(events.size());
  for (const auto& e : events) word.push_back(e.activity);
  return word;
}

EventLog::EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
  for (const auto& trace : traces_) {
    for (const auto& event : trace.events) {
      if (event.activity.empty()) {
        throw std::invalid_argument("trace '" + trace.case_id + "' has an event with an empty activity");
      }
      alphabet_.insert(event.activity);
    }
  }
}

EventLog EventLog::from_words(const std::vector<Word>& words) {
  std::vector<Trace> traces;
  traces.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    Trace trace{std::to_string(i + 1), {}};
    for (const auto& a : words[i]) trace.events.push_back(Event{a, {}});
    traces.push_back(std::move(trace));
  }
  return EventLog(std::move(traces));
}

EventLog parse_xes(std::istream& in) {
  xml::Element root = xml::parse(in);
  if (root.name != "log") {
    throw ParseError("XES root element must be <log>, found <" + root.name + ">", root.line, root.column);
  }
  std::vector<Trace> traces;
  for (const auto& node : root.children) {
    if (node.name != "trace") continue;
    Trace trace;
    bool named = false;
    for (const auto& child : node.children) {
      if (!named && child.name == "string" && child.attribute("key") && *child.attribute("key") == kNameKey) {
        const std::string* v = child.attribute("value");
        trace.case_id = v ? *v : std::string();
        named = true;
      }
    }
    if (!named) trace.case_id = std::to_string(traces.size() + 1);

    for (const auto& child : node.children) {
      if (child.name != "event") continue;
      Event event;
      bool has_name = false;
      for (const auto& attr : child.children) {
        if (!is_attribute_element(attr)) continue;
        const std::string& key = *attr.attribute("key");
        const std::string* value = attr.attribute("value");
        if (!has_name && key == kNameKey && attr.name == "string") {
          event.activity = value ? *value : std::string();
          has_name = true;
        } else {
          event.attributes.push_back(Attribute{key, attr.name, value ? *value : std::string()});
        }
      }
      if (!has_name || event.activity.empty()) {
        throw ParseError("event without a concept:name in trace '" + trace.case_id + "'", child.line,
                         child.column);
      }
      trace.events.push_back(std::move(event));
    }
    traces.push_back(std::move(trace));
  }
  return EventLog(std::move(traces));
}

EventLog read_xes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_xes(in);
}

void write_xes(const EventLog& log, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<log xes.version=\"1.0\" xes.features=\"\">\n";
  out << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
  for (const auto& trace : log.traces()) {
    out << "  <trace>\n";
    out << "    <string key=\"concept:name\" value=\"" << xml::escape(trace.case_id) << "\"/>\n";
    for (const auto& event : trace.events) {
      out << "    <event>\n";
      out << "      <string key=\"concept:name\" value=\"" << xml::escape(event.activity) << "\"/>\n";
      for (const auto& attr : event.attributes) {
        out << "      <" << attr.type << " key=\"" << xml::escape(attr.key) << "\" value=\""
            << xml::escape(attr.value) << "\"/>\n";
      }
      out << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
}

EventLog project(const EventLog& log, const std::set<std::string>& keep) {
  std::vector<Trace> traces;
  traces.reserve(log.size());
  for (const auto& trace : log.traces()) {
    Trace projected{trace.case_id, {}};
    for (const auto& event : trace.events) {
      if (keep.contains(event.activity)) projected.events.push_back(event);
    }
    traces.push_back(std::move(projected));
  }
  return EventLog(std::move(traces));
}

std::map<Word, std::size_t> variants(const EventLog& log) {
  std::map<Word, std::size_t> counts;
  for (const auto& trace : log.traces()) ++counts[trace.activities()];
  return counts;
}

}  // namespace procmine
