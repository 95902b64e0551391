#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace procmine {

// Activity sequence of a trace; the unit of discovery and replay.
using Word = std::vector<std::string>;

// Opaque XES attribute kept for round-tripping. `type` is the XES element
// name (string, date, int, ...); values are never interpreted.
struct Attribute {
  std::string key;
  std::string type;
  std::string value;

  bool operator==(const Attribute&) const = default;
};

struct Event {
  std::string activity;
  std::vector<Attribute> attributes;

  bool operator==(const Event&) const = default;
};

struct Trace {
  std::string case_id;
  std::vector<Event> events;

  Word activities() const;
  bool operator==(const Trace&) const = default;
};

// Immutable once built. The alphabet is the exact set of activity labels.
class EventLog {
 public:
  EventLog() = default;
  // Throws std::invalid_argument if an event has an empty activity.
  explicit EventLog(std::vector<Trace> traces);

  // Case ids are "1", "2", ... in order.
  static EventLog from_words(const std::vector<Word>& words);

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  const std::set<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return traces_.size(); }
  bool empty() const noexcept { return traces_.empty(); }

  bool operator==(const EventLog& other) const { return traces_ == other.traces_; }

 private:
  std::vector<Trace> traces_;
  std::set<std::string> alphabet_;
};

EventLog parse_xes(std::istream& in);
EventLog read_xes(const std::filesystem::path& path);
void write_xes(const EventLog& log, std::ostream& out);

// Removes every event whose activity is not in `keep`. Traces are kept even if emptied.
EventLog project(const EventLog& log, const std::set<std::string>& keep);

std::map<Word, std::size_t> variants(const EventLog& log);

}  // namespace procmine
