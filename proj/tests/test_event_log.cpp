#include <fstream>
#include <sstream>

#include "doctest.h"
#include "procmine/errors.hpp"
#include "procmine/event_log.hpp"

using namespace procmine;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

EventLog parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse_xes(in);
}

std::string to_string(const EventLog& log) {
  std::ostringstream out;
  write_xes(log, out);
  return out.str();
}

}  // namespace

TEST_CASE("running example parses with activities and preserved attributes") {
  EventLog log = read_xes(fixture("running_example.xes"));
  REQUIRE(log.size() == 6);
  CHECK(log.traces()[0].case_id == "case 1");
  CHECK(log.traces()[0].activities() ==
        Word{"register request", "examine thoroughly", "check ticket", "decide", "reject request"});
  CHECK(log.traces()[2].events.size() == 9);
  CHECK(log.alphabet().size() == 8);
  const auto& first = log.traces()[0].events[0];
  REQUIRE(first.attributes.size() == 2);
  CHECK(first.attributes[1] == Attribute{"time:timestamp", "date", "2010-12-30T11:02:00.000+01:00"});
  CHECK(log.traces()[1].events[1].attributes[0] == Attribute{"cost", "float", "100.5"});
}

TEST_CASE("escapes, positional case ids and empty traces") {
  EventLog log = read_xes(fixture("escapes.xes"));
  REQUIRE(log.size() == 3);
  CHECK(log.traces()[0].case_id == "A&B <1>");
  CHECK(log.traces()[0].activities() == Word{"say \"hi\"", "caf\xC3\xA9"});
  CHECK(log.traces()[1].case_id == "2");
  CHECK(log.traces()[2].events.empty());
}

TEST_CASE("write then parse is the identity on every fixture log") {
  for (const char* name : {"running_example.xes", "escapes.xes", "empty.xes"}) {
    CAPTURE(name);
    EventLog log = read_xes(fixture(name));
    std::string once = to_string(log);
    EventLog again = parse_string(once);
    CHECK(again == log);
    CHECK(to_string(again) == once);
  }
}

TEST_CASE("empty log") {
  EventLog log = read_xes(fixture("empty.xes"));
  CHECK(log.empty());
  CHECK(log.alphabet().empty());
}

TEST_CASE("event without a string concept:name is rejected, naming the trace") {
  try {
    read_xes(fixture("missing_name.xes"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("c1") != std::string::npos);
    CHECK(e.line() > 0);
  }
  CHECK_THROWS_AS(parse_string(R"(<log><trace><event><int key="concept:name" value="3"/></event></trace></log>)"),
                  ParseError);
}

TEST_CASE("malformed XML reports a position") {
  try {
    read_xes(fixture("malformed.xes"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
  }
  CHECK_THROWS_AS(parse_string("<notalog/>"), ParseError);
  CHECK_THROWS_AS(read_xes(fixture("does_not_exist.xes")), std::runtime_error);
}

TEST_CASE("from_words and variants") {
  EventLog log = EventLog::from_words({{"a", "b"}, {"a"}, {"a", "b"}, {}});
  CHECK(log.traces()[3].case_id == "4");
  auto v = variants(log);
  CHECK(v.size() == 3);
  CHECK(v[Word{"a", "b"}] == 2);
  CHECK(v[Word{}] == 1);
  std::size_t total = 0;
  for (const auto& [w, c] : v) total += c;
  CHECK(total == log.size());
  CHECK_THROWS_AS(EventLog::from_words({{"a", ""}}), std::invalid_argument);
}

TEST_CASE("projection keeps traces and order") {
  EventLog log = EventLog::from_words({{"a", "b", "c", "b"}, {"c"}, {"a"}});
  EventLog p = project(log, {"b", "c"});
  REQUIRE(p.size() == 3);
  CHECK(p.traces()[0].activities() == Word{"b", "c", "b"});
  CHECK(p.traces()[1].activities() == Word{"c"});
  CHECK(p.traces()[2].activities().empty());
  CHECK(p.traces()[0].case_id == "1");
  CHECK(p.alphabet() == std::set<std::string>{"b", "c"});
  CHECK(project(log, log.alphabet()) == log);
}
