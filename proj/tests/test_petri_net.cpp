#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "procmine/errors.hpp"
#include "procmine/petri_net.hpp"
#include "procmine/pnml.hpp"
#include "procmine/process_tree.hpp"
#include "procmine/reachability.hpp"

using namespace procmine;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

AcceptingPetriNet read_net(const std::string& name) {
  std::ifstream in(fixture(name));
  REQUIRE(in);
  return parse_pnml(in);
}

std::string pnml_text(const AcceptingPetriNet& apn) {
  std::ostringstream out;
  write_pnml(apn, out);
  return out.str();
}

AcceptingPetriNet parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_pnml(in);
}

// source -> a -> p -> b -> sink
AcceptingPetriNet seq_ab() {
  AcceptingPetriNet apn;
  auto i = apn.net.add_place("i");
  auto p = apn.net.add_place("p");
  auto o = apn.net.add_place("o");
  auto a = apn.net.add_transition("ta", "a");
  auto b = apn.net.add_transition("tb", "b");
  apn.net.add_input_arc(i, a);
  apn.net.add_output_arc(a, p);
  apn.net.add_input_arc(p, b);
  apn.net.add_output_arc(b, o);
  apn.initial = single_token(apn.net, i);
  apn.finals = {single_token(apn.net, o)};
  return apn;
}

}  // namespace

TEST_CASE("enabled and fire") {
  auto apn = seq_ab();
  CHECK(enabled(apn.net, apn.initial) == std::vector<TransitionIndex>{0});
  Marking m = fire(apn.net, apn.initial, 0);
  CHECK(m == Marking(std::vector<Marking::Count>{0, 1, 0}));
  CHECK(enabled(apn.net, m) == std::vector<TransitionIndex>{1});
  CHECK_THROWS_AS(fire(apn.net, apn.initial, 1), ContractViolation);
  Marking done = fire(apn.net, m, 1);
  CHECK(enabled(apn.net, done).empty());
  CHECK(done.total() == 1);
}

TEST_CASE("net construction rejects duplicates") {
  PetriNet net;
  auto p = net.add_place("x");
  CHECK_THROWS_AS(net.add_transition("x", "a"), std::invalid_argument);
  auto t = net.add_transition("t", std::nullopt);
  CHECK(net.transition(t).silent());
  net.add_input_arc(p, t);
  CHECK_THROWS_AS(net.add_input_arc(p, t), std::invalid_argument);
  CHECK_THROWS_AS(net.add_output_arc(t, 7), std::invalid_argument);
}

TEST_CASE("workflow net diagnosis") {
  CHECK(is_workflow_net(seq_ab().net).ok);
  auto two = read_net("two_sinks.pnml");
  auto check = is_workflow_net(two.net);
  CHECK_FALSE(check.ok);
  CHECK(check.diagnosis == "multiple sinks");

  PetriNet cyclic;
  auto p = cyclic.add_place("p");
  auto t = cyclic.add_transition("t", "a");
  cyclic.add_input_arc(p, t);
  cyclic.add_output_arc(t, p);
  CHECK(is_workflow_net(cyclic).diagnosis == "no source place");

  auto disconnected = seq_ab();
  disconnected.net.add_transition("lonely", "z");
  auto d = is_workflow_net(disconnected.net);
  CHECK_FALSE(d.ok);
  CHECK(d.diagnosis == "node not on path: lonely");
}

TEST_CASE("reachability graph of a sequence") {
  auto result = reachability_graph(seq_ab());
  REQUIRE(std::holds_alternative<ReachabilityGraph>(result));
  const auto& rg = std::get<ReachabilityGraph>(result);
  CHECK(rg.vertex_count() == 3);
  CHECK(rg.edge_count() == 2);
  CHECK(rg.vertices[0] == seq_ab().initial);
}

TEST_CASE("token generator is unbounded") {
  auto result = reachability_graph(read_net("generator.pnml"));
  REQUIRE(std::holds_alternative<Unbounded>(result));
  const auto& witness = std::get<Unbounded>(result);
  CHECK(witness.covering.strictly_covers(witness.ancestor));
}

TEST_CASE("state cap is a distinct failure") {
  // Two independent counters bounded at 4 tokens each: 25 markings.
  AcceptingPetriNet apn;
  for (int k = 0; k < 2; ++k) {
    auto budget = apn.net.add_place("budget" + std::to_string(k));
    auto used = apn.net.add_place("used" + std::to_string(k));
    auto t = apn.net.add_transition("t" + std::to_string(k), "a");
    apn.net.add_input_arc(budget, t);
    apn.net.add_output_arc(t, used);
  }
  apn.initial = Marking(std::vector<Marking::Count>{4, 0, 4, 0});
  apn.finals = {Marking(std::vector<Marking::Count>{0, 4, 0, 4})};
  auto result = reachability_graph(apn);
  REQUIRE(std::holds_alternative<ReachabilityGraph>(result));
  CHECK(std::get<ReachabilityGraph>(result).vertex_count() == 25);
  CHECK_THROWS_AS(reachability_graph(apn, 10), CapExceeded);
}

TEST_CASE("reachability agrees with exhaustive enumeration on random bounded nets") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto apn = oracle::random_conservative_net(rng);
    auto rg = std::get<ReachabilityGraph>(reachability_graph(apn));
    std::set<Marking> seen{apn.initial};
    std::vector<Marking> stack{apn.initial};
    std::size_t edges = 0;
    while (!stack.empty()) {
      Marking m = stack.back();
      stack.pop_back();
      for (auto t : enabled(apn.net, m)) {
        ++edges;
        Marking next = fire(apn.net, m, t);
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
    CHECK(rg.vertex_count() == seen.size());
    CHECK(rg.edge_count() == edges);
  }
}

TEST_CASE("PNML: nested pages, ProM final markings, arcs") {
  auto apn = read_net("seq_ab.pnml");
  CHECK(apn.net.place_count() == 3);
  CHECK(apn.net.transition_count() == 2);
  CHECK(apn.net.arc_count() == 4);
  CHECK(apn.net.place(*apn.net.find_place("n3")).name == "sink");
  CHECK(apn.net.transition(*apn.net.find_transition("n4")).label == std::optional<std::string>("a"));
  REQUIRE(apn.finals.size() == 1);
  CHECK(apn.finals[0] == single_token(apn.net, *apn.net.find_place("n3")));
  CHECK(apn.initial == single_token(apn.net, *apn.net.find_place("n1")));
}

TEST_CASE("PNML: silent transitions and default final marking") {
  auto apn = read_net("loop_tau.pnml");
  CHECK(apn.net.transition(*apn.net.find_transition("back")).silent());
  CHECK(apn.net.transition(*apn.net.find_transition("skip")).silent());
  CHECK_FALSE(apn.net.transition(*apn.net.find_transition("ta")).silent());
  REQUIRE(apn.finals.size() == 1);
  CHECK(apn.finals[0] == single_token(apn.net, *apn.net.find_place("o")));
  CHECK(oracle::net_language(apn, 3) == oracle::Language{{"a"}, {"a", "a"}, {"a", "a", "a"}});
}

TEST_CASE("PNML: errors") {
  CHECK_THROWS_AS(read_net("weighted_arc.pnml"), ParseError);
  CHECK_THROWS_AS(parse_text("<pnml><net id=\"n\"><page id=\"p\"><place id=\"a\"/>"
                             "<arc id=\"x\" source=\"a\" target=\"nowhere\"/></page></net></pnml>"),
                  ParseError);
  CHECK_THROWS_AS(parse_text("<pnml><net"), ParseError);
  CHECK_THROWS_AS(parse_text("<pnml><net id=\"n\"><page id=\"p\"><place id=\"a\"/><place id=\"a\"/></page></net></pnml>"),
                  ParseError);
}

TEST_CASE("PNML write then parse is the identity on fixtures and generated nets") {
  std::vector<AcceptingPetriNet> nets;
  for (const char* name : {"seq_ab.pnml", "loop_tau.pnml", "generator.pnml", "two_sinks.pnml"}) {
    nets.push_back(read_net(name));
  }
  nets.push_back(seq_ab());
  nets.push_back(to_petri_net(ProcessTree::parse("seq(a, and(b, c), loop(d, tau), xor(e, tau))")));
  for (const auto& apn : nets) {
    std::string once = pnml_text(apn);
    auto again = parse_text(once);
    CHECK(again == apn);
    CHECK(pnml_text(again) == once);
  }
}

TEST_CASE("unpacked net plus sidecar restores the accepting net") {
  auto apn = read_net("two_sinks.pnml");
  auto unpacked = unpack(apn);
  std::ostringstream pnml, json;
  write_pnml(unpacked.net, unpacked.initial, pnml);
  write_finals_json(unpacked.net, unpacked.finals, json);
  CHECK(pnml.str().find("finalmarkings") == std::string::npos);

  auto plain = parse_text(pnml.str());
  std::istringstream side(json.str());
  plain.finals = parse_finals_json(plain.net, side);
  CHECK(plain == apn);
  CHECK(repack(unpacked) == apn);

  std::istringstream bad(R"({"finals": [[["nope", 1]]]})");
  CHECK_THROWS_AS(parse_finals_json(plain.net, bad), ParseError);
}
