#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "procmine/process_tree.hpp"
#include "procmine/reachability.hpp"

using namespace procmine;
using oracle::Language;

TEST_CASE("parse and print") {
  auto t = ProcessTree::parse("seq(a, xor(b, tau), loop(c, d))");
  CHECK(t.op() == ProcessTree::Operator::sequence);
  CHECK(t.children().size() == 3);
  CHECK(t.to_string() == "seq(a, xor(b, tau), loop(c, d))");
  CHECK(t.depth() == 3);
  CHECK(t.activities() == std::set<std::string>{"a", "b", "c", "d"});
  CHECK(ProcessTree::parse(t.to_string()) == t);

  auto quoted = ProcessTree::parse(R"(and("register request", "tau", "say \"hi\""))");
  CHECK(quoted.children()[1].op() == ProcessTree::Operator::activity);
  CHECK(quoted.children()[1].label() == "tau");
  CHECK(ProcessTree::parse(quoted.to_string()) == quoted);

  CHECK_THROWS(ProcessTree::parse("seq(a)"));
  CHECK_THROWS(ProcessTree::parse("seq(a, b"));
  CHECK_THROWS(ProcessTree::parse("foo(a, b)"));
  CHECK_THROWS(ProcessTree::parse("a b"));
  CHECK_THROWS_AS(ProcessTree::loop({ProcessTree::activity("a")}), std::invalid_argument);
}

TEST_CASE("single activity net") {
  auto apn = to_petri_net(ProcessTree::activity("a"));
  CHECK(apn.net.place_count() == 2);
  CHECK(apn.net.transition_count() == 1);
  CHECK(is_workflow_net(apn.net).ok);
  CHECK(apn.net.place(0).id == "source");
  CHECK(oracle::net_language(apn, 8) == Language{{"a"}});
}

TEST_CASE("small tree languages") {
  CHECK(oracle::net_language(to_petri_net(ProcessTree::parse("seq(a, b)")), 8) == Language{{"a", "b"}});
  CHECK(oracle::net_language(to_petri_net(ProcessTree::parse("xor(a, tau)")), 8) == Language{{"a"}, {}});
  CHECK(oracle::net_language(to_petri_net(ProcessTree::parse("and(a, b)")), 8) == Language{{"a", "b"}, {"b", "a"}});
  CHECK(oracle::net_language(to_petri_net(ProcessTree::parse("loop(a, b)")), 5) ==
        Language{{"a"}, {"a", "b", "a"}, {"a", "b", "a", "b", "a"}});
  CHECK(oracle::net_language(to_petri_net(ProcessTree::tau()), 8) == Language{{}});
}

TEST_CASE("net language equals tree language on random trees") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto tree = random_tree(5, 4, seed);
    CAPTURE(tree.to_string());
    auto apn = to_petri_net(tree);
    CHECK(is_workflow_net(apn.net).ok);
    CHECK(std::holds_alternative<ReachabilityGraph>(reachability_graph(apn)));
    CHECK(oracle::net_language(apn, 6) == oracle::tree_language(tree, 6));
  }
  for (const char* text : {"loop(tau, a, b)", "loop(xor(a, tau), b)", "and(loop(a, tau), xor(b, c), tau)",
                           "seq(loop(tau, a), loop(tau, b))", "xor(and(a, b), seq(c, tau))"}) {
    auto tree = ProcessTree::parse(text);
    CAPTURE(text);
    CHECK(oracle::net_language(to_petri_net(tree), 6) == oracle::tree_language(tree, 6));
  }
}

TEST_CASE("simulate") {
  auto a = ProcessTree::activity("a");
  auto log = simulate(a, 3, 2, 1);
  REQUIRE(log.size() == 3);
  for (const auto& t : log.traces()) CHECK(t.activities() == Word{"a"});

  auto choice = simulate(ProcessTree::parse("xor(a, b)"), 200, 2, 5);
  auto v = variants(choice);
  CHECK(v.size() == 2);
  CHECK(v[Word{"a"}] + v[Word{"b"}] == 200);

  auto seq = simulate(ProcessTree::parse("seq(a, b)"), 20, 2, 9);
  for (const auto& t : seq.traces()) {
    CHECK(t.activities() == Word{"a", "b"});
  }
}

TEST_CASE("simulated traces belong to the tree language and respect max_loop") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto tree = random_tree(6, 4, seed);
    auto language = oracle::tree_language(tree, 12);
    auto log = simulate(tree, 40, 1, seed);
    CAPTURE(tree.to_string());
    for (const auto& t : log.traces()) {
      auto w = t.activities();
      if (w.size() <= 12) CHECK(language.contains(w));
    }
  }
  auto bounded = simulate(ProcessTree::parse("loop(a, b)"), 100, 2, 3);
  for (const auto& t : bounded.traces()) CHECK(t.events.size() <= 5);
  CHECK(variants(bounded).size() == 3);
}

TEST_CASE("simulate is deterministic for a seed") {
  auto tree = ProcessTree::parse("and(loop(a, b), xor(c, d, tau), e)");
  CHECK(simulate(tree, 50, 3, 42) == simulate(tree, 50, 3, 42));
  CHECK_FALSE(simulate(tree, 50, 3, 42) == simulate(tree, 50, 3, 43));
}

TEST_CASE("random trees") {
  CHECK(random_tree(5, 1, 3).is_leaf());
  CHECK(random_tree(5, 1, 3).op() == ProcessTree::Operator::activity);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto t = random_tree(5, 4, seed);
    CHECK(t == random_tree(5, 4, seed));
    CHECK(t.depth() <= 4);
    CHECK(t.activities().size() <= 5);
    // Labels are unique: the number of activity leaves equals the label count.
    std::size_t leaves = 0;
    std::vector<const ProcessTree*> stack{&t};
    while (!stack.empty()) {
      const auto* n = stack.back();
      stack.pop_back();
      if (n->op() == ProcessTree::Operator::activity) ++leaves;
      for (const auto& c : n->children()) stack.push_back(&c);
    }
    CHECK(leaves == t.activities().size());
  }
  CHECK(random_tree(30, 5, 1).activities().size() <= 30);
}
