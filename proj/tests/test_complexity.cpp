#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "procmine/complexity.hpp"
#include "procmine/pnml.hpp"
#include "procmine/process_tree.hpp"
#include "procmine/reports.hpp"

using namespace procmine;

namespace {

AcceptingPetriNet read_net(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  return parse_pnml(in);
}

// Net with the given counts: arcs are spread over distinct place/transition pairs.
PetriNet sized_net(std::size_t arcs, std::size_t places, std::size_t transitions) {
  PetriNet net;
  for (std::size_t p = 0; p < places; ++p) net.add_place("p" + std::to_string(p));
  for (std::size_t t = 0; t < transitions; ++t) net.add_transition("t" + std::to_string(t), "x");
  std::size_t added = 0;
  for (std::size_t k = 0; added < arcs; ++k) {
    auto p = static_cast<PlaceIndex>(k % places);
    auto t = static_cast<TransitionIndex>((k / places) % transitions);
    if (k / (places * transitions) == 0) net.add_input_arc(p, t);
    else net.add_output_arc(t, p);
    ++added;
  }
  return net;
}

using Edge = ReachabilityGraph::Edge;

ReachabilityGraph graph(std::size_t vertices, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  ReachabilityGraph rg;
  rg.vertices.resize(vertices);
  for (auto [a, b] : edges) rg.edges.push_back(Edge{a, 0, b});
  return rg;
}

}  // namespace

TEST_CASE("density matches printed values") {
  CHECK(format_fixed(density(sized_net(72, 31, 30)), 4) == "0.0387");
  CHECK(format_fixed(density(sized_net(70, 18, 33)), 4) == "0.0589");
  CHECK(format_fixed(density(sized_net(62, 13, 30)), 4) == "0.0795");
  CHECK(format_fixed(density(sized_net(78, 27, 20)), 4) == "0.0722");
  CHECK(density(sized_net(4, 3, 2)) == Fraction(1, 3));
  CHECK_THROWS_AS(density(PetriNet{}), std::invalid_argument);
}

TEST_CASE("ECaM") {
  // i -> t -> o : one place with one consumer
  auto seq = to_petri_net(ProcessTree::parse("a"));
  CHECK(ecam(seq.net) == 1);

  PetriNet split;
  auto p = split.add_place("p");
  auto x = split.add_place("x");
  auto y = split.add_place("y");
  auto a = split.add_transition("a", "a");
  auto b = split.add_transition("b", "b");
  split.add_input_arc(p, a);
  split.add_input_arc(p, b);
  split.add_output_arc(a, x);
  split.add_output_arc(b, y);
  CHECK(ecam(split) == 2);
}

TEST_CASE("ECaM counts distinct postsets per place") {
  PetriNet same;
  auto p = same.add_place("p");
  auto x = same.add_place("x");
  auto a = same.add_transition("a", "a");
  auto b = same.add_transition("b", "b");
  same.add_input_arc(p, a);
  same.add_input_arc(p, b);
  same.add_output_arc(a, x);
  same.add_output_arc(b, x);
  CHECK(ecam(same) == 1);

  // relabeling does not change the metric
  PetriNet relabeled;
  p = relabeled.add_place("p");
  x = relabeled.add_place("x");
  a = relabeled.add_transition("a", "zz");
  b = relabeled.add_transition("b", std::nullopt);
  relabeled.add_input_arc(p, a);
  relabeled.add_input_arc(p, b);
  relabeled.add_output_arc(a, x);
  relabeled.add_output_arc(b, x);
  CHECK(ecam(relabeled) == ecam(same));
}

TEST_CASE("ECyM on small graphs") {
  CHECK(ecym(graph(3, {{0, 1}, {1, 2}})) == 2);
  CHECK(ecym(graph(1, {{0, 0}})) == 1);
  CHECK(ecym(graph(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}})) == 2);
  CHECK(ecym(graph(0, {})) == 0);
}

TEST_CASE("SCCs agree with the transitive-closure oracle") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<std::uint32_t> nv(1, 12);
    const std::uint32_t n = nv(rng);
    std::uniform_int_distribution<std::uint32_t> v(0, n - 1), ne(0, 3 * n);
    std::vector<Edge> edges;
    for (std::uint32_t k = ne(rng); k > 0; --k) edges.push_back(Edge{v(rng), 0, v(rng)});
    std::size_t count = 0;
    auto comp = strongly_connected_components(n, edges, &count);
    CHECK(count == oracle::brute_force_scc_count(n, edges));
    for (const auto& e : edges) {
      // an edge inside a component never points "backwards" to a later-finished one
      CHECK(comp[e.from] >= comp[e.to]);
    }
  }
}

TEST_CASE("deep chains do not overflow the stack") {
  ReachabilityGraph rg;
  const std::uint32_t n = 500000;
  rg.vertices.resize(n);
  for (std::uint32_t k = 0; k + 1 < n; ++k) rg.edges.push_back(Edge{k, 0, k + 1});
  CHECK(ecym(rg) == n - 1);
}

TEST_CASE("ECyM equals |E| on acyclic reachability graphs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto apn = oracle::random_forward_net(rng);
    auto rg = std::get<ReachabilityGraph>(reachability_graph(apn));
    CHECK(ecym(rg) == rg.edge_count());
  }
}

TEST_CASE("full report: sequence, generator, two sinks") {
  auto seq = complexity_report(to_petri_net(ProcessTree::parse("seq(a, b)")));
  CHECK(seq.places == 3);
  CHECK(seq.transitions == 2);
  CHECK(seq.arcs == 4);
  CHECK(seq.density == Fraction(4, 12));
  CHECK(seq.rg_vertices == std::optional<std::size_t>(3));
  CHECK(seq.rg_edges == std::optional<std::size_t>(2));
  CHECK(seq.ecym == std::optional<std::size_t>(2));
  CHECK_FALSE(seq.unbounded);
  CHECK(seq.is_wf_net);

  auto gen = complexity_report(read_net("generator.pnml"));
  CHECK(gen.unbounded);
  CHECK_FALSE(gen.ecym);
  CHECK_FALSE(gen.rg_edges);
  CHECK_FALSE(gen.rg_vertices);
  CHECK_FALSE(gen.cap_exceeded);

  auto two = complexity_report(read_net("two_sinks.pnml"));
  CHECK_FALSE(two.is_wf_net);
  CHECK(two.ecym);
  CHECK(two.arcs == 4);

  auto capped = complexity_report(to_petri_net(ProcessTree::parse("and(a, b, c, d)")), 5);
  CHECK(capped.cap_exceeded);
  CHECK_FALSE(capped.unbounded);
  CHECK_FALSE(capped.ecym);
}

TEST_CASE("metrics CSV notation") {
  std::vector<NamedReport> rows{
      {"seq", complexity_report(to_petri_net(ProcessTree::parse("seq(a, b)")))},
      {"gen", complexity_report(read_net("generator.pnml"))},
      {"two", complexity_report(read_net("two_sinks.pnml"))},
  };
  std::ostringstream out;
  write_metrics_csv(rows, out);
  CHECK(out.str() ==
        "Model,Density,ECaM,ECyM,|E|,|V|,|A|,|P|,|T|,note\n"
        "seq,0.3333,2,2,2,3,4,3,2,\n"
        "gen,0.3889,3,*,*,*,7,3,3,*\n"
        "two,0.3333,2,2,2,3,4,3,2,**\n");
}

TEST_CASE("fraction formatting") {
  CHECK(format_fraction(Fraction(2, 3)) == "0.666667");
  CHECK(format_fraction(Fraction(1)) == "1");
  CHECK(format_fraction(Fraction(3, 4)) == "0.75");
  CHECK(format_fraction(Fraction(0)) == "0");
  CHECK(format_fixed(Fraction(1, 3), 4) == "0.3333");
  CHECK(format_fixed(Fraction(34, 1000), 4) == "0.0340");
  CHECK(format_fixed(Fraction(5, 100000), 4) == "0.0001");
}
