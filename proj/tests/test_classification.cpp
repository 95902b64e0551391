#include <algorithm>
#include <random>

#include "doctest.h"
#include "procmine/classification.hpp"
#include "procmine/inductive_miner.hpp"
#include "procmine/process_tree.hpp"

using namespace procmine;

namespace {

FitnessReport triple(Fraction trace, Fraction move_log, Fraction move_model, std::int64_t cost) {
  return FitnessReport{trace, move_log, move_model, cost};
}

ComplexityReport complexity(std::size_t ecam, Fraction density, std::size_t arcs) {
  ComplexityReport r;
  r.ecam = ecam;
  r.density = density;
  r.arcs = arcs;
  return r;
}

}  // namespace

TEST_CASE("classification of fitness triples") {
  CHECK(classify_trace(triple(1, 1, 1, 0)) == Verdict::fitting);
  CHECK(classify_trace(triple(Fraction(73, 100), Fraction(73, 100), Fraction(73, 100), 3)) == Verdict::non_fitting);
  CHECK(classify_trace(triple(Fraction(79, 100), Fraction(71, 100), Fraction(92, 100), 4)) == Verdict::non_fitting);
  // no epsilon
  CHECK(classify_trace(triple(Fraction(999999, 1000000), 1, 1, 1)) == Verdict::non_fitting);
  CHECK(std::string(verdict_symbol(Verdict::fitting)) == "+");
  CHECK(std::string(verdict_symbol(Verdict::non_fitting)) == "-");
}

TEST_CASE("classify_log") {
  auto apn = to_petri_net(ProcessTree::parse("seq(a, xor(b, c))"));
  auto inside = classify_log(EventLog::from_words({{"a", "b"}, {"a", "c"}}), apn);
  REQUIRE(inside.size() == 2);
  CHECK(inside[0].verdict == Verdict::fitting);
  CHECK(inside[1].verdict == Verdict::fitting);

  auto unknown = classify_log(EventLog::from_words({{"a", "q"}}), apn);
  CHECK(unknown[0].verdict == Verdict::non_fitting);
  CHECK(classify_log(EventLog{}, apn).empty());

  SearchLimits tiny;
  tiny.max_expanded_states = 2;
  auto failed = classify_log(EventLog::from_words({{"x", "y", "z"}}), apn, CostScheme{}, tiny);
  CHECK(failed[0].verdict == Verdict::non_fitting);
  CHECK_FALSE(failed[0].error.empty());
}

TEST_CASE("verdict is fitting exactly when the cost is zero") {
  auto apn = to_petri_net(ProcessTree::parse("and(seq(a, b), xor(c, tau))"));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> len(0, 5), pick(0, 3);
  std::vector<Word> ws;
  for (int i = 0; i < 100; ++i) {
    Word w(static_cast<std::size_t>(len(rng)));
    for (auto& a : w) a = std::string(1, static_cast<char>('a' + pick(rng)));
    ws.push_back(w);
  }
  for (const auto& v : classify_log(EventLog::from_words(ws), apn)) {
    REQUIRE(v.report);
    CHECK((v.verdict == Verdict::fitting) == (v.report->raw_cost == 0));
  }
}

TEST_CASE("rediscoverability") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto log = simulate(random_tree(8, 4, seed), 30, 2, seed);
    auto result = check_rediscoverability(log, discover_net(log));
    CHECK(result.rediscoverable);
    CHECK(result.global.perfect());
  }
  auto log = EventLog::from_words({{"a", "b"}, {"a", "c"}});
  auto apn = discover_net(log);
  auto corrupted = EventLog::from_words({{"a", "b"}, {"a", "c"}, {"c", "a"}});
  CHECK_FALSE(check_rediscoverability(corrupted, apn).rediscoverable);
  CHECK(check_rediscoverability(EventLog{}, apn).rediscoverable);
}

TEST_CASE("confusion matrix") {
  std::vector<Verdict> v;
  std::vector<bool> truth;
  for (int i = 0; i < 10; ++i) {
    v.push_back(Verdict::fitting);
    truth.push_back(true);
  }
  for (int i = 0; i < 10; ++i) {
    v.push_back(Verdict::non_fitting);
    truth.push_back(false);
  }
  auto m = confusion(v, truth);
  CHECK(m == ConfusionMatrix{10, 0, 10, 0});
  CHECK(m.correctly_classified() == 20);

  v[10] = Verdict::fitting;
  auto one_fp = confusion(v, truth);
  CHECK(one_fp == ConfusionMatrix{10, 1, 9, 0});
  CHECK(one_fp.correctly_classified() == 19);

  auto wrong = confusion({Verdict::fitting, Verdict::non_fitting, Verdict::fitting, Verdict::non_fitting},
                         {false, true, false, true});
  CHECK(wrong == ConfusionMatrix{0, 2, 0, 2});
  CHECK(wrong.correctly_classified() == 0);

  CHECK_THROWS_AS(confusion({Verdict::fitting}, {true, false}), std::invalid_argument);
}

TEST_CASE("confusion is invariant under joint shuffles") {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::pair<Verdict, bool>> pairs;
  for (int i = 0; i < 50; ++i) pairs.emplace_back(coin(rng) ? Verdict::fitting : Verdict::non_fitting, coin(rng));
  auto split = [](const auto& ps) {
    std::vector<Verdict> v;
    std::vector<bool> t;
    for (const auto& [a, b] : ps) {
      v.push_back(a);
      t.push_back(b);
    }
    return confusion(v, t);
  };
  auto base = split(pairs);
  CHECK(base.total() == 50);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    CHECK(split(pairs) == base);
  }
}

TEST_CASE("model selection") {
  ModelCandidate im{"IM", ConfusionMatrix{10, 5, 5, 0}, complexity(24, Fraction(536, 10000), 72)};
  ModelCandidate dec{"Dec", ConfusionMatrix{10, 6, 4, 0}, complexity(149, Fraction(5132, 10000), 349)};
  CHECK(select_model({im, dec}) == 0);

  ModelCandidate im3{"IM", ConfusionMatrix{10, 8, 2, 0}, complexity(18, Fraction(795, 10000), 62)};
  ModelCandidate dec3{"Dec", ConfusionMatrix{10, 1, 9, 0}, complexity(156, Fraction(2167, 10000), 312)};
  CHECK(select_model({im3, dec3}) == 1);

  ModelCandidate im1{"IM", ConfusionMatrix{10, 0, 10, 0}, complexity(35, Fraction(387, 10000), 72)};
  ModelCandidate dec1{"Dec", ConfusionMatrix{10, 0, 10, 0}, complexity(39, Fraction(722, 10000), 78)};
  CHECK(select_model({im1, dec1}) == 0);
  CHECK(select_model({dec1, im1}) == 1);

  // full tie: the first candidate wins
  CHECK(select_model({im1, im1}) == 0);
  ModelCandidate denser = im1;
  denser.complexity.density = Fraction(1, 2);
  CHECK(select_model({denser, im1}) == 1);
  ModelCandidate more_arcs = im1;
  more_arcs.complexity.arcs = 100;
  CHECK(select_model({more_arcs, im1}) == 1);

  CHECK(select_models({{im, dec}, {im3, dec3}, {dec1, im1}}) == std::vector<std::size_t>{0, 1, 1});
  CHECK_THROWS_AS(select_model({}), std::invalid_argument);
}
