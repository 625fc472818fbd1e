// Tests for variable elimination: deterministic ordering, exactness against
// a brute-force joint-enumeration oracle, and error behavior.

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "railrisk/elimination.hpp"
#include "railrisk/error.hpp"
#include "railrisk/factor.hpp"
#include "test_helpers.hpp"

using namespace railrisk;
using railrisk::testing::JointOracle;
using railrisk::testing::make_var;
using railrisk::testing::random_evidence;
using railrisk::testing::random_net;

namespace {

// s -> r with p(s) = (0.3, 0.7) and p(r|s) rows (0.9, 0.1), (0.4, 0.6).
struct TwoNode {
  Variable s = make_var("s", 2);
  Variable r = make_var("r", 2);
  std::vector<Factor> factors{Factor({s}, {0.3, 0.7}),
                              Factor({s, r}, {0.9, 0.1, 0.4, 0.6})};
};

}  // namespace

TEST_CASE("eliminate on a two-node chain matches hand arithmetic") {
  TwoNode net;
  Factor pr = eliminate(net.factors, {"r"}, {});
  CHECK(pr.at({{"r", "r_s0"}}) == doctest::Approx(0.55).epsilon(1e-15));
  CHECK(pr.at({{"r", "r_s1"}}) == doctest::Approx(0.45).epsilon(1e-15));

  Factor conditioned = eliminate(net.factors, {"r"}, {{"s", "s_s0"}});
  CHECK(conditioned.at({{"r", "r_s1"}}) == doctest::Approx(0.1).epsilon(1e-12));

  // Diagnostic direction: posterior over the cause given the effect.
  Factor ps_given_r = eliminate(net.factors, {"s"}, {{"r", "r_s1"}});
  CHECK(ps_given_r.at({{"s", "s_s0"}}) == doctest::Approx(1.0 / 15.0).epsilon(1e-12));
  CHECK(ps_given_r.at({{"s", "s_s1"}}) == doctest::Approx(14.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("elimination order: min-degree with lexicographic ties") {
  // Chain a -> b -> c -> d, querying the sink: peel from the front.
  Variable a = make_var("a", 2), b = make_var("b", 2), c = make_var("c", 2),
           d = make_var("d", 2);
  std::vector<Factor> chain{
      Factor({a}, {0.5, 0.5}),
      Factor({a, b}, {0.5, 0.5, 0.5, 0.5}),
      Factor({b, c}, {0.5, 0.5, 0.5, 0.5}),
      Factor({c, d}, {0.5, 0.5, 0.5, 0.5}),
  };
  CHECK(elimination_order(chain, {"d"}, {}) == std::vector<std::string>{"a", "b", "c"});

  // Symmetric degrees: the tie falls to the lexicographically smaller name.
  Variable x = make_var("x", 2), y = make_var("y", 2), z = make_var("z", 2);
  std::vector<Factor> vee{Factor({x, z}, {1, 2, 3, 4}), Factor({y, z}, {1, 2, 3, 4})};
  CHECK(elimination_order(vee, {"z"}, {}) == std::vector<std::string>{"x", "y"});

  // Evidence variables are reduced away, never eliminated.
  CHECK(elimination_order(chain, {"d"}, {{"b", "b_s0"}}) ==
        std::vector<std::string>{"a", "c"});
}

TEST_CASE("elimination order is deterministic across calls") {
  std::mt19937 rng(301);
  for (int round = 0; round < 30; ++round) {
    auto net = random_net(rng);
    std::vector<std::string> query{net.vars.front().name()};
    Assignment evidence = random_evidence(rng, net.vars, 0, 1);
    auto first = elimination_order(net.cpts, query, evidence);
    auto second = elimination_order(net.cpts, query, evidence);
    CHECK(first == second);
    // The order covers exactly the hidden variables.
    for (const auto& name : query) {
      CHECK(std::find(first.begin(), first.end(), name) == first.end());
    }
    for (const auto& [name, state] : evidence) {
      (void)state;
      CHECK(std::find(first.begin(), first.end(), name) == first.end());
    }
  }
}

TEST_CASE("eliminate matches brute-force enumeration on random networks") {
  std::mt19937 rng(302);
  for (int round = 0; round < 60; ++round) {
    auto net = random_net(rng);
    JointOracle oracle(net.cpts);
    const auto& vars = oracle.variables();

    for (std::size_t q = 0; q < vars.size(); ++q) {
      for (std::size_t ev_size = 0; ev_size <= 2; ++ev_size) {
        Assignment evidence = random_evidence(rng, vars, q, ev_size);
        Factor got = eliminate(net.cpts, {vars[q].name()}, evidence);
        std::vector<double> expected = oracle.posterior({vars[q].name()}, evidence);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
          CHECK(got.values()[i] == doctest::Approx(expected[i]).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("eliminate answers joint queries in the requested variable order") {
  std::mt19937 rng(303);
  for (int round = 0; round < 30; ++round) {
    auto net = random_net(rng);
    if (net.vars.size() < 3) continue;
    JointOracle oracle(net.cpts);
    const auto& vars = oracle.variables();

    // Two distinct query variables, in reverse generation order.
    std::vector<std::string> query{vars[1].name(), vars[0].name()};
    Assignment evidence = random_evidence(rng, vars, 0, 1);
    evidence.erase(vars[1].name());

    Factor got = eliminate(net.cpts, query, evidence);
    REQUIRE(got.scope()[0].name() == query[0]);
    REQUIRE(got.scope()[1].name() == query[1]);
    std::vector<double> expected = oracle.posterior(query, evidence);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(got.values()[i] == doctest::Approx(expected[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("eliminate validates its inputs") {
  TwoNode net;
  CHECK_THROWS_AS(eliminate({}, {"r"}, {}), ScopeError);
  CHECK_THROWS_AS(eliminate(net.factors, {}, {}), ScopeError);
  CHECK_THROWS_AS(eliminate(net.factors, {"r", "r"}, {}), ScopeError);
  CHECK_THROWS_AS(eliminate(net.factors, {"ghost"}, {}), ScopeError);
  CHECK_THROWS_AS(eliminate(net.factors, {"r"}, {{"r", "r_s0"}}), EvidenceError);
  CHECK_THROWS_AS(eliminate(net.factors, {"r"}, {{"ghost", "x"}}), EvidenceError);
  CHECK_THROWS_AS(eliminate(net.factors, {"r"}, {{"s", "not_a_state"}}), EvidenceError);
}

TEST_CASE("structurally impossible evidence is reported with the evidence set") {
  Variable a = make_var("a", 2), b = make_var("b", 2);
  // p(a) puts no mass on a_s1, so conditioning on it is impossible.
  std::vector<Factor> factors{Factor({a}, {1.0, 0.0}),
                              Factor({a, b}, {0.5, 0.5, 0.5, 0.5})};
  CHECK_THROWS_WITH_AS(eliminate(factors, {"b"}, {{"a", "a_s1"}}),
                       doctest::Contains("a=a_s1"), ImpossibleEvidenceError);
  // The same network answers fine for the possible state.
  Factor ok = eliminate(factors, {"b"}, {{"a", "a_s0"}});
  CHECK(ok.at({{"b", "b_s0"}}) == doctest::Approx(0.5));
}
