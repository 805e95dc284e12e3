#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "compartdb/model.hpp"
#include "test_helpers.hpp"

using namespace compartdb;
using compartdb::testing::random_model;
using compartdb::testing::random_permutation;

TEST_CASE("validate accepts a good model and normalizes ordering") {
  Model raw;
  raw.n = 2;
  raw.edges = {{1, 0}};
  raw.inputs = {0};
  raw.outputs = {0};
  raw.leaks = {0};
  Model m = validate(raw);
  CHECK(m.n == 2);
  CHECK(m.has_edge(1, 0));
  CHECK(format_model(m) == "graph=[[],[0]];in=[0];out=[0];leak=[0]");
}

TEST_CASE("validate rejects self-loops") {
  Model raw;
  raw.n = 2;
  raw.edges = {{0, 0}};
  CHECK_THROWS_AS(validate(raw), ValidationError);
}

TEST_CASE("validate rejects out-of-range vertices and reports everything") {
  Model raw;
  raw.n = 2;
  raw.edges = {{1, 2}, {0, 0}};
  raw.inputs = {5};
  try {
    validate(raw);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() == 3);
  }
}

TEST_CASE("validate rejects duplicate edges") {
  Model raw;
  raw.n = 2;
  raw.edges = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(validate(raw), ValidationError);
}

TEST_CASE("weakly_connected") {
  Model m;
  m.n = 2;
  m.edges = {{1, 0}};
  CHECK(weakly_connected(validate(m)));

  Model empty;
  empty.n = 2;
  CHECK_FALSE(weakly_connected(validate(empty)));

  Model isolated;
  isolated.n = 3;
  isolated.edges = {{0, 1}, {1, 0}};
  CHECK_FALSE(weakly_connected(validate(isolated)));
}

TEST_CASE("strongly_connected") {
  Model two_cycle;
  two_cycle.n = 2;
  two_cycle.edges = {{0, 1}, {1, 0}};
  CHECK(strongly_connected(validate(two_cycle)));

  Model one_way;
  one_way.n = 2;
  one_way.edges = {{1, 0}};
  CHECK_FALSE(strongly_connected(validate(one_way)));

  // graph [[1],[0,2],[0,1]]
  Model g = parse_model("graph=[[1],[0,2],[0,1]];in=[];out=[0];leak=[]");
  CHECK(strongly_connected(g));
}

TEST_CASE("all_reach_output") {
  Model m = parse_model("graph=[[],[0]];in=[];out=[0];leak=[]");
  CHECK(all_reach_output(m));

  Model bad = parse_model("graph=[[],[0]];in=[];out=[1];leak=[]");
  CHECK_FALSE(all_reach_output(bad));

  Model single = parse_model("graph=[[]];in=[];out=[0];leak=[]");
  CHECK(all_reach_output(single));
}

TEST_CASE("parse/format round trip and errors") {
  const std::string text = "graph=[[1],[0,2],[0,1]];in=[0,2];out=[2];leak=[0]";
  Model m = parse_model(text);
  CHECK(m.n == 3);
  CHECK(m.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  CHECK(format_model(m) == text);

  Model chain = parse_model("graph=[[],[0]];in=[];out=[0];leak=[]");
  CHECK(chain.n == 2);
  CHECK(chain.edges == std::vector<std::pair<int, int>>{{1, 0}});

  CHECK_THROWS_AS(parse_model("graph=[[1],[0]];in=[0];out=[1]"), ParseError);
  CHECK_THROWS_AS(parse_model("graph=[[0]];in=[];out=[0];leak=[]"), ValidationError);
  CHECK_THROWS_AS(parse_model("graph=[[1], [0]];in=[];out=[0];leak=[]"), ParseError);
  CHECK_THROWS_AS(parse_model("graph=[[1,0],[]];in=[];out=[0];leak=[]"), ParseError);
  CHECK_THROWS_AS(parse_model("graph=[[],[0]];in=[1,0];out=[0];leak=[]"), ParseError);

  try {
    parse_model("graph=[[1],[0]];in=[0];out=[1]");
  } catch (const ParseError& e) {
    CHECK(e.position() == 30);  // missing leak field, flagged at end of input
  }
}

TEST_CASE("parameter_keys order: edges by (from,to), then leaks") {
  Model m = parse_model("graph=[[1],[0,2],[0,1]];in=[0,2];out=[2];leak=[0,2]");
  auto keys = parameter_keys(m);
  REQUIRE(keys.size() == 7);
  CHECK(keys[0] == ParamKey::edge(0, 1));
  CHECK(keys[4] == ParamKey::edge(2, 1));
  CHECK(keys[5] == ParamKey::leak(0));
  CHECK(keys[6] == ParamKey::leak(2));
  CHECK(keys[0].name() == "a(0->1)");
  CHECK(keys[5].name() == "leak(0)");
  CHECK(ParamKey::from_name("a(0->1)") == keys[0]);
  CHECK(ParamKey::from_name("leak(2)") == keys[6]);
}

TEST_CASE("canonicalize: isomorphic relabelings collapse to one key") {
  Model a = parse_model("graph=[[1],[]];in=[0];out=[1];leak=[0]");
  Model b = parse_model("graph=[[],[0]];in=[1];out=[0];leak=[1]");
  CHECK(canonicalize(a).key == canonicalize(b).key);
}

TEST_CASE("canonicalize: applying the permutation yields the canonical model") {
  std::mt19937_64 rng(7);
  for (int n = 2; n <= 4; ++n) {
    for (int iter = 0; iter < 50; ++iter) {
      Model m = random_model(n, rng);
      CanonicalForm cf = canonicalize(m);
      CHECK(relabel(m, cf.permutation) == cf.canonical);
      CHECK(format_model(cf.canonical) == cf.key);
    }
  }
}

TEST_CASE("canonicalize idempotence: canonical models map to themselves") {
  std::mt19937_64 rng(8);
  std::vector<int> identity;
  for (int n = 1; n <= 4; ++n) {
    for (int iter = 0; iter < 50; ++iter) {
      CanonicalForm cf = canonicalize(random_model(n, rng));
      CanonicalForm again = canonicalize(cf.canonical);
      identity.assign(std::size_t(n), 0);
      std::iota(identity.begin(), identity.end(), 0);
      CHECK(again.permutation == identity);
      CHECK(again.key == cf.key);
    }
  }
}

TEST_CASE("isomorphism soundness: keys are relabeling-invariant") {
  std::mt19937_64 rng(9);
  for (int n = 2; n <= 4; ++n) {
    for (int iter = 0; iter < 200; ++iter) {
      Model m = random_model(n, rng);
      auto perm = random_permutation(n, rng);
      CHECK(canonicalize(m).key == canonicalize(relabel(m, perm)).key);
    }
  }
}

TEST_CASE("separation: structurally different models never share a key") {
  std::mt19937_64 rng(10);
  for (int iter = 0; iter < 200; ++iter) {
    int n1 = 2 + int(rng() % 3), n2 = 2 + int(rng() % 3);
    Model a = random_model(n1, rng);
    Model b = random_model(n2, rng);
    bool same_shape = a.n == b.n && a.edges.size() == b.edges.size() &&
                      a.inputs.size() == b.inputs.size() &&
                      a.outputs.size() == b.outputs.size() &&
                      a.leaks.size() == b.leaks.size();
    if (!same_shape) {
      CHECK(canonicalize(a).key != canonicalize(b).key);
    }
  }
}

TEST_CASE("relabel_result identity and swap") {
  std::map<ParamKey, int> result{{ParamKey::edge(0, 1), 1}};
  std::vector<int> identity{0, 1};
  CHECK(relabel_result(result, identity) == result);

  std::vector<int> swap{1, 0};
  auto swapped = relabel_result(result, swap);
  REQUIRE(swapped.size() == 1);
  CHECK(swapped.count(ParamKey::edge(1, 0)) == 1);
}

TEST_CASE("relabel_result is a group action") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 2 + int(rng() % 3);
    Model m = random_model(n, rng);
    std::map<ParamKey, int> result;
    int tag = 0;
    for (const auto& k : parameter_keys(m)) result[k] = tag++;

    auto p1 = random_permutation(n, rng);
    auto p2 = random_permutation(n, rng);
    // composition law: acting by p1 then p2 equals acting by p2∘p1
    std::vector<int> composed(std::size_t(n), 0);
    for (int v = 0; v < n; ++v) composed[std::size_t(v)] = p2[std::size_t(p1[std::size_t(v)])];
    CHECK(relabel_result(relabel_result(result, p1), p2) ==
          relabel_result(result, composed));
    // inverse law
    CHECK(relabel_result(relabel_result(result, p1), inverse_permutation(p1)) ==
          result);
  }
}

TEST_CASE("remove_leak") {
  Model m = parse_model("graph=[[1],[0,2],[0,1]];in=[0,2];out=[2];leak=[0]");
  Model r = remove_leak(m, 0);
  CHECK(format_model(r) == "graph=[[1],[0,2],[0,1]];in=[0,2];out=[2];leak=[]");
  CHECK_THROWS_AS(remove_leak(r, 0), std::invalid_argument);

  Model single = parse_model("graph=[[]];in=[];out=[0];leak=[0]");
  CHECK(remove_leak(single, 0).leaks.empty());
}
