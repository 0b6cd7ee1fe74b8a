#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdforge/graph.hpp"
#include "cdforge/io.hpp"
#include "cdforge/numfmt.hpp"

#include "oracle_support.hpp"

using namespace cdforge;

TEST_CASE("parse_graph round trip on the documented schema") {
  const std::string doc = R"({"vertices":[{"id":"a","mu":1.0},{"id":"b"}],
                              "edges":[{"u":"a","v":"b","w":1.0}]})";
  WeightedGraph g = parse_graph(doc);
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.mu(g.index_of("b")) == 1.0);  // mu defaults to 1
}

TEST_CASE("parse_graph rejects bad input") {
  CHECK_THROWS_WITH_AS(parse_graph("{nope"), "malformed JSON", validation_error);
  CHECK_THROWS_AS(
      parse_graph(R"({"vertices":[{"id":"a"}],"edges":[{"u":"a","v":"a","w":1}]})"),
      validation_error);  // self-loop
  CHECK_THROWS_AS(
      parse_graph(
          R"({"vertices":[{"id":"a"},{"id":"b"},{"id":"c"}],"edges":[{"u":"a","v":"b","w":1}]})"),
      validation_error);  // disconnected
  CHECK_THROWS_AS(
      parse_graph(R"({"vertices":[{"id":"a"},{"id":"a"}],"edges":[]})"),
      validation_error);  // duplicate id
  CHECK_THROWS_AS(
      parse_graph(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"u":"a","v":"z","w":1}]})"),
      validation_error);  // unknown endpoint
  CHECK_THROWS_AS(
      parse_graph(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"u":"a","v":"b","w":0}]})"),
      validation_error);  // w <= 0
  CHECK_THROWS_AS(
      parse_graph(R"({"vertices":[{"id":"a","mu":-1},{"id":"b"}],"edges":[{"u":"a","v":"b","w":1}]})"),
      validation_error);  // mu <= 0
  CHECK_THROWS_AS(
      parse_graph(R"({"vertices":[{"id":"a"},{"id":"b"}],
                      "edges":[{"u":"a","v":"b","w":1},{"u":"b","v":"a","w":2}]})"),
      validation_error);  // duplicate edge
}

TEST_CASE("graph_stats matches the defining max") {
  SUBCASE("weighted path") {
    WeightedGraph g = oracle::weighted_p3();
    GraphStats s = graph_stats(g);
    CHECK(s.num_vertices == 3);
    CHECK(s.num_edges == 2);
    CHECK(s.omega_min == doctest::Approx(1.0));
    CHECK(s.d_mu == doctest::Approx(2.0));  // max(1, 3/2, 2)
  }
  SUBCASE("single edge") {
    GraphStats s = graph_stats(oracle::p2());
    CHECK(s.omega_min == 1.0);
    CHECK(s.d_mu == 1.0);
  }
  SUBCASE("K3") {
    CHECK(graph_stats(oracle::k3()).d_mu == doctest::Approx(2.0));
  }
  SUBCASE("recomputed from scratch on random graphs") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      WeightedGraph g = oracle::random_graph(seed, 17);
      GraphStats s = graph_stats(g);
      double dmu = 0.0, wmin = 1e300;
      for (int x = 0; x < g.num_vertices(); ++x) {
        double m = 0.0;
        for (const Neighbor& nb : g.neighbors(x)) m += nb.weight;
        CHECK(m == doctest::Approx(g.weighted_degree(x)).epsilon(1e-14));
        dmu = std::max(dmu, m / g.mu(x));
      }
      for (const auto& e : g.edges()) wmin = std::min(wmin, e.w);
      CHECK(s.d_mu == doctest::Approx(dmu).epsilon(1e-14));
      CHECK(s.omega_min == doctest::Approx(wmin).epsilon(1e-14));
    }
  }
}

TEST_CASE("balls by hop distance") {
  WeightedGraph g = generate(Family::path, {.n = 5});
  auto id = [&](int i) { return g.id(i); };
  VertexSet b = ball(g, "v2", 1);
  REQUIRE(b.size() == 3);
  CHECK(id(b[0]) == "v1");
  CHECK(id(b[1]) == "v2");
  CHECK(id(b[2]) == "v3");

  CHECK(ball(g, "v0", 0).size() == 1);
  CHECK(ball(oracle::k3(), 0, 1).size() == 3);
  CHECK_THROWS_AS(ball(g, "nope", 1), validation_error);

  SUBCASE("nesting and saturation") {
    WeightedGraph h = oracle::random_graph(9, 20);
    for (int r = 0; r + 1 < 8; ++r) {
      VertexSet inner = ball(h, 0, r);
      VertexSet outer = ball(h, 0, r + 1);
      for (int v : inner) CHECK(outer.contains(v));
    }
    CHECK(ball(h, 0, h.num_vertices()).size() == h.num_vertices());
  }
}

TEST_CASE("interior and boundary") {
  WeightedGraph g = generate(Family::path, {.n = 5});
  VertexSet u({1, 2, 3});  // {b, c, d}
  auto [interior, boundary] = interior_boundary(g, u);
  REQUIRE(interior.size() == 1);
  CHECK(g.id(interior[0]) == "v2");
  REQUIRE(boundary.size() == 2);

  SUBCASE("whole graph has empty boundary") {
    auto [in2, bd2] = interior_boundary(g, VertexSet::all(g));
    CHECK(in2.size() == g.num_vertices());
    CHECK(bd2.empty());
  }
  SUBCASE("singleton in K3 is all boundary") {
    WeightedGraph k = oracle::k3();
    auto [in3, bd3] = interior_boundary(k, VertexSet({0}));
    CHECK(in3.empty());
    CHECK(bd3.size() == 1);
  }
  SUBCASE("partition property and ball nesting") {
    WeightedGraph h = oracle::random_graph(4, 24);
    for (int r = 1; r <= 4; ++r) {
      VertexSet u2 = ball(h, 0, r);
      auto [in4, bd4] = interior_boundary(h, u2);
      CHECK(in4.size() + bd4.size() == u2.size());
      for (int v : in4) CHECK(!bd4.contains(v));
      for (int v : ball(h, 0, r - 1)) CHECK(in4.contains(v));
    }
  }
}

TEST_CASE("generators") {
  CHECK(generate(Family::complete, {.n = 3}).num_edges() == 3);
  CHECK(generate(Family::path, {.n = 2}).num_edges() == 1);
  CHECK(generate(Family::lattice_ball, {.dim = 1, .radius = 30}).num_vertices() == 61);
  CHECK(generate(Family::star, {.n = 4}).num_vertices() == 5);
  CHECK(generate(Family::hypercube, {.dim = 3}).num_edges() == 12);
  CHECK(generate(Family::cycle, {.n = 5}).num_edges() == 5);
  CHECK_THROWS_AS(generate(Family::cycle, {.n = 2}), validation_error);
  CHECK_THROWS_AS(generate(Family::path, {.n = 0}), validation_error);
  CHECK_THROWS_AS(generate(Family::lattice_ball, {.dim = 0, .radius = 3}), validation_error);

  SUBCASE("2d lattice ball") {
    WeightedGraph g = generate(Family::lattice_ball, {.dim = 2, .radius = 2});
    CHECK(g.num_vertices() == 13);  // |{|a|+|b| <= 2}|
    CHECK(g.find("0,0") >= 0);
  }
  SUBCASE("omega and mu overrides") {
    WeightedGraph g = generate(Family::path, {.n = 3, .omega = 2.5, .mu = 0.5});
    GraphStats s = graph_stats(g);
    CHECK(s.omega_min == 2.5);
    CHECK(s.d_mu == doctest::Approx(10.0));  // center: m = 5, mu = 0.5
  }
}

TEST_CASE("serialization is canonical and stable") {
  WeightedGraph g = oracle::random_graph(77, 13);
  std::string once = dump_json17(graph_to_json(g));
  WeightedGraph g2 = parse_graph(once);
  std::string twice = dump_json17(graph_to_json(g2));
  CHECK(once == twice);
  CHECK(g2.num_vertices() == g.num_vertices());
  CHECK(g2.num_edges() == g.num_edges());
}

TEST_CASE("exhaustion plan validation") {
  WeightedGraph g = generate(Family::lattice_ball, {.dim = 1, .radius = 10});
  validate_plan(g, {"0", {2, 3, 4}});
  CHECK_THROWS_AS(validate_plan(g, {"0", {3, 3}}), validation_error);
  CHECK_THROWS_AS(validate_plan(g, {"0", {}}), validation_error);
  CHECK_THROWS_AS(validate_plan(g, {"0", {-1, 2}}), validation_error);
  CHECK_THROWS_AS(validate_plan(g, {"nope", {1, 2}}), validation_error);
}
