#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "glsn/error.hpp"
#include "glsn/graph.hpp"
#include "support/test_graphs.hpp"

using namespace glsn;

namespace {

const std::vector<Port> kPorts = {{"A", "a", "X"}, {"B", "b", "Y"}, {"C", "c", "Z"},
                                  {"D", "d", "Y"}, {"E", "e", "W"}};

double weight_of(const Glsn& g, const std::string& a, const std::string& b) {
  return g.weight(*g.find_port(a), *g.find_port(b)).value_or(0.0);
}

}  // namespace

TEST_CASE("route_edge_weight for a four-port route of 600 TEU") {
  CHECK(route_edge_weight(4, 600.0, WeightScheme::One) == 1.0);
  CHECK(route_edge_weight(4, 600.0, WeightScheme::InvN1) == doctest::Approx(1.0 / 3.0));
  CHECK(route_edge_weight(4, 600.0, WeightScheme::InvPairs) == doctest::Approx(1.0 / 6.0));
  CHECK(route_edge_weight(4, 600.0, WeightScheme::Cap) == 600.0);
  CHECK(route_edge_weight(4, 600.0, WeightScheme::CapN1) == 200.0);
  CHECK(route_edge_weight(4, 600.0, WeightScheme::CapPairs) == 100.0);
  CHECK(route_edge_weight(4, 600.0, WeightScheme::Unweighted) == 1.0);
}

TEST_CASE("route_edge_weight errors") {
  CHECK_THROWS_AS(route_edge_weight(1, 600.0, WeightScheme::One), Error);
  try {
    route_edge_weight(3, std::nullopt, WeightScheme::CapN1);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cap_n1") != std::string::npos);
  }
  CHECK_NOTHROW(route_edge_weight(3, std::nullopt, WeightScheme::InvN1));
}

TEST_CASE("scheme names round-trip") {
  for (const auto scheme : kAllWeightSchemes) {
    CHECK(parse_weight_scheme(to_string(scheme)) == scheme);
  }
  CHECK(to_string(WeightScheme::Unweighted) == "none");
  CHECK_THROWS_AS(parse_weight_scheme("bogus"), Error);
}

TEST_CASE("one route becomes a clique") {
  const std::vector<ServiceRoute> routes = {{"R1", {"A", "B", "C", "A"}, 600.0}};
  const auto g = build_glsn(routes, kPorts, WeightScheme::CapN1);
  CHECK(g.node_count() == 5);  // D and E stay isolated
  CHECK(g.edge_count() == 3);
  CHECK(weight_of(g, "A", "B") == 300.0);  // n = 3 distinct ports
  CHECK(weight_of(g, "B", "C") == 300.0);
  CHECK(weight_of(g, "A", "C") == 300.0);
  CHECK(g.neighbors(*g.find_port("E")).empty());
}

TEST_CASE("overlapping routes add their weights") {
  const std::vector<ServiceRoute> routes = {{"R1", {"A", "B", "C"}, 300.0},
                                            {"R2", {"B", "C", "D", "E"}, 300.0}};
  const auto cap = build_glsn(routes, kPorts, WeightScheme::Cap);
  CHECK(weight_of(cap, "B", "C") == 600.0);
  CHECK(weight_of(cap, "A", "B") == 300.0);
  const auto unweighted = build_glsn(routes, kPorts, WeightScheme::Unweighted);
  CHECK(weight_of(unweighted, "B", "C") == 1.0);
  const auto one = build_glsn(routes, kPorts, WeightScheme::One);
  CHECK(weight_of(one, "B", "C") == 2.0);
}

TEST_CASE("capacity schemes need capacities") {
  const std::vector<ServiceRoute> routes = {{"R1", {"A", "B"}, std::nullopt}};
  CHECK_THROWS_AS(build_glsn(routes, kPorts, WeightScheme::Cap), Error);
  CHECK_NOTHROW(build_glsn(routes, kPorts, WeightScheme::InvPairs));
}

TEST_CASE("unknown ports are rejected") {
  const std::vector<ServiceRoute> routes = {{"R1", {"A", "Q"}, 1.0}};
  CHECK_THROWS_AS(build_glsn(routes, kPorts, WeightScheme::One), Error);
}

TEST_CASE("empty route list gives an edgeless graph") {
  const auto g = build_glsn({}, kPorts, WeightScheme::One);
  CHECK(g.node_count() == 5);
  CHECK(g.edge_count() == 0);
  const auto stats = graph_stats(g);
  CHECK(stats.ports_per_country.at("Y") == 2);
}

TEST_CASE("Glsn rejects malformed edges") {
  std::vector<Glsn::Node> nodes = {{"A", "X"}, {"B", "Y"}};
  CHECK_THROWS_AS(Glsn(nodes, {{0, 0, 1.0}}, WeightScheme::One), Error);
  CHECK_THROWS_AS(Glsn(nodes, {{0, 1, 1.0}, {1, 0, 1.0}}, WeightScheme::One), Error);
  CHECK_THROWS_AS(Glsn(nodes, {{0, 5, 1.0}}, WeightScheme::One), Error);
}

namespace {

std::vector<ServiceRoute> random_routes(testing::TestRng& rng, std::size_t count) {
  std::vector<ServiceRoute> routes;
  for (std::size_t r = 0; r < count; ++r) {
    ServiceRoute route;
    route.route_id = "R" + std::to_string(100 + r);
    const std::size_t calls = 2 + rng.index(4);
    for (std::size_t k = 0; k < calls; ++k) route.port_calls.push_back(kPorts[rng.index(kPorts.size())].port_id);
    route.capacity_teu = 100.0 + std::floor(rng.uniform() * 9000.0);
    if (route.distinct_ports().size() >= 2) routes.push_back(route);
  }
  return routes;
}

}  // namespace

TEST_CASE("property: every scheme has the same edge set as the unweighted graph") {
  testing::TestRng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto routes = random_routes(rng, 1 + rng.index(6));
    const auto base = build_glsn(routes, kPorts, WeightScheme::Unweighted);
    for (const auto scheme : kAllWeightSchemes) {
      const auto g = build_glsn(routes, kPorts, scheme);
      REQUIRE(g.edge_count() == base.edge_count());
      for (std::size_t k = 0; k < g.edge_count(); ++k) {
        CHECK(g.edges()[k].u == base.edges()[k].u);
        CHECK(g.edges()[k].v == base.edges()[k].v);
        CHECK(g.edges()[k].weight > 0.0);
      }
    }
  }
}

TEST_CASE("property: the graph of a route union is the sum of the parts") {
  testing::TestRng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto first = random_routes(rng, 3);
    auto second = random_routes(rng, 3);
    for (auto& r : second) r.route_id += "b";
    auto both = first;
    both.insert(both.end(), second.begin(), second.end());
    const auto g1 = build_glsn(first, kPorts, WeightScheme::CapN1);
    const auto g2 = build_glsn(second, kPorts, WeightScheme::CapN1);
    const auto g = build_glsn(both, kPorts, WeightScheme::CapN1);
    for (NodeId a = 0; a < g.node_count(); ++a) {
      for (NodeId b = a + 1; b < g.node_count(); ++b) {
        const double parts = g1.weight(a, b).value_or(0.0) + g2.weight(a, b).value_or(0.0);
        CHECK(g.weight(a, b).value_or(0.0) == doctest::Approx(parts).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("property: route order does not change a single bit") {
  testing::TestRng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    auto routes = random_routes(rng, 8);
    const auto g = build_glsn(routes, kPorts, WeightScheme::InvPairs);
    std::shuffle(routes.begin(), routes.end(), rng.engine());
    auto ports = kPorts;
    std::shuffle(ports.begin(), ports.end(), rng.engine());
    const auto h = build_glsn(routes, ports, WeightScheme::InvPairs);
    std::ostringstream a, b;
    write_edge_list(a, g);
    write_edge_list(b, h);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("edge list output") {
  const std::vector<ServiceRoute> routes = {{"R1", {"B", "A"}, 600.0}};
  const auto g = build_glsn(routes, kPorts, WeightScheme::InvN1);
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(out.str() == "port_u,port_v,weight\nA,B,1\n");
}
