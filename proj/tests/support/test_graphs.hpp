#pragma once

// Small graph builders and seeded generators shared by the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "glsn/graph.hpp"

namespace glsn::testing {

struct PortSpec {
  std::string port;
  std::string country;
};

/// Unweighted graph from explicit ports and port-id edges.
inline Glsn make_graph(const std::vector<PortSpec>& ports,
                       const std::vector<std::pair<std::string, std::string>>& edges,
                       const std::vector<double>& weights = {}) {
  std::vector<Glsn::Node> nodes;
  for (const auto& p : ports) nodes.push_back({p.port, p.country});
  std::sort(nodes.begin(), nodes.end(),
            [](const auto& a, const auto& b) { return a.port_id < b.port_id; });
  const auto id = [&](const std::string& port) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (nodes[k].port_id == port) return static_cast<NodeId>(k);
    }
    throw std::runtime_error("unknown port " + port);
  };
  std::vector<Glsn::Edge> out;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out.push_back({id(edges[k].first), id(edges[k].second), weights.empty() ? 1.0 : weights[k]});
  }
  return Glsn(std::move(nodes), std::move(out),
              weights.empty() ? WeightScheme::Unweighted : WeightScheme::One);
}

/// Simple portable uniform draws from mt19937_64 bits.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * uniform());
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// G(n, p) with ports spread over `countries` countries at random. Port ids
/// are zero-padded so node order equals generation order.
inline Glsn random_graph(TestRng& rng, std::size_t n, double p, std::size_t countries) {
  std::vector<Glsn::Node> nodes;
  for (std::size_t k = 0; k < n; ++k) {
    std::string id = std::to_string(k);
    id.insert(0, 3 - id.size(), '0');
    const std::size_t c = k < countries ? k : rng.index(countries);
    nodes.push_back({"N" + id, "C" + std::to_string(c)});
  }
  std::vector<Glsn::Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.push_back({u, v, 1.0});
    }
  }
  return Glsn(std::move(nodes), std::move(edges), WeightScheme::Unweighted);
}

}  // namespace glsn::testing
