#include "glsn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include "glsn/error.hpp"
#include "glsn/format.hpp"

namespace glsn {

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::Unweighted: return "none";
    case WeightScheme::One: return "one";
    case WeightScheme::InvN1: return "inv_n1";
    case WeightScheme::InvPairs: return "inv_pairs";
    case WeightScheme::Cap: return "cap";
    case WeightScheme::CapN1: return "cap_n1";
    case WeightScheme::CapPairs: return "cap_pairs";
  }
  return "unknown";
}

WeightScheme parse_weight_scheme(std::string_view text) {
  for (const auto scheme : kAllWeightSchemes) {
    if (to_string(scheme) == text) return scheme;
  }
  throw Error("unknown weighting scheme '" + std::string(text) +
              "' (expected none, one, inv_n1, inv_pairs, cap, cap_n1 or cap_pairs)");
}

bool uses_capacity(WeightScheme scheme) {
  return scheme == WeightScheme::Cap || scheme == WeightScheme::CapN1 ||
         scheme == WeightScheme::CapPairs;
}

double route_edge_weight(std::size_t distinct_ports, std::optional<double> capacity_teu,
                         WeightScheme scheme) {
  if (distinct_ports < 2) {
    throw Error("route edge weight needs at least 2 distinct ports, got " +
                std::to_string(distinct_ports));
  }
  const double n = static_cast<double>(distinct_ports);
  const double pairs = n * (n - 1.0) / 2.0;
  if (uses_capacity(scheme)) {
    if (!capacity_teu) {
      throw Error("weighting scheme '" + std::string(to_string(scheme)) +
                  "' requires capacity_teu, which is missing");
    }
    if (*capacity_teu < 0.0) throw Error("capacity_teu must be non-negative");
  }
  switch (scheme) {
    case WeightScheme::Unweighted:
    case WeightScheme::One: return 1.0;
    case WeightScheme::InvN1: return 1.0 / (n - 1.0);
    case WeightScheme::InvPairs: return 1.0 / pairs;
    case WeightScheme::Cap: return *capacity_teu;
    case WeightScheme::CapN1: return *capacity_teu / (n - 1.0);
    case WeightScheme::CapPairs: return *capacity_teu / pairs;
  }
  throw Error("unknown weighting scheme");
}

Glsn::Glsn(std::vector<Node> nodes, std::vector<Edge> edges, WeightScheme scheme)
    : scheme_(scheme), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw Error("self-loop on port " + nodes_.at(e.u).port_id);
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= nodes_.size()) throw Error("edge references unknown node");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
      throw Error("duplicate edge " + nodes_[edges_[k].u].port_id + "-" +
                  nodes_[edges_[k].v].port_id);
    }
  }

  for (const auto& node : nodes_) countries_.push_back(node.country_code);
  std::sort(countries_.begin(), countries_.end());
  countries_.erase(std::unique(countries_.begin(), countries_.end()), countries_.end());
  country_port_count_.assign(countries_.size(), 0);
  node_country_.reserve(nodes_.size());
  for (const auto& node : nodes_) {
    const auto c = *find_country(node.country_code);
    node_country_.push_back(c);
    ++country_port_count_[c];
  }

  std::vector<std::size_t> degree(nodes_.size(), 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  adjacency_offsets_.assign(nodes_.size() + 1, 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    adjacency_offsets_[i + 1] = adjacency_offsets_[i] + degree[i];
  }
  adjacency_.resize(adjacency_offsets_.back());
  std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[i + 1]));
  }
}

std::span<const NodeId> Glsn::neighbors(NodeId node) const {
  return std::span<const NodeId>(adjacency_.data() + adjacency_offsets_[node],
                                 adjacency_offsets_[node + 1] - adjacency_offsets_[node]);
}

std::optional<CountryId> Glsn::find_country(std::string_view code) const {
  const auto it = std::lower_bound(countries_.begin(), countries_.end(), code);
  if (it == countries_.end() || *it != code) return std::nullopt;
  return static_cast<CountryId>(it - countries_.begin());
}

std::optional<NodeId> Glsn::find_port(std::string_view port_id) const {
  const auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), port_id,
      [](const Node& node, std::string_view id) { return node.port_id < id; });
  if (it == nodes_.end() || it->port_id != port_id) return std::nullopt;
  return static_cast<NodeId>(it - nodes_.begin());
}

std::optional<double> Glsn::weight(NodeId a, NodeId b) const {
  if (a > b) std::swap(a, b);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                                   [](const Edge& e, const std::pair<NodeId, NodeId>& key) {
                                     return e.u != key.first ? e.u < key.first : e.v < key.second;
                                   });
  if (it == edges_.end() || it->u != a || it->v != b) return std::nullopt;
  return it->weight;
}

Glsn build_glsn(std::span<const ServiceRoute> routes, std::span<const Port> ports,
                WeightScheme scheme) {
  std::vector<Glsn::Node> nodes;
  nodes.reserve(ports.size());
  for (const auto& p : ports) nodes.push_back({p.port_id, p.country_code});
  std::sort(nodes.begin(), nodes.end(),
            [](const auto& a, const auto& b) { return a.port_id < b.port_id; });
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    if (nodes[k].port_id == nodes[k - 1].port_id) {
      throw Error("duplicate port_id " + nodes[k].port_id);
    }
  }
  std::unordered_map<std::string, NodeId> node_of;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    node_of.emplace(nodes[k].port_id, static_cast<NodeId>(k));
  }

  // Canonical summation order: routes by id, then pairs by node id.
  std::vector<const ServiceRoute*> ordered;
  ordered.reserve(routes.size());
  for (const auto& r : routes) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->route_id < b->route_id; });

  std::map<std::pair<NodeId, NodeId>, double> weights;
  for (const auto* route : ordered) {
    std::vector<NodeId> members;
    for (const auto& port_id : route->distinct_ports()) {
      const auto it = node_of.find(port_id);
      if (it == node_of.end()) {
        throw Error("route " + route->route_id + " references unknown port " + port_id);
      }
      members.push_back(it->second);
    }
    const double w = route_edge_weight(members.size(), route->capacity_teu, scheme);
    std::sort(members.begin(), members.end());
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        weights[{members[a], members[b]}] += w;
      }
    }
  }

  std::vector<Glsn::Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) {
    const double final_weight = scheme == WeightScheme::Unweighted ? 1.0 : w;
    if (!(final_weight > 0.0)) {
      // Zero-capacity routes leave no trace under capacity-based weighting.
      continue;
    }
    edges.push_back({key.first, key.second, final_weight});
  }
  return Glsn(std::move(nodes), std::move(edges), scheme);
}

GraphStats graph_stats(const Glsn& g) {
  GraphStats stats;
  stats.node_count = g.node_count();
  stats.edge_count = g.edge_count();
  for (CountryId c = 0; c < g.country_count(); ++c) {
    stats.ports_per_country[g.countries()[c]] = g.port_count(c);
  }
  return stats;
}

void write_edge_list(std::ostream& out, const Glsn& g) {
  out << "port_u,port_v,weight\n";
  for (const auto& e : g.edges()) {
    out << g.nodes()[e.u].port_id << ',' << g.nodes()[e.v].port_id << ','
        << format_double(e.weight) << '\n';
  }
}

}  // namespace glsn
