#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glsn/ingest.hpp"

namespace glsn {

/// Per-route edge weighting. n is the number of distinct ports on the route
/// and C its capacity in TEU.
enum class WeightScheme {
  Unweighted,  // binary edges
  One,         // 1
  InvN1,       // 1/(n-1)
  InvPairs,    // 1/[n(n-1)/2]
  Cap,         // C
  CapN1,       // C/(n-1)
  CapPairs,    // C/[n(n-1)/2]
};

inline constexpr WeightScheme kAllWeightSchemes[] = {
    WeightScheme::Unweighted, WeightScheme::One,   WeightScheme::InvN1,   WeightScheme::InvPairs,
    WeightScheme::Cap,        WeightScheme::CapN1, WeightScheme::CapPairs};

/// CLI spelling: none, one, inv_n1, inv_pairs, cap, cap_n1, cap_pairs.
std::string_view to_string(WeightScheme scheme);
WeightScheme parse_weight_scheme(std::string_view text);
bool uses_capacity(WeightScheme scheme);

/// Weight that one route adds to each pair of its distinct ports.
/// Unweighted returns the marker 1; build_glsn binarizes.
double route_edge_weight(std::size_t distinct_ports, std::optional<double> capacity_teu,
                         WeightScheme scheme);

using NodeId = std::uint32_t;
using CountryId = std::uint32_t;

/// Undirected port graph. Nodes are sorted by port id and countries by code,
/// so ids are canonical for a given port table. Immutable once built.
class Glsn {
 public:
  struct Node {
    std::string port_id;
    std::string country_code;
  };
  struct Edge {
    NodeId u;  // u < v
    NodeId v;
    double weight;
  };

  Glsn() = default;
  /// `edges` may be in any order but must not contain duplicates or self-loops.
  Glsn(std::vector<Node> nodes, std::vector<Edge> edges, WeightScheme scheme);

  WeightScheme scheme() const { return scheme_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t country_count() const { return countries_.size(); }

  const std::vector<Node>& nodes() const { return nodes_; }
  /// Sorted by (u, v).
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId node) const;

  CountryId country_of(NodeId node) const { return node_country_[node]; }
  const std::vector<std::string>& countries() const { return countries_; }
  std::optional<CountryId> find_country(std::string_view code) const;
  std::optional<NodeId> find_port(std::string_view port_id) const;
  std::size_t port_count(CountryId country) const { return country_port_count_[country]; }

  /// Weight of edge {a, b}, or nullopt when absent.
  std::optional<double> weight(NodeId a, NodeId b) const;

 private:
  WeightScheme scheme_ = WeightScheme::Unweighted;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::string> countries_;
  std::vector<CountryId> node_country_;
  std::vector<std::size_t> country_port_count_;
};

/// Clique projection: every pair of a route's distinct ports receives the
/// route's weight, summed over routes in route-id order. Every port in
/// `ports` becomes a node, including ports no route calls at.
Glsn build_glsn(std::span<const ServiceRoute> routes, std::span<const Port> ports,
                WeightScheme scheme);

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::map<std::string, std::size_t> ports_per_country;
};

GraphStats graph_stats(const Glsn& g);

/// `port_u,port_v,weight`, pairs in lexicographic order.
void write_edge_list(std::ostream& out, const Glsn& g);

}  // namespace glsn
