#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glsn/graph.hpp"
#include "glsn/ingest.hpp"

namespace glsn {

/// L_max values reported in indices.csv.
inline constexpr std::array<int, 4> kReportedLmax = {2, 3, 4, 5};

struct CountryConnectivity {
  std::vector<double> gc;             // by CountryId
  std::vector<double> gc_normalized;  // gc / port count
};

/// Sum of edge weights between each country's ports and foreign ports.
CountryConnectivity country_connectivity(const Glsn& g);

/// Valid shortest paths between one cross-country port pair.
struct PathProfile {
  int distance = -1;                       // hop distance, -1 when disconnected
  double valid_paths = 0.0;                // n_st
  std::map<CountryId, double> by_country;  // delta_i: valid paths with >= 1 port of i inside
};

/// Throws when s and t are in the same country.
PathProfile valid_shortest_path_profile(const Glsn& g, NodeId s, NodeId t, int l_max);

/// Country-level betweenness over valid shortest paths, by CountryId.
std::vector<double> glsn_betweenness(const Glsn& g, int l_max);

/// Same quantity for several L_max values from a single sweep; result[k]
/// corresponds to l_values[k].
std::vector<std::vector<double>> glsn_betweenness(const Glsn& g, std::span<const int> l_values);

/// Unnormalized shortest-path betweenness of every port, unordered pairs,
/// endpoints excluded. Hop-count based: edge weights are ignored.
std::vector<double> port_betweenness(const Glsn& g);

struct CountryFreeman {
  std::vector<double> fb;
  std::vector<double> fb_normalized;
};

CountryFreeman country_freeman(const Glsn& g, std::span<const double> port_b);

struct CountryIndexRow {
  std::string country_code;
  std::size_t port_count = 0;
  double gc = 0.0;
  double gc_normalized = 0.0;
  std::map<int, double> gb;  // keyed by L_max
  double fb = 0.0;
  double fb_normalized = 0.0;
  std::optional<double> lsci;
};

struct CountryIndexTable {
  WeightScheme scheme = WeightScheme::Unweighted;  // scheme behind gc
  std::vector<CountryIndexRow> rows;               // sorted by country code

  const CountryIndexRow* find(const std::string& code) const;
};

/// Computes every index for every country in `g`. gc uses g's weights; gb
/// and fb use only its structure. LSCI is copied from `econ` when present.
CountryIndexTable compute_index_table(const Glsn& g, std::span<const CountryEcon> econ,
                                      std::span<const int> l_values = kReportedLmax);

/// `country_code,port_count,gc,gc_norm,gb_l2,gb_l3,gb_l4,gb_l5,fb,fb_norm,lsci`.
void write_indices_csv(std::ostream& out, const CountryIndexTable& table);

}  // namespace glsn
