#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace glsn {

struct Port {
  std::string port_id;
  std::string name;
  std::string country_code;  // ISO 3166-1 alpha-3; any code in the port table is a country

  friend bool operator==(const Port&, const Port&) = default;
};

/// One liner service: the ordered call sequence plus its total capacity in TEU.
/// Revisited ports stay in `port_calls`; graph construction collapses them.
struct ServiceRoute {
  std::string route_id;
  std::vector<std::string> port_calls;
  std::optional<double> capacity_teu;

  /// Distinct ports in first-call order.
  std::vector<std::string> distinct_ports() const;
  bool has_repeated_calls() const;

  friend bool operator==(const ServiceRoute&, const ServiceRoute&) = default;
};

struct CountryEcon {
  std::string country_code;
  std::optional<double> trade_value_usd;
  std::optional<double> export_usd;
  std::optional<double> import_usd;
  std::optional<double> gdp_usd;
  std::optional<double> lsci;
  std::optional<double> capital_lat;
  std::optional<double> capital_lon;

  friend bool operator==(const CountryEcon&, const CountryEcon&) = default;
};

/// Trade between an unordered country pair. Parsing stores the pair with
/// country_i < country_j.
struct BilateralRecord {
  std::string country_i;
  std::string country_j;
  double btv_usd = 0.0;
  std::optional<double> lsbci;

  friend bool operator==(const BilateralRecord&, const BilateralRecord&) = default;
};

// Parsers. `source` names the stream in error messages.

/// `route_id,seq,port_id` rows plus an optional `route_id,capacity_teu` stream.
/// Routes come out in order of first appearance; calls are ordered by seq.
std::vector<ServiceRoute> parse_routes(std::istream& calls, std::istream* meta = nullptr,
                                       const std::string& calls_source = "routes.csv",
                                       const std::string& meta_source = "routes_meta.csv");
/// JSON array of `{route_id, capacity_teu, ports:[...]}`.
std::vector<ServiceRoute> parse_routes_json(std::istream& in,
                                            const std::string& source = "routes.json");
std::vector<Port> parse_ports(std::istream& in, const std::string& source = "ports.csv");
std::vector<CountryEcon> parse_country_econ(std::istream& in,
                                            const std::string& source = "countries.csv");
std::vector<BilateralRecord> parse_bilateral(std::istream& in,
                                             const std::string& source = "bilateral.csv");

// Writers producing the same schemas the parsers accept.
void write_routes_csv(std::ostream& out, const std::vector<ServiceRoute>& routes);
void write_routes_meta_csv(std::ostream& out, const std::vector<ServiceRoute>& routes);
void write_ports_csv(std::ostream& out, const std::vector<Port>& ports);
void write_country_econ_csv(std::ostream& out, const std::vector<CountryEcon>& econ);
void write_bilateral_csv(std::ostream& out, const std::vector<BilateralRecord>& bilateral);

struct UnresolvedReference {
  std::string route_id;
  std::string port_id;
  friend bool operator==(const UnresolvedReference&, const UnresolvedReference&) = default;
};

struct ValidationReport {
  std::vector<ServiceRoute> retained;
  std::vector<std::string> domestic_routes;     // every call in one country
  std::vector<std::string> degenerate_routes;   // fewer than 2 distinct ports
  std::vector<std::string> unresolved_routes;   // dropped for unknown ports
  std::vector<UnresolvedReference> unresolved;  // the offending references
  std::vector<std::string> countries_without_econ;

  std::size_t dropped_count() const {
    return domestic_routes.size() + degenerate_routes.size() + unresolved_routes.size();
  }
};

/// Filters routes down to resolvable, international routes with at least two
/// distinct ports. With `strict`, any dropped route raises glsn::Error.
ValidationReport validate_dataset(const std::vector<ServiceRoute>& routes,
                                  const std::vector<Port>& ports,
                                  const std::vector<CountryEcon>& econ,
                                  const std::vector<BilateralRecord>& bilateral,
                                  bool strict = false);

}  // namespace glsn
