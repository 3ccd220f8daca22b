#include "glsn/ingest.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include "json.hpp"
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "glsn/csv.hpp"
#include "glsn/error.hpp"
#include "glsn/format.hpp"

namespace glsn {

std::vector<std::string> ServiceRoute::distinct_ports() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : port_calls) {
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

bool ServiceRoute::has_repeated_calls() const {
  return distinct_ports().size() != port_calls.size();
}

namespace {

void check_capacity(double capacity, const std::string& source, std::size_t line) {
  if (capacity < 0.0) throw ParseError(source, line, "capacity_teu must be non-negative");
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

}  // namespace

std::vector<ServiceRoute> parse_routes(std::istream& calls, std::istream* meta,
                                       const std::string& calls_source,
                                       const std::string& meta_source) {
  const auto table = csv::read(calls, calls_source);
  std::vector<ServiceRoute> routes;
  std::unordered_map<std::string, std::size_t> index;
  if (!table.header().empty()) {
    const auto c_route = *table.column("route_id");
    const auto c_seq = *table.column("seq");
    const auto c_port = *table.column("port_id");

    // (seq, port) per route, checked for duplicate sequence numbers.
    std::vector<std::map<long long, std::string>> calls_by_route;
    for (const auto& row : table.rows()) {
      const auto& route_id = row.fields[c_route];
      const auto& port_id = row.fields[c_port];
      if (route_id.empty()) throw ParseError(calls_source, row.line, "empty route_id");
      if (port_id.empty()) throw ParseError(calls_source, row.line, "empty port_id");
      const long long seq = csv::parse_integer(row.fields[c_seq], calls_source, row.line, "seq");
      if (seq < 1) throw ParseError(calls_source, row.line, "seq must be >= 1");
      auto [it, inserted] = index.try_emplace(route_id, routes.size());
      if (inserted) {
        routes.push_back(ServiceRoute{route_id, {}, std::nullopt});
        calls_by_route.emplace_back();
      }
      auto& by_seq = calls_by_route[it->second];
      if (!by_seq.emplace(seq, port_id).second) {
        throw ParseError(calls_source, row.line,
                         "duplicate seq " + std::to_string(seq) + " in route " + route_id);
      }
    }
    for (std::size_t r = 0; r < routes.size(); ++r) {
      for (auto& [seq, port] : calls_by_route[r]) routes[r].port_calls.push_back(port);
    }
  }

  if (meta != nullptr) {
    const auto meta_table = csv::read(*meta, meta_source);
    if (!meta_table.header().empty()) {
      const auto c_route = *meta_table.column("route_id");
      const auto c_cap = *meta_table.column("capacity_teu");
      std::unordered_set<std::string> seen;
      for (const auto& row : meta_table.rows()) {
        const auto& route_id = row.fields[c_route];
        if (!seen.insert(route_id).second) {
          throw ParseError(meta_source, row.line, "duplicate route_id " + route_id);
        }
        const auto capacity =
            csv::parse_optional_double(row.fields[c_cap], meta_source, row.line, "capacity_teu");
        if (capacity) check_capacity(*capacity, meta_source, row.line);
        auto it = index.find(route_id);
        if (it == index.end()) {
          // A route with metadata but no calls; validation reports it as degenerate.
          index.emplace(route_id, routes.size());
          routes.push_back(ServiceRoute{route_id, {}, capacity});
        } else {
          routes[it->second].capacity_teu = capacity;
        }
      }
    }
  }
  return routes;
}

std::vector<ServiceRoute> parse_routes_json(std::istream& in, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source, 1, e.what());
  }
  if (!doc.is_array()) throw ParseError(source, 1, "expected a JSON array of routes");
  std::vector<ServiceRoute> routes;
  std::unordered_set<std::string> seen;
  std::size_t position = 0;
  for (const auto& item : doc) {
    ++position;
    const std::string where = "route #" + std::to_string(position);
    if (!item.is_object() || !item.contains("route_id") || !item["route_id"].is_string()) {
      throw ParseError(source, 1, where + ": missing string route_id");
    }
    ServiceRoute route;
    route.route_id = item["route_id"].get<std::string>();
    if (!seen.insert(route.route_id).second) {
      throw ParseError(source, 1, where + ": duplicate route_id " + route.route_id);
    }
    if (item.contains("capacity_teu") && !item["capacity_teu"].is_null()) {
      if (!item["capacity_teu"].is_number()) {
        throw ParseError(source, 1, where + ": capacity_teu must be a number");
      }
      const double capacity = item["capacity_teu"].get<double>();
      if (capacity < 0.0) throw ParseError(source, 1, where + ": capacity_teu must be non-negative");
      route.capacity_teu = capacity;
    }
    if (!item.contains("ports") || !item["ports"].is_array()) {
      throw ParseError(source, 1, where + ": missing ports array");
    }
    for (const auto& port : item["ports"]) {
      if (!port.is_string()) throw ParseError(source, 1, where + ": port ids must be strings");
      route.port_calls.push_back(port.get<std::string>());
    }
    routes.push_back(std::move(route));
  }
  return routes;
}

std::vector<Port> parse_ports(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  std::vector<Port> ports;
  if (table.header().empty()) return ports;
  const auto c_id = *table.column("port_id");
  const auto c_name = *table.column("name");
  const auto c_country = *table.column("country_code");
  std::unordered_set<std::string> seen;
  for (const auto& row : table.rows()) {
    Port port{row.fields[c_id], row.fields[c_name], row.fields[c_country]};
    if (port.port_id.empty()) throw ParseError(source, row.line, "empty port_id");
    if (port.country_code.empty()) throw ParseError(source, row.line, "empty country_code");
    if (!seen.insert(port.port_id).second) {
      throw ParseError(source, row.line, "duplicate port_id " + port.port_id);
    }
    ports.push_back(std::move(port));
  }
  return ports;
}

std::vector<CountryEcon> parse_country_econ(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  std::vector<CountryEcon> out;
  if (table.header().empty()) return out;
  const auto c_code = *table.column("country_code");
  const auto col = [&](const char* name) { return *table.column(name); };
  const std::size_t c_trade = col("trade_value_usd"), c_export = col("export_usd"),
                    c_import = col("import_usd"), c_gdp = col("gdp_usd"), c_lsci = col("lsci"),
                    c_lat = col("capital_lat"), c_lon = col("capital_lon");
  std::unordered_set<std::string> seen;
  for (const auto& row : table.rows()) {
    const auto field = [&](std::size_t c, const char* name) {
      return csv::parse_optional_double(row.fields[c], source, row.line, name);
    };
    CountryEcon econ;
    econ.country_code = row.fields[c_code];
    if (econ.country_code.empty()) throw ParseError(source, row.line, "empty country_code");
    if (!seen.insert(econ.country_code).second) {
      throw ParseError(source, row.line, "duplicate country_code " + econ.country_code);
    }
    econ.trade_value_usd = field(c_trade, "trade_value_usd");
    econ.export_usd = field(c_export, "export_usd");
    econ.import_usd = field(c_import, "import_usd");
    econ.gdp_usd = field(c_gdp, "gdp_usd");
    econ.lsci = field(c_lsci, "lsci");
    econ.capital_lat = field(c_lat, "capital_lat");
    econ.capital_lon = field(c_lon, "capital_lon");
    if (econ.capital_lat && (*econ.capital_lat < -90.0 || *econ.capital_lat > 90.0)) {
      throw ParseError(source, row.line, "capital_lat outside [-90, 90]");
    }
    if (econ.capital_lon && (*econ.capital_lon < -180.0 || *econ.capital_lon > 180.0)) {
      throw ParseError(source, row.line, "capital_lon outside [-180, 180]");
    }
    out.push_back(std::move(econ));
  }
  return out;
}

std::vector<BilateralRecord> parse_bilateral(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  std::vector<BilateralRecord> out;
  if (table.header().empty()) return out;
  const auto c_i = *table.column("country_i");
  const auto c_j = *table.column("country_j");
  const auto c_btv = *table.column("btv_usd");
  const auto c_lsbci = *table.column("lsbci");
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : table.rows()) {
    BilateralRecord record;
    record.country_i = row.fields[c_i];
    record.country_j = row.fields[c_j];
    if (record.country_i.empty() || record.country_j.empty()) {
      throw ParseError(source, row.line, "empty country code");
    }
    if (record.country_i == record.country_j) {
      throw ParseError(source, row.line, "country_i equals country_j (" + record.country_i + ")");
    }
    if (record.country_j < record.country_i) std::swap(record.country_i, record.country_j);
    if (!seen.emplace(record.country_i, record.country_j).second) {
      throw ParseError(source, row.line,
                       "duplicate unordered pair " + record.country_i + "/" + record.country_j);
    }
    record.btv_usd = csv::parse_double(row.fields[c_btv], source, row.line, "btv_usd");
    if (record.btv_usd < 0.0) throw ParseError(source, row.line, "btv_usd must be non-negative");
    record.lsbci = csv::parse_optional_double(row.fields[c_lsbci], source, row.line, "lsbci");
    out.push_back(std::move(record));
  }
  return out;
}

void write_routes_csv(std::ostream& out, const std::vector<ServiceRoute>& routes) {
  out << "route_id,seq,port_id\n";
  for (const auto& route : routes) {
    for (std::size_t k = 0; k < route.port_calls.size(); ++k) {
      out << csv::escape(route.route_id) << ',' << (k + 1) << ','
          << csv::escape(route.port_calls[k]) << '\n';
    }
  }
}

void write_routes_meta_csv(std::ostream& out, const std::vector<ServiceRoute>& routes) {
  out << "route_id,capacity_teu\n";
  for (const auto& route : routes) {
    out << csv::escape(route.route_id) << ',' << format_optional(route.capacity_teu) << '\n';
  }
}

void write_ports_csv(std::ostream& out, const std::vector<Port>& ports) {
  out << "port_id,name,country_code\n";
  for (const auto& p : ports) {
    out << csv::escape(p.port_id) << ',' << csv::escape(p.name) << ','
        << csv::escape(p.country_code) << '\n';
  }
}

void write_country_econ_csv(std::ostream& out, const std::vector<CountryEcon>& econ) {
  out << "country_code,trade_value_usd,export_usd,import_usd,gdp_usd,lsci,capital_lat,capital_lon\n";
  for (const auto& e : econ) {
    out << csv::escape(e.country_code) << ',' << format_optional(e.trade_value_usd) << ','
        << format_optional(e.export_usd) << ',' << format_optional(e.import_usd) << ','
        << format_optional(e.gdp_usd) << ',' << format_optional(e.lsci) << ','
        << format_optional(e.capital_lat) << ',' << format_optional(e.capital_lon) << '\n';
  }
}

void write_bilateral_csv(std::ostream& out, const std::vector<BilateralRecord>& bilateral) {
  out << "country_i,country_j,btv_usd,lsbci\n";
  for (const auto& b : bilateral) {
    out << csv::escape(b.country_i) << ',' << csv::escape(b.country_j) << ','
        << format_double(b.btv_usd) << ',' << format_optional(b.lsbci) << '\n';
  }
}

ValidationReport validate_dataset(const std::vector<ServiceRoute>& routes,
                                  const std::vector<Port>& ports,
                                  const std::vector<CountryEcon>& econ,
                                  const std::vector<BilateralRecord>& /*bilateral*/,
                                  bool strict) {
  std::unordered_map<std::string, const Port*> port_by_id;
  for (const auto& p : ports) port_by_id.emplace(p.port_id, &p);

  ValidationReport report;
  for (const auto& route : routes) {
    bool resolved = true;
    for (const auto& port_id : route.distinct_ports()) {
      if (!port_by_id.contains(port_id)) {
        report.unresolved.push_back({route.route_id, port_id});
        resolved = false;
      }
    }
    if (!resolved) {
      report.unresolved_routes.push_back(route.route_id);
      continue;
    }
    const auto distinct = route.distinct_ports();
    if (distinct.size() < 2) {
      report.degenerate_routes.push_back(route.route_id);
      continue;
    }
    const auto& first_country = port_by_id.at(distinct.front())->country_code;
    const bool international = std::any_of(distinct.begin(), distinct.end(), [&](const auto& p) {
      return port_by_id.at(p)->country_code != first_country;
    });
    if (!international) {
      report.domestic_routes.push_back(route.route_id);
      continue;
    }
    report.retained.push_back(route);
  }

  std::set<std::string> with_econ;
  for (const auto& e : econ) with_econ.insert(e.country_code);
  std::set<std::string> countries;
  for (const auto& p : ports) countries.insert(p.country_code);
  for (const auto& c : countries) {
    if (!with_econ.contains(c)) report.countries_without_econ.push_back(c);
  }

  if (strict && report.dropped_count() > 0) {
    std::string message = "strict validation failed: " +
                          std::to_string(report.dropped_count()) + " route(s) dropped";
    const auto append = [&](const char* label, const std::vector<std::string>& ids) {
      if (ids.empty()) return;
      message += std::string("; ") + label + ":";
      for (const auto& id : ids) message += " " + id;
    };
    append("domestic", report.domestic_routes);
    append("fewer than 2 distinct ports", report.degenerate_routes);
    append("unresolved ports", report.unresolved_routes);
    throw Error(message);
  }
  return report;
}

}  // namespace glsn
