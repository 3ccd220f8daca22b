#include "glsn/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "glsn/econometrics.hpp"
#include "glsn/error.hpp"
#include "glsn/fixture.hpp"
#include "glsn/format.hpp"
#include "glsn/indices.hpp"
#include "glsn/ingest.hpp"
#include "json.hpp"

#ifndef GLSN_VERSION
#define GLSN_VERSION "0.0.0"
#endif

namespace glsn {

namespace fs = std::filesystem;

std::string_view tool_version() { return GLSN_VERSION; }

std::string_view to_string(Dependent dependent) {
  switch (dependent) {
    case Dependent::Trade: return "trade";
    case Dependent::Export: return "export";
    case Dependent::Import: return "import";
    case Dependent::NetExport: return "net_export";
    case Dependent::Gdp: return "gdp";
    case Dependent::TradeChange: return "trade_change";
  }
  return "unknown";
}

Dependent parse_dependent(std::string_view text) {
  for (const auto d : {Dependent::Trade, Dependent::Export, Dependent::Import,
                       Dependent::NetExport, Dependent::Gdp, Dependent::TradeChange}) {
    if (to_string(d) == text) return d;
  }
  throw Error("unknown dependent variable '" + std::string(text) +
              "' (expected trade, export, import, net_export, gdp or trade_change)");
}

namespace {

const std::vector<GravityVariant> kDefaultVariants = {GravityVariant::Base, GravityVariant::Lsbci,
                                                      GravityVariant::Gb, GravityVariant::LsbciGb};

std::vector<GravityVariant> effective_variants(const RunConfig& config) {
  if (config.variants.empty()) return kDefaultVariants;
  std::vector<GravityVariant> out = {GravityVariant::Base};
  for (const auto v : config.variants) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::vector<int> l_values_for(const RunConfig& config) {
  std::set<int> values(kReportedLmax.begin(), kReportedLmax.end());
  for (const int l : config.l_max) {
    if (l < 2) throw Error("--lmax values must be >= 2, got " + std::to_string(l));
    values.insert(l);
  }
  return {values.begin(), values.end()};
}

std::string pad(std::string text, std::size_t width, bool left_align = false) {
  if (text.size() >= width) return text;
  const std::string fill(width - text.size(), ' ');
  return left_align ? text + fill : fill + text;
}

struct InputFile {
  std::string name;
  std::string bytes;
};

InputFile read_input(const fs::path& path, const char* flag) {
  if (path.empty()) throw Error(std::string("missing required input ") + flag);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " (" + flag + ")");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {path.filename().string(), buffer.str()};
}

struct Needs {
  bool countries = false;
  bool bilateral = false;
  bool countries_later = false;
};

// Loaded and validated inputs plus cached graphs and index tables.
class Workspace {
 public:
  Workspace(const RunConfig& config, Needs needs) : config_(config) {
    if (config.schemes.empty()) throw Error("at least one weighting scheme is required");
    if (config.l_max.empty()) throw Error("at least one L_max value is required");

    auto routes_file = read_input(config.routes, "--routes");
    const bool json_routes = config.routes.extension() == ".json";
    std::optional<InputFile> meta_file;
    if (!json_routes) {
      fs::path meta_path = config.routes_meta;
      if (meta_path.empty()) {
        const auto sibling = config.routes.parent_path() / "routes_meta.csv";
        if (fs::exists(sibling)) meta_path = sibling;
      }
      if (!meta_path.empty()) meta_file = read_input(meta_path, "--routes-meta");
    }
    auto ports_file = read_input(config.ports, "--ports");

    {
      std::istringstream in(routes_file.bytes);
      if (json_routes) {
        routes_ = parse_routes_json(in, routes_file.name);
      } else if (meta_file) {
        std::istringstream meta(meta_file->bytes);
        routes_ = parse_routes(in, &meta, routes_file.name, meta_file->name);
      } else {
        routes_ = parse_routes(in, nullptr, routes_file.name);
      }
    }
    {
      std::istringstream in(ports_file.bytes);
      ports_ = parse_ports(in, ports_file.name);
    }
    inputs_.push_back(std::move(routes_file));
    if (meta_file) inputs_.push_back(std::move(*meta_file));
    inputs_.push_back(std::move(ports_file));

    if (needs.countries || !config.countries.empty()) {
      auto file = read_input(config.countries, "--countries");
      std::istringstream in(file.bytes);
      econ_ = parse_country_econ(in, file.name);
      inputs_.push_back(std::move(file));
    }
    if (needs.countries_later) {
      auto file = read_input(config.countries_later, "--countries-later");
      std::istringstream in(file.bytes);
      econ_later_ = parse_country_econ(in, file.name);
      inputs_.push_back(std::move(file));
    }
    if (needs.bilateral) {
      auto file = read_input(config.bilateral, "--bilateral");
      std::istringstream in(file.bytes);
      bilateral_ = parse_bilateral(in, file.name);
      inputs_.push_back(std::move(file));
    }

    validation_ = validate_dataset(routes_, ports_, econ_, bilateral_, config.strict);
    const auto warn_list = [&](const char* label, const std::vector<std::string>& ids) {
      if (ids.empty()) return;
      std::string message = std::to_string(ids.size()) + " route(s) dropped (" + label + "):";
      for (const auto& id : ids) message += " " + id;
      warnings_.push_back(std::move(message));
    };
    warn_list("domestic", validation_.domestic_routes);
    warn_list("fewer than 2 distinct ports", validation_.degenerate_routes);
    warn_list("unresolved port references", validation_.unresolved_routes);
    if (validation_.retained.empty()) throw Error("no retained routes");

    std::string header = "# glsn-trade " + std::string(tool_version()) + " | config " +
                         hex64(fnv1a64(config.canonical())) + " | inputs";
    for (const auto& f : inputs_) header += " " + f.name + "=" + hex64(fnv1a64(f.bytes));
    header_ = header + "\n";
  }

  const RunConfig& config() const { return config_; }
  const std::string& header() const { return header_; }
  const std::vector<Port>& ports() const { return ports_; }
  const std::vector<CountryEcon>& econ() const { return econ_; }
  const std::vector<CountryEcon>& econ_later() const { return econ_later_; }
  const std::vector<BilateralRecord>& bilateral() const { return bilateral_; }
  const ValidationReport& validation() const { return validation_; }
  std::vector<std::string>& warnings() { return warnings_; }

  const Glsn& graph(WeightScheme scheme) {
    auto it = graphs_.find(scheme);
    if (it == graphs_.end()) {
      it = graphs_.emplace(scheme, build_glsn(validation_.retained, ports_, scheme)).first;
    }
    return it->second;
  }

  WeightScheme primary_scheme() const { return config_.schemes.front(); }
  int primary_lmax() const { return config_.l_max.front(); }

  /// Index table whose gc comes from `scheme`; gb and fb are shared.
  const CountryIndexTable& indices(WeightScheme scheme) {
    if (!base_table_) {
      base_table_ = compute_index_table(graph(WeightScheme::Unweighted), econ_, l_values_for(config_));
    }
    auto it = tables_.find(scheme);
    if (it == tables_.end()) {
      CountryIndexTable table = *base_table_;
      table.scheme = scheme;
      const auto& g = graph(scheme);
      const auto connectivity = country_connectivity(g);
      for (auto& row : table.rows) {
        const auto c = *g.find_country(row.country_code);
        row.gc = connectivity.gc[c];
        row.gc_normalized = connectivity.gc_normalized[c];
      }
      it = tables_.emplace(scheme, std::move(table)).first;
    }
    return it->second;
  }

  const CountryIndexTable& indices() { return indices(primary_scheme()); }

  const CountryEcon* econ_for(const std::string& code, bool later = false) const {
    for (const auto& e : later ? econ_later_ : econ_) {
      if (e.country_code == code) return &e;
    }
    return nullptr;
  }

 private:
  const RunConfig& config_;
  std::vector<InputFile> inputs_;
  std::string header_;
  std::vector<ServiceRoute> routes_;
  std::vector<Port> ports_;
  std::vector<CountryEcon> econ_;
  std::vector<CountryEcon> econ_later_;
  std::vector<BilateralRecord> bilateral_;
  ValidationReport validation_;
  std::vector<std::string> warnings_;
  std::map<WeightScheme, Glsn> graphs_;
  std::optional<CountryIndexTable> base_table_;
  std::map<WeightScheme, CountryIndexTable> tables_;
};

void emit(Workspace& ws, CommandResult& result, const std::string& name, const std::string& body) {
  fs::create_directories(ws.config().out);
  const auto path = ws.config().out / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << ws.header() << body;
  if (!out) throw Error("failed writing " + path.string());
  result.written.push_back(path);
}

// ---------------------------------------------------------------- build

void run_build(Workspace& ws, CommandResult& result) {
  std::ostringstream summary;
  nlohmann::ordered_json stats;
  stats["provenance"] = ws.header().substr(2, ws.header().size() - 3);
  for (const auto scheme : ws.config().schemes) {
    const auto& g = ws.graph(scheme);
    std::ostringstream edges;
    write_edge_list(edges, g);
    emit(ws, result, "edges_" + std::string(to_string(scheme)) + ".csv", edges.str());
  }
  const auto gs = graph_stats(ws.graph(ws.primary_scheme()));
  stats["nodes"] = gs.node_count;
  stats["edges"] = gs.edge_count;
  stats["countries"] = gs.ports_per_country.size();
  stats["ports_per_country"] = gs.ports_per_country;
  std::vector<std::string> schemes;
  for (const auto s : ws.config().schemes) schemes.emplace_back(to_string(s));
  stats["schemes"] = schemes;
  const auto& v = ws.validation();
  stats["validation"] = {{"retained_routes", v.retained.size()},
                         {"domestic_routes", v.domestic_routes},
                         {"degenerate_routes", v.degenerate_routes},
                         {"unresolved_routes", v.unresolved_routes},
                         {"countries_without_econ", v.countries_without_econ}};
  const auto path = ws.config().out / "stats.json";
  fs::create_directories(ws.config().out);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << stats.dump(2) << '\n';
  result.written.push_back(path);

  summary << "GLSN: " << gs.node_count << " ports, " << gs.edge_count << " edges, "
          << gs.ports_per_country.size() << " countries; " << v.retained.size()
          << " routes retained, " << v.dropped_count() << " dropped\n";
  result.summary += summary.str();
}

// ---------------------------------------------------------------- indices

void run_indices(Workspace& ws, CommandResult& result) {
  for (std::size_t k = 0; k < ws.config().schemes.size(); ++k) {
    const auto scheme = ws.config().schemes[k];
    std::ostringstream body;
    write_indices_csv(body, ws.indices(scheme));
    const std::string name =
        k == 0 ? "indices.csv" : "indices_" + std::string(to_string(scheme)) + ".csv";
    emit(ws, result, name, body.str());
  }
  result.summary += "indices: " + std::to_string(ws.indices().rows.size()) +
                    " countries (Gc scheme " + std::string(to_string(ws.primary_scheme())) + ")\n";
}

// ---------------------------------------------------------------- regress

std::optional<double> response_of(Dependent dependent, const CountryEcon& e,
                                  const CountryEcon* later) {
  switch (dependent) {
    case Dependent::Trade: return e.trade_value_usd;
    case Dependent::Export: return e.export_usd;
    case Dependent::Import: return e.import_usd;
    case Dependent::NetExport:
      if (e.export_usd && e.import_usd) return *e.export_usd - *e.import_usd;
      return std::nullopt;
    case Dependent::Gdp: return e.gdp_usd;
    case Dependent::TradeChange:
      if (later && later->trade_value_usd && e.trade_value_usd) {
        return *later->trade_value_usd - *e.trade_value_usd;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

void run_regress(Workspace& ws, CommandResult& result) {
  const auto& config = ws.config();
  const bool change = config.dependent == Dependent::TradeChange;
  const auto& table = ws.indices();
  const int lmax = ws.primary_lmax();

  std::vector<std::string> names;
  if (change) names.emplace_back("Tv");
  for (const char* n : {"Gc", "Gb", "Fb", "L"}) names.emplace_back(n);

  struct Observation {
    std::string country;
    std::vector<double> values;
    double response;
  };
  std::vector<Observation> rows;
  std::map<std::string, std::size_t> excluded;
  for (const auto& row : table.rows) {
    const auto* e = ws.econ_for(row.country_code);
    if (e == nullptr) {
      ++excluded["no_econ_record"];
      continue;
    }
    if (!row.lsci) {
      ++excluded["missing_lsci"];
      continue;
    }
    if (change && !e->trade_value_usd) {
      ++excluded["missing_trade_value"];
      continue;
    }
    const auto y = response_of(config.dependent, *e, ws.econ_for(row.country_code, true));
    if (!y) {
      ++excluded["missing_response"];
      continue;
    }
    if (config.log_response && !(*y > 0.0)) {
      ++excluded["nonpositive_response"];
      continue;
    }
    Observation obs{row.country_code, {}, config.log_response ? std::log(*y) : *y};
    if (change) obs.values.push_back(*e->trade_value_usd);
    obs.values.push_back(row.gc);
    obs.values.push_back(row.gb.at(lmax));
    obs.values.push_back(row.fb);
    obs.values.push_back(*row.lsci);
    rows.push_back(std::move(obs));
  }

  DesignMatrix design;
  design.response_name = std::string(to_string(config.dependent));
  for (const auto& r : rows) design.response.push_back(r.response);
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::vector<double> column;
    for (const auto& r : rows) column.push_back(r.values[j]);
    const bool constant =
        column.empty() || std::all_of(column.begin(), column.end(),
                                      [&](double x) { return x == column.front(); });
    if (constant) {
      ws.warnings().push_back("candidate " + names[j] + " is constant over the sample; dropped");
      continue;
    }
    design.names.push_back(names[j]);
    design.columns.push_back(std::move(column));
  }
  if (design.columns.empty()) throw Error("no non-constant candidate variables");
  const std::size_t k = design.n_vars();
  if (rows.size() < k + 2) {
    throw Error("regression needs at least " + std::to_string(k + 2) +
                " countries with complete data, found " + std::to_string(rows.size()));
  }

  const auto selection =
      select_model(design, SelectionOptions{config.vif_threshold, /*standardize=*/true});

  std::ostringstream report_csv;
  write_regression_report_csv(report_csv, selection);
  emit(ws, result, "regression_report.csv", report_csv.str());

  std::ostringstream coef_csv;
  if (const auto* chosen = selection.selected()) {
    write_coefficients_csv(coef_csv, *chosen->report);
  } else {
    coef_csv << "variable,coef,ci_lo,ci_hi,p_value\n";
  }
  emit(ws, result, "coefficients.csv", coef_csv.str());

  // Pearson screening of every index variant against the response.
  std::ostringstream corr_csv;
  corr_csv << "variable,r,p_value,n\n";
  const auto correlate = [&](const std::string& label, auto&& value_of) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
      const auto* row = table.find(r.country);
      const std::optional<double> v = value_of(*row, r.country);
      if (!v) continue;
      x.push_back(*v);
      y.push_back(r.response);
    }
    double r = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
    try {
      const auto c = pearson(x, y);
      r = c.r;
      p = c.p_value;
    } catch (const Error&) {
    }
    corr_csv << label << ',' << format_double(r) << ',' << format_double(p) << ',' << x.size()
             << '\n';
  };
  for (const auto scheme : config.schemes) {
    const auto& scheme_table = ws.indices(scheme);
    const std::string suffix(to_string(scheme));
    correlate("gc_" + suffix, [&](const CountryIndexRow&, const std::string& code) {
      return std::optional<double>(scheme_table.find(code)->gc);
    });
    correlate("gc_norm_" + suffix, [&](const CountryIndexRow&, const std::string& code) {
      return std::optional<double>(scheme_table.find(code)->gc_normalized);
    });
  }
  for (const int l : kReportedLmax) {
    correlate("gb_l" + std::to_string(l), [&](const CountryIndexRow& row, const std::string&) {
      return std::optional<double>(row.gb.at(l));
    });
  }
  correlate("fb", [](const CountryIndexRow& row, const std::string&) {
    return std::optional<double>(row.fb);
  });
  correlate("fb_norm", [](const CountryIndexRow& row, const std::string&) {
    return std::optional<double>(row.fb_normalized);
  });
  correlate("lsci", [](const CountryIndexRow& row, const std::string&) { return row.lsci; });
  emit(ws, result, "correlations.csv", corr_csv.str());

  std::ostringstream scatter;
  scatter << "country_code," << design.response_name;
  for (const auto& n : names) scatter << ',' << n;
  scatter << '\n';
  for (const auto& r : rows) {
    scatter << r.country << ',' << format_double(r.response);
    for (const double v : r.values) scatter << ',' << format_double(v);
    scatter << '\n';
  }
  emit(ws, result, "scatter.csv", scatter.str());

  std::ostringstream text;
  text << "dependent: " << design.response_name
       << (config.log_response ? " (natural log)" : " (untransformed)")
       << "; regressors and response standardized to z-scores\n";
  if (!config.log_response) {
    text << "note: the response is not log-transformed; rerun with --log-response to compare\n";
  }
  text << "countries used: " << rows.size();
  if (!excluded.empty()) {
    text << " (excluded:";
    for (const auto& [reason, count] : excluded) text << ' ' << reason << '=' << count;
    text << ')';
  }
  text << "\nGc scheme: " << to_string(ws.primary_scheme()) << "; Gb L_max: " << lmax
       << "; VIF threshold: " << format_double(config.vif_threshold) << "\n\n";
  text << pad("variables", 18, true) << pad("adj_R2", 10) << pad("AIC", 12) << pad("max_VIF", 10)
       << pad("admissible", 12) << '\n';
  for (const auto& fit : selection.table) {
    text << pad(join_variables(fit.variables), 18, true)
         << pad(fit.report ? format_fixed(fit.report->adjusted_r2, 3) : "-", 10)
         << pad(fit.report ? format_fixed(fit.report->aic, 2) : "-", 12)
         << pad(format_fixed(fit.max_vif, 2), 10) << pad(fit.admissible ? "yes" : "no", 12)
         << '\n';
  }
  if (const auto* chosen = selection.selected()) {
    text << "\nverdict: " << join_variables(chosen->variables) << " (adjusted R2 "
         << format_fixed(chosen->report->adjusted_r2, 3) << ", AIC "
         << format_fixed(chosen->report->aic, 2) << ")\n";
    for (const auto& c : chosen->report->coefficients) {
      text << "  " << pad(c.name, 12, true) << pad(format_fixed(c.estimate, 3), 9) << "  [" << format_fixed(c.ci95.lo, 3)
           << ", " << format_fixed(c.ci95.hi, 3) << "]  p=" << format_general(c.p_value, 3) << '\n';
    }
  } else {
    text << "\nverdict: none admissible\n";
  }
  emit(ws, result, "regression_summary.txt", text.str());

  result.summary += "regression (" + design.response_name + ", " + std::to_string(rows.size()) +
                    " countries, " + std::to_string(selection.table.size()) + " subsets): " +
                    (selection.selected() ? join_variables(selection.selected()->variables)
                                          : std::string("none admissible")) +
                    "\n";
}

// ---------------------------------------------------------------- gravity

void run_gravity(Workspace& ws, CommandResult& result) {
  const auto& config = ws.config();
  const auto variants = effective_variants(config);
  const auto& g = ws.graph(ws.primary_scheme());
  const auto& table = ws.indices();

  PairRequirements requirements;
  for (const auto v : variants) requirements |= requirements_of(v);
  PairOptions options;
  options.l_max = ws.primary_lmax();
  const auto common = assemble_pairs(ws.econ(), ws.bilateral(), table, g, requirements, options);

  std::ostringstream report_csv;
  report_csv << "variant,adjusted_r2,aic,max_vif\n";
  std::ostringstream text;
  text << "gravity sample: " << common.samples.size()
       << " country pairs directly connected in the GLSN";
  if (!common.excluded.empty()) {
    text << " (excluded:";
    for (const auto& [reason, count] : common.excluded) text << ' ' << reason << '=' << count;
    text << ')';
  }
  text << "\n\n"
       << pad("variant", 10, true) << pad("adj_R2", 10) << pad("AIC", 12) << pad("max_VIF", 10)
       << "  coefficients (p-value)\n";
  for (const auto v : variants) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    try {
      const auto fit = fit_gravity(common.samples, v);
      report_csv << to_string(v) << ',' << format_double(fit.adjusted_r2) << ','
                 << format_double(fit.aic) << ',' << format_double(fit.max_vif()) << '\n';
      text << pad(std::string(to_string(v)), 10, true) << pad(format_fixed(fit.adjusted_r2, 3), 10)
           << pad(format_fixed(fit.aic, 2), 12) << pad(format_fixed(fit.max_vif(), 2), 10) << ' ';
      for (const auto& c : fit.coefficients) {
        text << ' ' << c.name << '=' << format_fixed(c.estimate, 3) << " (p=" << format_general(c.p_value, 3) << ')';
      }
      text << '\n';
    } catch (const Error& e) {
      report_csv << to_string(v) << ',' << format_double(nan) << ',' << format_double(nan) << ','
                 << format_double(nan) << '\n';
      text << pad(std::string(to_string(v)), 10, true) << "  not fitted: " << e.what() << '\n';
      ws.warnings().push_back("gravity variant " + std::string(to_string(v)) +
                              " not fitted: " + e.what());
    }
  }
  emit(ws, result, "gravity_report.csv", report_csv.str());

  // Country-level reconstruction from the base model over coverage-filtered countries.
  const auto coverage = coverage_filter(ws.econ(), ws.bilateral(), config.coverage);
  const std::set<std::string> retained(coverage.retained.begin(), coverage.retained.end());
  PairOptions recon_options;
  recon_options.l_max = ws.primary_lmax();
  recon_options.require_connection = false;
  recon_options.anchor_countries = retained;
  const auto recon = assemble_pairs(ws.econ(), ws.bilateral(), table, g, GravityVariant::Base,
                                    recon_options);

  text << "\ncoverage filter (> " << format_double(config.coverage) << " of total trade): "
       << coverage.retained.size() << " retained, " << coverage.excluded.size() << " excluded\n";
  for (const auto& [code, reason] : coverage.excluded) text << "  " << code << ": " << reason << '\n';

  std::ostringstream predictions;
  predictions << "country_i,country_j,ln_btv_emp,ln_btv_pred\n";
  std::ostringstream countries_csv;
  countries_csv << "country_code,partners,bilateral_sum_usd,estimated_usd,trade_value_usd\n";
  try {
    const auto fit = fit_gravity(recon.samples, GravityVariant::Base);
    for (const auto& s : recon.samples) {
      predictions << s.country_i << ',' << s.country_j << ',' << format_double(s.ln_btv) << ','
                  << format_double(predict_ln_btv(fit, GravityVariant::Base, s)) << '\n';
    }
    const auto estimate = estimate_country_trade(fit, GravityVariant::Base, recon.samples, retained);
    for (const auto& c : estimate.countries) {
      const auto* e = ws.econ_for(c.country_code);
      countries_csv << c.country_code << ',' << c.partners << ',' << format_double(c.empirical_usd)
                    << ',' << format_double(c.estimated_usd) << ','
                    << (e && e->trade_value_usd ? format_double(*e->trade_value_usd) : std::string())
                    << '\n';
    }
    text << "base model on " << recon.samples.size() << " partner pairs: adjusted R2 "
         << format_fixed(fit.adjusted_r2, 3) << "\n"
         << "country totals (sum of exp(fitted ln BTV), no smearing correction): Pearson r "
         << format_fixed(estimate.pearson_r, 3) << ", adjusted R2 "
         << format_fixed(estimate.adjusted_r2, 3) << " over " << estimate.countries.size()
         << " countries\n";
  } catch (const Error& e) {
    text << "country reconstruction not fitted: " << e.what() << '\n';
    ws.warnings().push_back(std::string("country reconstruction not fitted: ") + e.what());
  }
  emit(ws, result, "pair_predictions.csv", predictions.str());
  emit(ws, result, "country_trade.csv", countries_csv.str());
  emit(ws, result, "gravity_summary.txt", text.str());

  result.summary += "gravity: " + std::to_string(common.samples.size()) + " pairs, " +
                    std::to_string(variants.size()) + " variants; reconstruction over " +
                    std::to_string(coverage.retained.size()) + " countries\n";
}

CommandResult finish(Workspace& ws, CommandResult result) {
  result.warnings = ws.warnings();
  return result;
}

}  // namespace

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "schemes=";
  for (const auto s : schemes) out << to_string(s) << ',';
  out << ";lmax=";
  for (const int l : l_max) out << l << ',';
  out << ";vif=" << format_double(vif_threshold) << ";dependent=" << to_string(dependent)
      << ";variants=";
  for (const auto v : effective_variants(*this)) out << to_string(v) << ',';
  out << ";coverage=" << format_double(coverage) << ";seed=" << seed << ";strict=" << strict
      << ";log_response=" << log_response;
  return out.str();
}

CommandResult cmd_build(const RunConfig& config) {
  Workspace ws(config, {});
  CommandResult result;
  run_build(ws, result);
  return finish(ws, std::move(result));
}

CommandResult cmd_indices(const RunConfig& config) {
  Workspace ws(config, {});
  CommandResult result;
  run_indices(ws, result);
  return finish(ws, std::move(result));
}

CommandResult cmd_regress(const RunConfig& config) {
  Workspace ws(config, {true, false, config.dependent == Dependent::TradeChange});
  CommandResult result;
  run_regress(ws, result);
  return finish(ws, std::move(result));
}

CommandResult cmd_gravity(const RunConfig& config) {
  if (!(config.coverage > 0.0 && config.coverage <= 1.0)) {
    throw Error("--coverage must lie in (0, 1]");
  }
  Workspace ws(config, {true, true, false});
  CommandResult result;
  run_gravity(ws, result);
  return finish(ws, std::move(result));
}

CommandResult cmd_report(const RunConfig& config) {
  Workspace ws(config, {true, true, config.dependent == Dependent::TradeChange});
  CommandResult result;
  run_build(ws, result);
  run_indices(ws, result);
  run_regress(ws, result);
  run_gravity(ws, result);
  return finish(ws, std::move(result));
}

CommandResult cmd_gen_fixture(const FixtureParams& params, const fs::path& out) {
  const auto fixture = generate_fixture(params);
  CommandResult result;
  result.written = write_fixture(fixture, out);
  result.summary = "fixture: " + std::to_string(fixture.ports.size()) + " ports, " +
                   std::to_string(params.countries) + " countries, " +
                   std::to_string(fixture.routes.size()) + " routes, " +
                   std::to_string(fixture.bilateral.size()) + " bilateral pairs (seed " +
                   std::to_string(params.seed) + ")\n";
  return result;
}

}  // namespace glsn
