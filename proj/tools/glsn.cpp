// glsn: liner shipping network indices and trade-status regressions.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glsn/error.hpp"
#include "glsn/fixture.hpp"
#include "glsn/pipeline.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct Options {
  std::string routes, routes_meta, ports, countries, countries_later, bilateral, out = ".";
  std::string weighting = "none";
  std::string lmax = "2";
  double vif_threshold = 5.0;
  std::string dependent = "trade";
  std::string variant;
  double coverage = 0.9;
  std::uint64_t seed = 42;
  bool strict = false;
  bool log_response = false;

  glsn::RunConfig to_config() const {
    glsn::RunConfig c;
    c.routes = routes;
    c.routes_meta = routes_meta;
    c.ports = ports;
    c.countries = countries;
    c.countries_later = countries_later;
    c.bilateral = bilateral;
    c.out = out;
    c.schemes.clear();
    for (const auto& s : split_list(weighting)) c.schemes.push_back(glsn::parse_weight_scheme(s));
    c.l_max.clear();
    for (const auto& l : split_list(lmax)) {
      try {
        c.l_max.push_back(std::stoi(l));
      } catch (const std::exception&) {
        throw glsn::Error("--lmax: not an integer: '" + l + "'");
      }
    }
    c.vif_threshold = vif_threshold;
    c.dependent = glsn::parse_dependent(dependent);
    for (const auto& v : split_list(variant)) c.variants.push_back(glsn::parse_gravity_variant(v));
    c.coverage = coverage;
    c.seed = seed;
    c.strict = strict;
    c.log_response = log_response;
    return c;
  }
};

void add_pipeline_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--routes", o.routes, "Route calls CSV (route_id,seq,port_id) or routes JSON")
      ->required();
  cmd->add_option("--routes-meta", o.routes_meta,
                  "Route capacities CSV (default: routes_meta.csv next to --routes)");
  cmd->add_option("--ports", o.ports, "Ports CSV (port_id,name,country_code)")->required();
  cmd->add_option("--countries", o.countries, "Country economics CSV");
  cmd->add_option("--countries-later", o.countries_later,
                  "Later-year country economics CSV (for --dependent trade_change)");
  cmd->add_option("--bilateral", o.bilateral, "Bilateral trade CSV");
  cmd->add_option("--weighting", o.weighting,
                  "Edge weighting: none,one,inv_n1,inv_pairs,cap,cap_n1,cap_pairs (comma list; "
                  "first drives Gc)")
      ->capture_default_str();
  cmd->add_option("--lmax", o.lmax, "L_max values, e.g. 2,3,4,5 (first drives Gb)")
      ->capture_default_str();
  cmd->add_option("--vif-threshold", o.vif_threshold, "Admissibility threshold on max VIF")
      ->capture_default_str();
  cmd->add_option("--dependent", o.dependent,
                  "trade, export, import, net_export, gdp or trade_change")
      ->capture_default_str();
  cmd->add_option("--variant", o.variant,
                  "Gravity variants: base,lsbci,gb,lsbci_gb,gc,lsbci_gc (default: the first four)");
  cmd->add_option("--coverage", o.coverage, "Bilateral coverage threshold for reconstruction")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed recorded in the run config")->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_flag("--strict", o.strict, "Treat any dropped route as an error");
  cmd->add_flag("--log-response", o.log_response, "Regress the natural log of the response");
}

int report(const glsn::CommandResult& result) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << result.summary;
  for (const auto& p : result.written) std::cout << "wrote " << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liner shipping network indices and trade-status regressions"};
  app.set_version_flag("--version", std::string(glsn::tool_version()));
  app.require_subcommand(1);

  Options o;
  auto* build = app.add_subcommand("build", "Build GLSNs, write edge lists and stats.json");
  auto* indices = app.add_subcommand("indices", "Compute country indices (indices.csv)");
  auto* regress = app.add_subcommand("regress", "Exhaustive subset regression with AIC/VIF");
  auto* gravity = app.add_subcommand("gravity", "Gravity models and country trade reconstruction");
  auto* all = app.add_subcommand("report", "Run build, indices, regress and gravity");
  for (auto* cmd : {build, indices, regress, gravity, all}) add_pipeline_flags(cmd, o);

  glsn::FixtureParams fx;
  std::string fixture_out = "fixture";
  auto* gen = app.add_subcommand("gen-fixture", "Generate a synthetic dataset with planted models");
  gen->add_option("--seed", fx.seed, "Random seed")->capture_default_str();
  gen->add_option("--ports", fx.ports, "Number of ports")->capture_default_str();
  gen->add_option("--countries", fx.countries, "Number of countries")->capture_default_str();
  gen->add_option("--routes", fx.routes, "Number of service routes")->capture_default_str();
  gen->add_option("--noise", fx.noise, "Relative noise level (0 = noiseless)")->capture_default_str();
  gen->add_option("--out", fixture_out, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return report(glsn::cmd_gen_fixture(fx, fixture_out));
    const auto config = o.to_config();
    if (build->parsed()) return report(glsn::cmd_build(config));
    if (indices->parsed()) return report(glsn::cmd_indices(config));
    if (regress->parsed()) return report(glsn::cmd_regress(config));
    if (gravity->parsed()) return report(glsn::cmd_gravity(config));
    if (all->parsed()) return report(glsn::cmd_report(config));
  } catch (const glsn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
