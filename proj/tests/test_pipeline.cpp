#include <cmath>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "glsn/csv.hpp"
#include "glsn/error.hpp"
#include "glsn/fixture.hpp"
#include "glsn/indices.hpp"
#include "glsn/pipeline.hpp"
#include "json.hpp"
#include "support/temp_dir.hpp"

using namespace glsn;
using testing::slurp;
using testing::spit;
using testing::TempDir;
namespace fs = std::filesystem;

namespace {

RunConfig config_for(const fs::path& data, const fs::path& out) {
  RunConfig c;
  c.routes = data / "routes.csv";
  c.ports = data / "ports.csv";
  c.countries = data / "countries.csv";
  c.bilateral = data / "bilateral.csv";
  c.out = out;
  return c;
}

csv::Table read_table(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return csv::read(in, path.filename().string());
}

std::string cell(const csv::Table& t, std::size_t row, const std::string& column) {
  return t.rows().at(row).fields.at(*t.column(column));
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

void write_tiny_dataset(const fs::path& dir, const std::string& routes, const std::string& ports,
                        const std::string& meta = "route_id,capacity_teu\n") {
  spit(dir / "routes.csv", "route_id,seq,port_id\n" + routes);
  spit(dir / "routes_meta.csv", meta);
  spit(dir / "ports.csv", "port_id,name,country_code\n" + ports);
  spit(dir / "countries.csv",
       "country_code,trade_value_usd,export_usd,import_usd,gdp_usd,lsci,capital_lat,capital_lon\n");
  spit(dir / "bilateral.csv", "country_i,country_j,btv_usd,lsbci\n");
}

}  // namespace

TEST_CASE("gen-fixture is deterministic and seed dependent") {
  TempDir a, b, c;
  const auto written = cmd_gen_fixture({}, a.path()).written;
  CHECK(written.size() == 6);
  cmd_gen_fixture({}, b.path());
  cmd_gen_fixture({.seed = 43}, c.path());
  for (const auto* name : {"routes.csv", "routes_meta.csv", "ports.csv", "countries.csv",
                           "bilateral.csv", "planted_model.json"}) {
    CHECK(slurp(a / name) == slurp(b / name));
  }
  CHECK(slurp(a / "routes.csv") != slurp(c / "routes.csv"));

  const auto fx = generate_fixture({});
  CHECK(fx.ports.size() == 30);
  CHECK(fx.routes.size() == 12);
  CHECK(fx.econ.size() == 6);

  CHECK_THROWS_AS(generate_fixture({.countries = 1}), Error);
  CHECK_THROWS_AS(generate_fixture({.countries = 0}), Error);
  CHECK_THROWS_AS(generate_fixture({.ports = 3, .countries = 6}), Error);
}

TEST_CASE("build on the bundled fixture") {
  TempDir data, out;
  cmd_gen_fixture({}, data.path());
  auto config = config_for(data.path(), out.path());
  config.schemes = {WeightScheme::Unweighted, WeightScheme::CapN1};
  const auto result = cmd_build(config);
  CHECK(result.warnings.empty());

  std::ifstream in(out / "stats.json");
  const auto stats = nlohmann::json::parse(in);
  CHECK(stats["nodes"] == 30);
  CHECK(stats["countries"] == 6);
  const auto edges = read_table(out / "edges_none.csv");
  CHECK(stats["edges"] == edges.rows().size());
  CHECK(read_table(out / "edges_cap_n1.csv").rows().size() == edges.rows().size());
  CHECK(stats["provenance"].get<std::string>().rfind("glsn-trade ", 0) == 0);
  CHECK(slurp(out / "edges_none.csv").rfind("# glsn-trade ", 0) == 0);
}

TEST_CASE("build errors") {
  TempDir data, out;
  write_tiny_dataset(data.path(), "R1,1,A\nR1,2,B\n", "A,a,X\nB,b,Y\n");
  auto config = config_for(data.path(), out.path());
  config.schemes = {WeightScheme::CapN1};
  CHECK(error_of([&] { cmd_build(config); }).find("cap_n1") != std::string::npos);

  write_tiny_dataset(data.path(), "", "A,a,X\nB,b,Y\n");
  config.schemes = {WeightScheme::Unweighted};
  CHECK(error_of([&] { cmd_build(config); }).find("no retained routes") != std::string::npos);

  config.ports = data / "missing.csv";
  CHECK(error_of([&] { cmd_build(config); }).find("missing.csv") != std::string::npos);
}

TEST_CASE("single-country graphs have no GLSN betweenness") {
  // Every route in a one-country dataset is domestic, so the pipeline refuses
  // it; the index layer still defines the values.
  const std::vector<Port> ports = {{"A", "a", "X"}, {"B", "b", "X"}, {"C", "c", "X"}};
  const std::vector<ServiceRoute> routes = {{"R1", {"A", "B", "C"}, 1.0}};
  const auto table = compute_index_table(build_glsn(routes, ports, WeightScheme::One), {});
  for (const auto& [l, v] : table.rows.at(0).gb) CHECK(v == 0.0);
  CHECK(table.rows.at(0).gc == 0.0);
}

TEST_CASE("two countries joined by one edge") {
  TempDir data, out;
  write_tiny_dataset(data.path(), "R1,1,A\nR1,2,B\nR2,1,A\nR2,2,C\n",
                     "A,a,X\nB,b,Y\nC,c,X\n");
  cmd_indices(config_for(data.path(), out.path()));
  const auto t = read_table(out / "indices.csv");
  REQUIRE(t.rows().size() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (const auto* col : {"gb_l2", "gb_l3", "gb_l4", "gb_l5"}) CHECK(cell(t, r, col) == "0");
    CHECK(std::stod(cell(t, r, "gc")) > 0.0);
  }
}

TEST_CASE("regress on the bundled fixture") {
  TempDir data, out;
  cmd_gen_fixture({}, data.path());
  auto config = config_for(data.path(), out.path());
  const auto result = cmd_regress(config);
  const auto report = read_table(out / "regression_report.csv");
  CHECK(report.rows().size() == 15);
  CHECK(report.header() ==
        std::vector<std::string>{"variables", "adjusted_r2", "aic", "max_vif", "admissible"});
  CHECK(result.summary.find("15 subsets") != std::string::npos);
  for (const auto* name : {"coefficients.csv", "correlations.csv", "scatter.csv",
                           "regression_summary.txt"}) {
    CHECK(fs::exists(out / name));
  }

  config.dependent = Dependent::NetExport;
  CHECK_NOTHROW(cmd_regress(config));
  CHECK(read_table(out / "regression_report.csv").rows().size() == 15);

  config.dependent = Dependent::Gdp;
  config.log_response = true;
  CHECK_NOTHROW(cmd_regress(config));
  CHECK(slurp(out / "regression_summary.txt").find("dependent: gdp (natural log)") != std::string::npos);

  config.dependent = Dependent::TradeChange;
  CHECK_THROWS_AS(cmd_regress(config), Error);  // needs the later panel
}

TEST_CASE("regress recovers the planted subset on a larger fixture") {
  TempDir data, out;
  cmd_gen_fixture({.seed = 7, .ports = 200, .countries = 40, .routes = 80, .noise = 0.02},
                  data.path());
  const auto result = cmd_regress(config_for(data.path(), out.path()));
  CHECK(result.summary.find(": Gb+L") != std::string::npos);
}

TEST_CASE("regress needs enough complete countries") {
  TempDir data, out;
  write_tiny_dataset(data.path(), "R1,1,A\nR1,2,B\nR2,1,B\nR2,2,C\n", "A,a,X\nB,b,Y\nC,c,Z\n");
  spit(data / "countries.csv",
       "country_code,trade_value_usd,export_usd,import_usd,gdp_usd,lsci,capital_lat,capital_lon\n"
       "X,10,,,,1,,\nY,20,,,,2,,\nZ,30,,,,4,,\n");
  CHECK(error_of([&] { cmd_regress(config_for(data.path(), out.path())); })
            .find("complete data") != std::string::npos);
}

TEST_CASE("gravity on the bundled fixture") {
  TempDir data, out;
  cmd_gen_fixture({}, data.path());
  cmd_gravity(config_for(data.path(), out.path()));
  const auto report = read_table(out / "gravity_report.csv");
  REQUIRE(report.rows().size() == 4);
  CHECK(cell(report, 0, "variant") == "base");
  CHECK(cell(report, 1, "variant") == "lsbci");
  CHECK(cell(report, 2, "variant") == "gb");
  CHECK(cell(report, 3, "variant") == "lsbci_gb");
  CHECK(fs::exists(out / "pair_predictions.csv"));
  CHECK(fs::exists(out / "country_trade.csv"));

  auto config = config_for(data.path(), out.path());
  config.coverage = 0.0;
  CHECK_THROWS_AS(cmd_gravity(config), Error);
}

TEST_CASE("gravity on a noiseless fixture is exact") {
  TempDir data, out;
  cmd_gen_fixture({.seed = 5, .ports = 60, .countries = 12, .routes = 30, .noise = 0.0},
                  data.path());
  auto config = config_for(data.path(), out.path());
  config.variants = {GravityVariant::Base};
  cmd_gravity(config);
  const auto report = read_table(out / "gravity_report.csv");
  REQUIRE(report.rows().size() == 1);
  CHECK(std::abs(std::stod(cell(report, 0, "adjusted_r2")) - 1.0) <= 1e-8);
}

TEST_CASE("report output does not depend on the worker count") {
  TempDir data, one, four;
  cmd_gen_fixture({.seed = 3, .ports = 80, .countries = 10, .routes = 30}, data.path());
  setenv("GLSN_THREADS", "1", 1);
  const auto written = cmd_report(config_for(data.path(), one.path())).written;
  setenv("GLSN_THREADS", "4", 1);
  cmd_report(config_for(data.path(), four.path()));
  unsetenv("GLSN_THREADS");
  CHECK(written.size() >= 12);
  for (const auto& path : written) {
    CHECK(slurp(path) == slurp(four / path.filename().string()));
  }
}
