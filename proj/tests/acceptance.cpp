// Acceptance gate: one PASS/FAIL line per criterion.
//
// Usage: glsn_acceptance <fixture-dir> <golden-dir> [--known-red <id>]...
// Exit status is 0 when every criterion passes except those listed with
// --known-red, which still print FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glsn/csv.hpp"
#include "glsn/econometrics.hpp"
#include "glsn/gravity.hpp"
#include "glsn/indices.hpp"
#include "glsn/ingest.hpp"
#include "glsn/oracle.hpp"
#include "glsn/pipeline.hpp"
#include "glsn/summation.hpp"
#include "support/temp_dir.hpp"
#include "support/test_graphs.hpp"

using namespace glsn;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

/// The shared random-graph suite: 200 graphs, n <= 12, p = 0.3, 2-4 countries.
std::vector<Glsn> graph_suite() {
  std::vector<Glsn> suite;
  testing::TestRng rng(20240601);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 3 + static_cast<std::size_t>(k % 10);
    const std::size_t countries = 2 + static_cast<std::size_t>(k % 3);
    suite.push_back(testing::random_graph(rng, n, 0.3, countries));
  }
  return suite;
}

std::vector<int> hop_distances(const Glsn& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<NodeId> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop();
    for (const NodeId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push(v);
      }
    }
  }
  return dist;
}

Outcome gb_oracle(const std::vector<Glsn>& suite) {
  const auto start = Clock::now();
  double worst = 0.0;
  for (const auto& g : suite) {
    const auto all = glsn_betweenness(g, kReportedLmax);
    for (std::size_t k = 0; k < kReportedLmax.size(); ++k) {
      const auto expected = brute_force_oracle(g, OracleMode::GlsnBetweenness, kReportedLmax[k]);
      for (std::size_t c = 0; c < expected.size(); ++c) {
        worst = std::max(worst, std::abs(all[k][c] - expected[c]));
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "max |diff| " << worst << " over 200 graphs x L_max 2..5, " << elapsed << " s";
  return {worst <= 1e-9 && elapsed < 30.0, detail.str()};
}

Glsn analytic_graph(const std::string& shape, std::size_t n) {
  std::vector<testing::PortSpec> ports;
  std::vector<std::pair<std::string, std::string>> edges;
  const auto id = [](std::size_t k) { return "P" + std::string(k < 10 ? "0" : "") + std::to_string(k); };
  for (std::size_t k = 0; k < n; ++k) ports.push_back({id(k), "C" + std::to_string(k % 3)});
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const bool take = shape == "complete" || (shape == "path" && b == a + 1) || (shape == "star" && a == 0);
      if (take) edges.emplace_back(id(a), id(b));
    }
  }
  return testing::make_graph(ports, edges);
}

Outcome freeman_oracle(const std::vector<Glsn>& suite) {
  double worst = 0.0;
  for (const auto& g : suite) {
    const auto b = port_betweenness(g);
    const auto expected = brute_force_oracle(g, OracleMode::FreemanBetweenness);
    for (std::size_t k = 0; k < b.size(); ++k) worst = std::max(worst, std::abs(b[k] - expected[k]));
  }
  std::size_t analytic_misses = 0;
  for (std::size_t n = 2; n <= 15; ++n) {
    const auto path = port_betweenness(analytic_graph("path", n));
    const auto star = port_betweenness(analytic_graph("star", n));
    const auto complete = port_betweenness(analytic_graph("complete", n));
    for (std::size_t k = 0; k < n; ++k) {
      if (path[k] != static_cast<double>(k * (n - 1 - k))) ++analytic_misses;
      const double leaves = static_cast<double>(n - 1);
      if (star[k] != (k == 0 ? leaves * (leaves - 1.0) / 2.0 : 0.0)) ++analytic_misses;
      if (complete[k] != 0.0) ++analytic_misses;
    }
  }
  std::ostringstream detail;
  detail << "max |diff| " << worst << "; analytic path/star/complete n=2..15 mismatches "
         << analytic_misses;
  return {worst <= 1e-9 && analytic_misses == 0, detail.str()};
}

Outcome gb_sum_invariant(const std::vector<Glsn>& suite) {
  std::size_t violations = 0;
  for (const auto& g : suite) {
    const auto gb = glsn_betweenness(g, 2);
    // Per-country values like 13/3 and 11/3 are each correctly rounded, so
    // only an error-free sum of them can land exactly on the integer.
    CompensatedSum total;
    for (const double v : gb) total += v;
    std::size_t pairs = 0;
    for (NodeId s = 0; s < g.node_count(); ++s) {
      const auto dist = hop_distances(g, s);
      for (NodeId t = s + 1; t < g.node_count(); ++t) {
        const auto cs = g.country_of(s);
        const auto ct = g.country_of(t);
        if (cs == ct || dist[t] != 2) continue;
        const auto ns = g.neighbors(s);
        const bool valid = std::any_of(ns.begin(), ns.end(), [&](NodeId m) {
          const auto nm = g.neighbors(m);
          return g.country_of(m) != cs && g.country_of(m) != ct &&
                 std::find(nm.begin(), nm.end(), t) != nm.end();
        });
        if (valid) ++pairs;
      }
    }
    if (total.value() != static_cast<double>(pairs)) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " of 200 graphs differ"};
}

Outcome monotonicity(const std::vector<Glsn>& suite) {
  std::size_t violations = 0;
  const std::vector<int> ls = {2, 3, 4, 5, 6, 7};
  for (const auto& g : suite) {
    const auto all = glsn_betweenness(g, ls);
    for (std::size_t k = 1; k < ls.size(); ++k) {
      for (std::size_t c = 0; c < all[k].size(); ++c) {
        if (all[k][c] < all[k - 1][c] - 1e-12) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " decreases across L_max 2..7"};
}

Outcome formula_spot_checks() {
  const double a = aic(10, 10.0, 2);
  const double r = adjusted_r2(0.5, 11, 1);
  DesignMatrix d;
  d.names = {"x"};
  d.columns = {{1.0, 4.0, 2.0, 8.0}};
  d.response_name = "y";
  d.response = {1.0, 2.0, 3.0, 4.0};
  const double v = vif(d).at(0);
  const double single = ols_fit(d).vif.at(0);
  std::ostringstream detail;
  detail << "AIC " << a << ", adjusted R2 " << r << ", single-variable VIF " << v;
  return {a == 4.0 && std::abs(r - 4.0 / 9.0) <= 1e-10 && v == 1.0 && single == 1.0, detail.str()};
}

Outcome regression_recovery() {
  const auto start = Clock::now();
  int covered = 0;
  int selected = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    testing::TestRng rng(seed);
    DesignMatrix d;
    d.response_name = "y";
    d.names = {"x1", "x2", "noise1", "noise2"};
    d.columns.assign(4, std::vector<double>(200));
    for (auto& column : d.columns) {
      for (auto& v : column) v = rng.normal();
    }
    for (std::size_t r = 0; r < 200; ++r) {
      d.response.push_back(0.6 * d.columns[0][r] + 0.3 * d.columns[1][r] + 0.1 * rng.normal());
    }
    const std::size_t planted[] = {0, 1};
    const auto fit = ols_fit(d.select(planted));
    const auto inside = [](const Coefficient& c, double truth) {
      return c.ci95.lo <= truth && truth <= c.ci95.hi;
    };
    if (inside(fit.coefficient("x1"), 0.6) && inside(fit.coefficient("x2"), 0.3)) ++covered;
    const auto sel = select_model(d, {.vif_threshold = 5.0, .standardize = true});
    if (sel.selected() && sel.selected()->variables == std::vector<std::string>{"x1", "x2"}) {
      ++selected;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << "CI coverage " << covered << "/100, exact {x1,x2} verdict " << selected << "/100, "
         << elapsed << " s";
  return {covered >= 90 && selected >= 90 && elapsed < 60.0, detail.str()};
}

Outcome gravity_identifiability() {
  testing::TestRng rng(314);
  std::vector<CountryPairSample> pairs;
  for (int k = 0; k < 300; ++k) {
    CountryPairSample s;
    s.country_i = "A" + std::to_string(k);
    s.country_j = "B" + std::to_string(k);
    s.ln_gdp_product = 45.0 + 4.0 * rng.normal();
    s.ln_distance = std::log(200.0 + 19000.0 * rng.uniform());
    s.ln_btv = 1.0 + 0.8 * s.ln_gdp_product - 1.1 * s.ln_distance;
    s.btv_usd = std::exp(s.ln_btv);
    pairs.push_back(s);
  }
  const auto fit = fit_gravity(pairs, GravityVariant::Base);
  const double e0 = std::abs(fit.coefficients[0].estimate - 1.0);
  const double e1 = std::abs(fit.coefficients[1].estimate - 0.8);
  const double e2 = std::abs(fit.coefficients[2].estimate + 1.1);
  const double antipodal = great_circle_km(0.0, 0.0, 0.0, 180.0);
  std::ostringstream detail;
  detail << "coefficient errors " << e0 << ", " << e1 << ", " << e2 << "; antipodal "
         << std::setprecision(9) << antipodal << " km";
  return {std::max({e0, e1, e2}) <= 1e-8 && std::abs(antipodal - 20015.09) <= 0.01, detail.str()};
}

RunConfig fixture_config(const fs::path& fixture, const fs::path& out) {
  RunConfig c;
  c.routes = fixture / "routes.csv";
  c.ports = fixture / "ports.csv";
  c.countries = fixture / "countries.csv";
  c.bilateral = fixture / "bilateral.csv";
  c.out = out;
  return c;
}

Outcome end_to_end(const fs::path& fixture, const fs::path& golden) {
  const auto start = Clock::now();
  std::size_t compared = 0;
  std::vector<std::string> mismatched;
  for (const char* threads : {"1", "4"}) {
    testing::TempDir out;
    setenv("GLSN_THREADS", threads, 1);
    cmd_report(fixture_config(fixture, out.path()));
    for (const auto& entry : fs::directory_iterator(golden)) {
      const auto name = entry.path().filename().string();
      ++compared;
      if (testing::slurp(entry.path()) != testing::slurp(out / name)) {
        mismatched.push_back(name + "@" + threads);
      }
    }
    std::size_t produced = 0;
    for ([[maybe_unused]] const auto& entry : fs::directory_iterator(out.path())) ++produced;
    if (produced != static_cast<std::size_t>(std::distance(fs::directory_iterator(golden), {}))) {
      mismatched.push_back(std::string("file count@") + threads);
    }
  }
  unsetenv("GLSN_THREADS");
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << compared << " golden comparisons, " << mismatched.size() << " mismatches, " << elapsed
         << " s";
  for (const auto& m : mismatched) detail << " " << m;
  return {compared > 0 && mismatched.empty() && elapsed < 5.0, detail.str()};
}

template <typename T>
std::vector<T> load(const fs::path& path, std::vector<T> (*parse)(std::istream&, const std::string&)) {
  std::ifstream in(path, std::ios::binary);
  return parse(in, path.filename().string());
}

Outcome scale_invariance(const fs::path& fixture) {
  std::ifstream calls(fixture / "routes.csv"), meta(fixture / "routes_meta.csv");
  const auto routes = parse_routes(calls, &meta);
  const auto ports = load<Port>(fixture / "ports.csv", parse_ports);
  const auto econ = load<CountryEcon>(fixture / "countries.csv", parse_country_econ);
  const auto table = compute_index_table(build_glsn(routes, ports, WeightScheme::Unweighted), econ);

  DesignMatrix raw;
  raw.names = {"Gc", "Gb", "Fb", "L"};
  raw.columns.assign(4, {});
  raw.response_name = "Tv";
  for (const auto& row : table.rows) {
    const auto it = std::find_if(econ.begin(), econ.end(),
                                 [&](const CountryEcon& e) { return e.country_code == row.country_code; });
    if (it == econ.end() || !it->trade_value_usd || !row.lsci) continue;
    raw.columns[0].push_back(row.gc);
    raw.columns[1].push_back(row.gb.at(2));
    raw.columns[2].push_back(row.fb);
    raw.columns[3].push_back(*row.lsci);
    raw.response.push_back(*it->trade_value_usd);
  }
  const auto reference = select_model(raw);
  double worst = 0.0;
  bool verdicts_equal = true;
  for (std::size_t j = 0; j <= raw.n_vars(); ++j) {
    auto scaled = raw;
    auto& column = j < raw.n_vars() ? scaled.columns[j] : scaled.response;
    for (auto& v : column) v *= 1000.0;
    const auto sel = select_model(scaled);
    verdicts_equal = verdicts_equal && sel.verdict == reference.verdict;
    for (std::size_t k = 0; k < sel.table.size(); ++k) {
      const auto& a = *reference.table[k].report;
      const auto& b = *sel.table[k].report;
      worst = std::max({worst, std::abs(a.adjusted_r2 - b.adjusted_r2), std::abs(a.aic - b.aic),
                        std::abs(reference.table[k].max_vif - sel.table[k].max_vif)});
    }
  }
  std::ostringstream detail;
  detail << "max |diff| " << worst << " over every column and the response, verdicts "
         << (verdicts_equal ? "equal" : "differ");
  return {worst <= 1e-10 && verdicts_equal, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <fixture-dir> <golden-dir> [--known-red <id>]...\n", argv[0]);
    return 2;
  }
  const fs::path fixture = argv[1];
  const fs::path golden = argv[2];
  std::set<std::string> known_red;
  for (int k = 3; k + 1 < argc; k += 2) {
    if (std::string(argv[k]) == "--known-red") known_red.insert(argv[k + 1]);
  }

  const auto suite = graph_suite();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle_gb", [&] { return gb_oracle(suite); }},
      {"oracle_freeman", [&] { return freeman_oracle(suite); }},
      {"gb_sum_invariant", [&] { return gb_sum_invariant(suite); }},
      {"gb_monotonicity", [&] { return monotonicity(suite); }},
      {"formula_spot_checks", formula_spot_checks},
      {"regression_recovery", regression_recovery},
      {"gravity_identifiability", gravity_identifiability},
      {"end_to_end_determinism", [&] { return end_to_end(fixture, golden); }},
      {"scale_invariance", [&] { return scale_invariance(fixture); }},
  };

  int unexpected = 0;
  for (const auto& [id, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const bool known = known_red.contains(id);
    std::printf("%s %s: %s%s\n", outcome.pass ? "PASS" : "FAIL", id.c_str(), outcome.detail.c_str(),
                !outcome.pass && known ? " [known red]" : "");
    if (!outcome.pass && !known) ++unexpected;
    if (outcome.pass && known) {
      std::printf("NOTE %s passes but is listed as known red\n", id.c_str());
      ++unexpected;
    }
  }
  return unexpected == 0 ? 0 : 1;
}
