#include "glsn/fixture.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "glsn/error.hpp"
#include "glsn/format.hpp"
#include "glsn/graph.hpp"
#include "glsn/gravity.hpp"
#include "glsn/indices.hpp"
#include "json.hpp"

namespace glsn {

namespace {

class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  // Box-Muller; one variate per call.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

std::string country_code(std::size_t index) {
  std::string code = "X";
  code.push_back(static_cast<char>('A' + index / 26));
  code.push_back(static_cast<char>('A' + index % 26));
  return code;
}

std::string padded(const char* prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

// Rounds through the decimal text so the written value is short and exact.
double round_to(double value, int decimals) {
  const std::string text = format_fixed(value, decimals);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

}  // namespace

Fixture generate_fixture(const FixtureParams& params) {
  if (params.countries < 2) {
    throw Error("fixture needs at least 2 countries (international routes are impossible otherwise)");
  }
  if (params.countries > 26 * 26) throw Error("fixture supports at most 676 countries");
  if (params.ports < params.countries) throw Error("fixture needs at least one port per country");
  if (params.routes < 1) throw Error("fixture needs at least one route");
  if (params.noise < 0.0) throw Error("fixture noise must be non-negative");

  FixtureRng rng(params.seed);
  Fixture fx;
  fx.params = params;
  const std::size_t width = std::max<std::size_t>(3, std::to_string(params.ports).size());
  for (std::size_t k = 0; k < params.ports; ++k) {
    fx.ports.push_back({padded("P", k + 1, width), "Port " + std::to_string(k + 1),
                        country_code(k % params.countries)});
  }

  const std::size_t max_len = std::min<std::size_t>(8, params.ports);
  const std::size_t min_len = std::min<std::size_t>(3, max_len);
  const std::size_t route_width = std::max<std::size_t>(3, std::to_string(params.routes).size());
  std::vector<std::size_t> pool(params.ports);
  for (std::size_t r = 0; r < params.routes; ++r) {
    const std::size_t len = min_len + rng.uniform_index(max_len - min_len + 1);
    std::vector<std::size_t> chosen;
    for (;;) {
      for (std::size_t k = 0; k < pool.size(); ++k) pool[k] = k;
      for (std::size_t k = 0; k < len; ++k) {
        std::swap(pool[k], pool[k + rng.uniform_index(pool.size() - k)]);
      }
      chosen.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(len));
      const auto first_country = fx.ports[chosen.front()].country_code;
      if (std::any_of(chosen.begin(), chosen.end(), [&](std::size_t p) {
            return fx.ports[p].country_code != first_country;
          })) {
        break;
      }
    }
    ServiceRoute route;
    route.route_id = padded("R", r + 1, route_width);
    for (const auto p : chosen) route.port_calls.push_back(fx.ports[p].port_id);
    if (rng.uniform() < 0.3) route.port_calls.push_back(route.port_calls.front());
    route.capacity_teu = std::round(rng.uniform(1000.0, 20000.0));
    fx.routes.push_back(std::move(route));
  }

  // Planted country-level trade from the generated network.
  const Glsn g = build_glsn(fx.routes, fx.ports, WeightScheme::Unweighted);
  const auto gb = glsn_betweenness(g, 2);
  auto& planted = fx.planted;
  planted.trade_noise = params.noise;
  planted.gravity_sigma = 2.0 * params.noise;

  const std::size_t nc = g.country_count();
  std::vector<double> lsci(nc);
  for (auto& v : lsci) v = round_to(rng.uniform(5.0, 60.0), 4);
  std::vector<double> base(nc);
  double mean_base = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    base[c] = planted.trade_intercept + planted.trade_gb * gb[c] + planted.trade_lsci * lsci[c];
    mean_base += base[c] / static_cast<double>(nc);
  }
  std::vector<double> trade(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const double value = base[c] + params.noise * mean_base * rng.normal();
    trade[c] = 1e9 * std::max(value, 0.05 * mean_base);
  }

  std::vector<double> gdp(nc), lat(nc), lon(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    CountryEcon e;
    e.country_code = g.countries()[c];
    e.trade_value_usd = trade[c];
    const double share = rng.uniform(0.35, 0.65);
    e.export_usd = trade[c] * share;
    e.import_usd = trade[c] - *e.export_usd;
    gdp[c] = trade[c] * rng.uniform(1.5, 4.0);
    e.gdp_usd = gdp[c];
    e.lsci = lsci[c];
    lat[c] = round_to(rng.uniform(-60.0, 60.0), 4);
    lon[c] = round_to(rng.uniform(-180.0, 180.0), 4);
    e.capital_lat = lat[c];
    e.capital_lon = lon[c];
    fx.econ.push_back(std::move(e));
  }

  // Gravity law without the intercept, then calibrate the intercept so that
  // roughly three quarters of the countries pass a 90% coverage filter.
  struct PairDraw {
    std::size_t i, j;
    double ln_core;
    bool has_lsbci;
    double lsbci;
  };
  std::vector<PairDraw> pairs;
  std::vector<double> raw_sum(nc, 0.0);
  for (std::size_t i = 0; i < nc; ++i) {
    for (std::size_t j = i + 1; j < nc; ++j) {
      const double d = great_circle_km(lat[i], lon[i], lat[j], lon[j]);
      const double ln_d = std::log(std::max(d, 1.0));
      const double ln_core = planted.gravity_b1 * (std::log(gdp[i]) + std::log(gdp[j])) +
                             planted.gravity_b2 * ln_d + planted.gravity_sigma * rng.normal();
      const bool has_lsbci = rng.uniform() >= 0.1;
      const double lsbci = std::sqrt(*fx.econ[i].lsci * *fx.econ[j].lsci) / 10.0 *
                           std::exp(0.1 * rng.normal());
      pairs.push_back({i, j, ln_core, has_lsbci, round_to(lsbci, 6)});
      raw_sum[i] += std::exp(ln_core);
      raw_sum[j] += std::exp(ln_core);
    }
  }
  std::vector<double> ratio(nc);
  for (std::size_t c = 0; c < nc; ++c) ratio[c] = trade[c] / raw_sum[c];
  std::sort(ratio.begin(), ratio.end());
  const double q = ratio[(3 * (nc - 1)) / 4];
  planted.gravity_b0 = std::log(0.9 * q * 1.0001);

  for (const auto& p : pairs) {
    BilateralRecord b;
    b.country_i = g.countries()[p.i];
    b.country_j = g.countries()[p.j];
    b.btv_usd = std::exp(planted.gravity_b0 + p.ln_core);
    if (p.has_lsbci) b.lsbci = p.lsbci;
    fx.bilateral.push_back(std::move(b));
  }
  return fx;
}

std::vector<std::filesystem::path> write_fixture(const Fixture& fixture,
                                                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto open = [&](const char* name) {
    written.push_back(dir / name);
    std::ofstream out(written.back(), std::ios::binary);
    if (!out) throw Error("cannot write " + written.back().string());
    return out;
  };
  {
    auto out = open("routes.csv");
    write_routes_csv(out, fixture.routes);
  }
  {
    auto out = open("routes_meta.csv");
    write_routes_meta_csv(out, fixture.routes);
  }
  {
    auto out = open("ports.csv");
    write_ports_csv(out, fixture.ports);
  }
  {
    auto out = open("countries.csv");
    write_country_econ_csv(out, fixture.econ);
  }
  {
    auto out = open("bilateral.csv");
    write_bilateral_csv(out, fixture.bilateral);
  }
  {
    const auto& p = fixture.planted;
    nlohmann::ordered_json doc;
    doc["seed"] = fixture.params.seed;
    doc["ports"] = fixture.params.ports;
    doc["countries"] = fixture.params.countries;
    doc["routes"] = fixture.params.routes;
    doc["noise"] = format_double(fixture.params.noise);
    doc["trade_model"] = {
        {"formula", "trade_value_usd = 1e9 * (intercept + gc * Gc + gb * Gb + noise * mean_base * z)"},
        {"gc_definition", "unweighted GLSN connectivity"},
        {"gb_definition", "GLSN betweenness, L_max = 2"},
        {"intercept", format_double(p.trade_intercept)},
        {"gb", format_double(p.trade_gb)},
        {"lsci", format_double(p.trade_lsci)},
        {"noise", format_double(p.trade_noise)}};
    doc["gravity_model"] = {
        {"formula", "ln btv = b0 + b1 * ln(gdp_i * gdp_j) + b2 * ln(d_ij km) + sigma * z"},
        {"b0", format_double(p.gravity_b0)},
        {"b1", format_double(p.gravity_b1)},
        {"b2", format_double(p.gravity_b2)},
        {"sigma", format_double(p.gravity_sigma)}};
    auto out = open("planted_model.json");
    out << doc.dump(2) << '\n';
  }
  return written;
}

}  // namespace glsn
