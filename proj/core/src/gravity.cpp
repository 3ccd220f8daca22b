#include "glsn/gravity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "glsn/error.hpp"
#include "glsn/format.hpp"
#include "glsn/summation.hpp"

namespace glsn {

double great_circle_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double phi1 = lat1 * kDeg;
  const double phi2 = lat2 * kDeg;
  const double dphi = (lat2 - lat1) * kDeg;
  const double dlambda = (lon2 - lon1) * kDeg;
  const double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
                   std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

std::string_view to_string(GravityVariant variant) {
  switch (variant) {
    case GravityVariant::Base: return "base";
    case GravityVariant::Lsbci: return "lsbci";
    case GravityVariant::Gb: return "gb";
    case GravityVariant::LsbciGb: return "lsbci_gb";
    case GravityVariant::Gc: return "gc";
    case GravityVariant::LsbciGc: return "lsbci_gc";
  }
  return "unknown";
}

GravityVariant parse_gravity_variant(std::string_view text) {
  for (const auto v : {GravityVariant::Base, GravityVariant::Lsbci, GravityVariant::Gb,
                       GravityVariant::LsbciGb, GravityVariant::Gc, GravityVariant::LsbciGc}) {
    if (to_string(v) == text) return v;
  }
  throw Error("unknown gravity variant '" + std::string(text) +
              "' (expected base, lsbci, gb, lsbci_gb, gc or lsbci_gc)");
}

PairRequirements requirements_of(GravityVariant variant) {
  switch (variant) {
    case GravityVariant::Base: return {};
    case GravityVariant::Lsbci: return {true, false, false};
    case GravityVariant::Gb: return {false, true, false};
    case GravityVariant::LsbciGb: return {true, true, false};
    case GravityVariant::Gc: return {false, false, true};
    case GravityVariant::LsbciGc: return {true, false, true};
  }
  return {};
}

std::vector<std::string> gravity_regressors(GravityVariant variant) {
  std::vector<std::string> names = {"ln_gdp_product", "ln_distance"};
  const auto req = requirements_of(variant);
  if (req.lsbci) names.emplace_back("ln_lsbci");
  if (req.gb) names.emplace_back("ln_gb_product");
  if (req.gc) names.emplace_back("ln_gc_product");
  return names;
}

std::vector<double> CountryPairSample::regressors(GravityVariant variant) const {
  std::vector<double> values = {ln_gdp_product, ln_distance};
  const auto req = requirements_of(variant);
  const auto need = [&](const std::optional<double>& v, const char* what) {
    if (!v) throw Error("pair " + country_i + "/" + country_j + " lacks " + what);
    values.push_back(*v);
  };
  if (req.lsbci) need(ln_lsbci, "ln_lsbci");
  if (req.gb) need(ln_gb_product, "ln_gb_product");
  if (req.gc) need(ln_gc_product, "ln_gc_product");
  return values;
}

PairAssembly assemble_pairs(std::span<const CountryEcon> econ,
                            std::span<const BilateralRecord> bilateral,
                            const CountryIndexTable& indices, const Glsn& g,
                            const PairRequirements& requirements, const PairOptions& options) {
  std::unordered_map<std::string, const CountryEcon*> econ_of;
  for (const auto& e : econ) econ_of.emplace(e.country_code, &e);

  std::set<std::pair<std::string, std::string>> connected;
  for (const auto& e : g.edges()) {
    auto a = g.countries()[g.country_of(e.u)];
    auto b = g.countries()[g.country_of(e.v)];
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    connected.emplace(std::move(a), std::move(b));
  }

  const auto positive = [](std::optional<double> v) { return v && *v > 0.0; };
  const auto gb_of = [&](const std::string& code) -> std::optional<double> {
    const auto* row = indices.find(code);
    if (row == nullptr) return std::nullopt;
    const auto it = row->gb.find(options.l_max);
    if (it == row->gb.end()) return std::nullopt;
    return it->second;
  };
  const auto gc_of = [&](const std::string& code) -> std::optional<double> {
    const auto* row = indices.find(code);
    if (row == nullptr) return std::nullopt;
    return row->gc;
  };

  PairAssembly out;
  for (const auto& record : bilateral) {
    std::string ci = record.country_i;
    std::string cj = record.country_j;
    if (cj < ci) std::swap(ci, cj);
    const auto reject = [&](const char* reason) { ++out.excluded[reason]; };

    if (options.anchor_countries && !options.anchor_countries->contains(ci) &&
        !options.anchor_countries->contains(cj)) {
      reject("not_anchored");
      continue;
    }
    if (!(record.btv_usd > 0.0)) {
      reject("nonpositive_btv");
      continue;
    }
    const auto ei = econ_of.find(ci);
    const auto ej = econ_of.find(cj);
    if (ei == econ_of.end() || ej == econ_of.end() || !positive(ei->second->gdp_usd) ||
        !positive(ej->second->gdp_usd)) {
      reject("missing_gdp");
      continue;
    }
    const auto& a = *ei->second;
    const auto& b = *ej->second;
    if (!a.capital_lat || !a.capital_lon || !b.capital_lat || !b.capital_lon) {
      reject("missing_coordinates");
      continue;
    }
    const double d = great_circle_km(*a.capital_lat, *a.capital_lon, *b.capital_lat,
                                     *b.capital_lon);
    if (!(d > 0.0)) {
      reject("zero_distance");
      continue;
    }
    if (options.require_connection && !connected.contains({ci, cj})) {
      reject("not_connected");
      continue;
    }
    if (requirements.lsbci && !positive(record.lsbci)) {
      reject("missing_lsbci");
      continue;
    }
    const auto gb_i = gb_of(ci);
    const auto gb_j = gb_of(cj);
    if (requirements.gb && !(positive(gb_i) && positive(gb_j))) {
      reject("nonpositive_gb");
      continue;
    }
    const auto gc_i = gc_of(ci);
    const auto gc_j = gc_of(cj);
    if (requirements.gc && !(positive(gc_i) && positive(gc_j))) {
      reject("nonpositive_gc");
      continue;
    }

    CountryPairSample sample;
    sample.country_i = ci;
    sample.country_j = cj;
    sample.btv_usd = record.btv_usd;
    sample.ln_gdp_product = std::log(*a.gdp_usd) + std::log(*b.gdp_usd);
    sample.ln_distance = std::log(d);
    sample.ln_btv = std::log(record.btv_usd);
    if (positive(record.lsbci)) sample.ln_lsbci = std::log(*record.lsbci);
    if (positive(gb_i) && positive(gb_j)) sample.ln_gb_product = std::log(*gb_i) + std::log(*gb_j);
    if (positive(gc_i) && positive(gc_j)) sample.ln_gc_product = std::log(*gc_i) + std::log(*gc_j);
    out.samples.push_back(std::move(sample));
  }
  std::sort(out.samples.begin(), out.samples.end(), [](const auto& x, const auto& y) {
    return x.country_i != y.country_i ? x.country_i < y.country_i : x.country_j < y.country_j;
  });
  return out;
}

PairAssembly assemble_pairs(std::span<const CountryEcon> econ,
                            std::span<const BilateralRecord> bilateral,
                            const CountryIndexTable& indices, const Glsn& g,
                            GravityVariant variant, const PairOptions& options) {
  return assemble_pairs(econ, bilateral, indices, g, requirements_of(variant), options);
}

RegressionReport fit_gravity(std::span<const CountryPairSample> samples, GravityVariant variant) {
  DesignMatrix design;
  design.names = gravity_regressors(variant);
  design.columns.assign(design.names.size(), {});
  design.response_name = "ln_btv";
  for (const auto& s : samples) {
    const auto x = s.regressors(variant);
    for (std::size_t j = 0; j < x.size(); ++j) design.columns[j].push_back(x[j]);
    design.response.push_back(s.ln_btv);
  }
  return ols_fit(design);
}

double predict_ln_btv(const RegressionReport& fit, GravityVariant variant,
                      const CountryPairSample& sample) {
  const auto x = sample.regressors(variant);
  if (fit.coefficients.size() != x.size() + 1) {
    throw Error("gravity fit does not match variant " + std::string(to_string(variant)));
  }
  double value = fit.coefficients[0].estimate;
  for (std::size_t j = 0; j < x.size(); ++j) value += fit.coefficients[j + 1].estimate * x[j];
  return value;
}

double predict_btv(const RegressionReport& fit, GravityVariant variant,
                   const CountryPairSample& sample) {
  return std::exp(predict_ln_btv(fit, variant, sample));
}

TradeReconstruction estimate_country_trade(const RegressionReport& fit, GravityVariant variant,
                                           std::span<const CountryPairSample> samples,
                                           const std::optional<std::set<std::string>>& countries) {
  struct Totals {
    std::size_t partners = 0;
    CompensatedSum empirical;
    CompensatedSum estimated;
  };
  std::map<std::string, Totals> totals;
  for (const auto& s : samples) {
    const double predicted = predict_btv(fit, variant, s);
    for (const auto* code : {&s.country_i, &s.country_j}) {
      if (countries && !countries->contains(*code)) continue;
      auto& t = totals[*code];
      ++t.partners;
      t.empirical += s.btv_usd;
      t.estimated += predicted;
    }
  }
  TradeReconstruction out;
  std::vector<double> empirical, estimated;
  for (const auto& [code, t] : totals) {
    out.countries.push_back({code, t.partners, t.empirical.value(), t.estimated.value()});
    empirical.push_back(t.empirical.value());
    estimated.push_back(t.estimated.value());
  }
  if (empirical.size() >= 3) {
    try {
      const auto c = pearson(empirical, estimated);
      out.pearson_r = c.r;
      out.adjusted_r2 = adjusted_r2(c.r * c.r, c.n, 1);
    } catch (const Error&) {
      // Constant totals: correlation undefined, left as NaN.
    }
  }
  return out;
}

CoverageResult coverage_filter(std::span<const CountryEcon> econ,
                               std::span<const BilateralRecord> bilateral, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error("coverage threshold must lie in (0, 1], got " + format_double(threshold));
  }
  std::map<std::string, CompensatedSum> partner_sum;
  for (const auto& b : bilateral) {
    if (!(b.btv_usd > 0.0)) continue;
    partner_sum[b.country_i] += b.btv_usd;
    partner_sum[b.country_j] += b.btv_usd;
  }
  std::vector<const CountryEcon*> ordered;
  for (const auto& e : econ) ordered.push_back(&e);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->country_code < b->country_code; });

  CoverageResult out;
  for (const auto* e : ordered) {
    if (!e->trade_value_usd || !(*e->trade_value_usd > 0.0)) {
      out.excluded[e->country_code] = "missing_trade_value";
      continue;
    }
    const auto it = partner_sum.find(e->country_code);
    const double covered = it == partner_sum.end() ? 0.0 : it->second.value();
    if (covered > threshold * *e->trade_value_usd) {
      out.retained.push_back(e->country_code);
    } else {
      out.excluded[e->country_code] =
          "coverage " + format_fixed(covered / *e->trade_value_usd, 4) + " <= " +
          format_double(threshold);
    }
  }
  return out;
}

}  // namespace glsn
