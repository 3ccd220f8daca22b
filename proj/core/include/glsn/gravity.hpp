#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glsn/econometrics.hpp"
#include "glsn/graph.hpp"
#include "glsn/indices.hpp"
#include "glsn/ingest.hpp"

namespace glsn {

/// Mean Earth radius, km.
inline constexpr double kEarthRadiusKm = 6371.0;

/// Haversine great-circle distance in km.
double great_circle_km(double lat1, double lon1, double lat2, double lon2);

/// Regressor sets on top of ln(GDP_i GDP_j) and ln(d_ij).
enum class GravityVariant { Base, Lsbci, Gb, LsbciGb, Gc, LsbciGc };

/// CLI spelling: base, lsbci, gb, lsbci_gb, gc, lsbci_gc.
std::string_view to_string(GravityVariant variant);
GravityVariant parse_gravity_variant(std::string_view text);
/// Column names of the variant's regressors, e.g. {"ln_gdp_product", "ln_distance", ...}.
std::vector<std::string> gravity_regressors(GravityVariant variant);

/// Data a pair must carry to enter a sample.
struct PairRequirements {
  bool lsbci = false;
  bool gb = false;
  bool gc = false;

  PairRequirements& operator|=(const PairRequirements& other) {
    lsbci |= other.lsbci;
    gb |= other.gb;
    gc |= other.gc;
    return *this;
  }
};

PairRequirements requirements_of(GravityVariant variant);

struct CountryPairSample {
  std::string country_i;  // country_i < country_j
  std::string country_j;
  double btv_usd = 0.0;
  double ln_gdp_product = 0.0;
  double ln_distance = 0.0;
  double ln_btv = 0.0;
  std::optional<double> ln_lsbci;
  std::optional<double> ln_gb_product;
  std::optional<double> ln_gc_product;

  /// Regressor values in gravity_regressors(variant) order.
  std::vector<double> regressors(GravityVariant variant) const;
};

struct PairOptions {
  int l_max = 2;                    // which Gb enters ln(Gb_i Gb_j)
  bool require_connection = true;   // ports of the two countries share an edge
  /// When set, a pair enters only if at least one of its countries is listed.
  std::optional<std::set<std::string>> anchor_countries;
};

struct PairAssembly {
  std::vector<CountryPairSample> samples;  // sorted by (country_i, country_j)
  std::map<std::string, std::size_t> excluded;  // reason -> pair count
};

/// Builds log-space samples from bilateral records, keeping only pairs that
/// satisfy every requirement. Exclusions are counted by reason, never thrown.
PairAssembly assemble_pairs(std::span<const CountryEcon> econ,
                            std::span<const BilateralRecord> bilateral,
                            const CountryIndexTable& indices, const Glsn& g,
                            const PairRequirements& requirements, const PairOptions& options = {});

PairAssembly assemble_pairs(std::span<const CountryEcon> econ,
                            std::span<const BilateralRecord> bilateral,
                            const CountryIndexTable& indices, const Glsn& g,
                            GravityVariant variant, const PairOptions& options = {});

/// Raw-scale OLS of ln BTV on the variant's regressors.
RegressionReport fit_gravity(std::span<const CountryPairSample> samples, GravityVariant variant);

/// exp of the fitted ln BTV.
double predict_btv(const RegressionReport& fit, GravityVariant variant,
                   const CountryPairSample& sample);
double predict_ln_btv(const RegressionReport& fit, GravityVariant variant,
                      const CountryPairSample& sample);

struct CountryTradeEstimate {
  std::string country_code;
  std::size_t partners = 0;
  double empirical_usd = 0.0;  // sum of empirical BTV over the country's sample pairs
  double estimated_usd = 0.0;  // sum of predicted BTV over the same pairs
};

struct TradeReconstruction {
  std::vector<CountryTradeEstimate> countries;  // sorted by code
  double pearson_r = std::numeric_limits<double>::quiet_NaN();
  double adjusted_r2 = std::numeric_limits<double>::quiet_NaN();  // from r^2, one regressor
};

/// Country totals from predicted bilateral values. With `countries` set,
/// only those countries are reported.
TradeReconstruction estimate_country_trade(
    const RegressionReport& fit, GravityVariant variant,
    std::span<const CountryPairSample> samples,
    const std::optional<std::set<std::string>>& countries = std::nullopt);

struct CoverageResult {
  std::vector<std::string> retained;           // sorted
  std::map<std::string, std::string> excluded;  // country -> reason
};

/// Keeps country i iff the sum of its positive bilateral values exceeds
/// threshold times its total trade value.
CoverageResult coverage_filter(std::span<const CountryEcon> econ,
                               std::span<const BilateralRecord> bilateral, double threshold = 0.9);

}  // namespace glsn
