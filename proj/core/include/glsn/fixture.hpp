#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "glsn/ingest.hpp"

namespace glsn {

struct FixtureParams {
  std::uint64_t seed = 42;
  std::size_t ports = 30;
  std::size_t countries = 6;
  std::size_t routes = 12;
  /// Relative noise level; 0 gives a noiseless world.
  double noise = 0.05;
};

/// Ground truth the generator planted.
///
/// Trade value (USD) = 1e9 * (trade_intercept + trade_gb * Gb + trade_lsci * LSCI
///                            + noise * mean_base * z_i), floored at 5% of
///                            mean_base; Gb is the L_max = 2 betweenness of the
///                            generated network and LSCI is drawn independently.
/// ln BTV_ij = gravity_b0 + gravity_b1 * ln(GDP_i GDP_j) + gravity_b2 * ln d_ij
///             + gravity_sigma * z_ij, with gravity_sigma = 2 * noise.
struct PlantedModel {
  double trade_intercept = 1.0;
  double trade_gb = 1.5;
  double trade_lsci = 0.4;
  double trade_noise = 0.0;
  double gravity_b0 = 0.0;
  double gravity_b1 = 0.8;
  double gravity_b2 = -1.1;
  double gravity_sigma = 0.0;
};

struct Fixture {
  FixtureParams params;
  std::vector<Port> ports;
  std::vector<ServiceRoute> routes;
  std::vector<CountryEcon> econ;
  std::vector<BilateralRecord> bilateral;
  PlantedModel planted;
};

/// Deterministic for a given parameter set on every platform: the generator
/// uses mt19937_64 bits with its own uniform and normal transforms.
Fixture generate_fixture(const FixtureParams& params);

/// Writes routes.csv, routes_meta.csv, ports.csv, countries.csv,
/// bilateral.csv and planted_model.json into `dir`.
std::vector<std::filesystem::path> write_fixture(const Fixture& fixture,
                                                 const std::filesystem::path& dir);

}  // namespace glsn
