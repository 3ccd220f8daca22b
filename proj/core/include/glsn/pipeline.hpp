#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "glsn/graph.hpp"
#include "glsn/gravity.hpp"

namespace glsn {

enum class Dependent { Trade, Export, Import, NetExport, Gdp, TradeChange };

/// CLI spelling: trade, export, import, net_export, gdp, trade_change.
std::string_view to_string(Dependent dependent);
Dependent parse_dependent(std::string_view text);

/// Everything a pipeline run depends on. Output bytes are a function of the
/// config and the input file contents only.
struct RunConfig {
  std::filesystem::path routes;           // .csv (calls) or .json
  std::filesystem::path routes_meta;      // optional; defaults to routes_meta.csv beside routes
  std::filesystem::path ports;
  std::filesystem::path countries;
  std::filesystem::path countries_later;  // later-year panel for trade_change
  std::filesystem::path bilateral;
  std::filesystem::path out = ".";

  std::vector<WeightScheme> schemes = {WeightScheme::Unweighted};  // first one drives Gc
  std::vector<int> l_max = {2};                                    // first one drives Gb
  double vif_threshold = 5.0;
  Dependent dependent = Dependent::Trade;
  std::vector<GravityVariant> variants;  // empty: base, lsbci, gb, lsbci_gb
  double coverage = 0.9;
  std::uint64_t seed = 42;
  bool strict = false;
  bool log_response = false;

  /// Canonical text of every setting that affects outputs (paths excluded).
  std::string canonical() const;
};

struct CommandResult {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> warnings;
  std::string summary;  // human-readable, printed by the CLI
};

CommandResult cmd_build(const RunConfig& config);
CommandResult cmd_indices(const RunConfig& config);
CommandResult cmd_regress(const RunConfig& config);
CommandResult cmd_gravity(const RunConfig& config);
/// build + indices + regress + gravity into one directory.
CommandResult cmd_report(const RunConfig& config);

struct FixtureParams;
CommandResult cmd_gen_fixture(const FixtureParams& params, const std::filesystem::path& out);

std::string_view tool_version();

}  // namespace glsn
