#pragma once

#include <cstddef>
#include <vector>

#include "glsn/graph.hpp"

namespace glsn {

enum class OracleMode {
  GlsnBetweenness,     // per-country Gb; needs l_max
  FreemanBetweenness,  // per-port b
};

inline constexpr std::size_t kOracleMaxNodes = 16;

/// Exhaustive reference for the betweenness indices. Enumerates every simple
/// path of increasing length between each pair until the shortest ones are
/// found, then applies the definitions literally. Refuses graphs with more
/// than kOracleMaxNodes nodes.
std::vector<double> brute_force_oracle(const Glsn& g, OracleMode mode, int l_max = 0);

}  // namespace glsn
