#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace glsn {

/// Shortest round-trip decimal form. "nan", "inf" and "-inf" for non-finite
/// values; negative zero prints as "0".
std::string format_double(double value);

/// Fixed-point form for human-readable tables.
std::string format_fixed(double value, int decimals);

/// Scientific-or-fixed form with `digits` significant digits, e.g. p-values.
std::string format_general(double value, int digits);

/// 64-bit FNV-1a. Used for provenance headers, not for security.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t value);

}  // namespace glsn
