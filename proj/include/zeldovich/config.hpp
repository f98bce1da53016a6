#pragma once

#include <map>
#include <optional>
#include <string>

#include "zeldovich/sources.hpp"

// Plain-text constants override: one `key = value` per line, `#` starts a
// comment. Keys: alpha, lambda_bar, bohr_b, proton_a, mu_geom and
// mass_number.<Symbol> (e.g. mass_number.Xe = 129).

namespace zeldovich {

struct ConstantsConfig {
  PhysConst constants;
  std::map<std::string, int> mass_numbers;

  /// Roster atom with any mass-number override and the configured Bohr radius.
  [[nodiscard]] NobleGasAtom atom(const std::string& symbol) const;
};

/// Throws std::runtime_error naming the line on malformed input or unknown keys.
ConstantsConfig parse_constants(const std::string& text);
ConstantsConfig load_constants_file(const std::string& path);

/// The explicit path if given, else $NZ_CONSTANTS if set, else the defaults.
ConstantsConfig resolve_constants(const std::optional<std::string>& path);

}  // namespace zeldovich
