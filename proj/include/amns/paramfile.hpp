#pragma once

// On-disk parameter sets: one "key = value" per line, lowercase hex.

#include <iosfwd>
#include <optional>
#include <string>

#include "amns/system.hpp"

namespace amns {

struct ParamFile {
  AmnsSystem system;
  std::optional<PrecompTables> tables;

  /// Throws Error{parse} on malformed, unknown, duplicate or missing keys.
  static ParamFile parse(const std::string& text);
  static ParamFile load(const std::string& path);

  std::string to_string() const;
  void save(const std::string& path) const;
};

inline constexpr int kParamFormatVersion = 1;

}  // namespace amns
