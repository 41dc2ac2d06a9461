#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fluctuaverse/quantity.hpp"

namespace fluctuaverse {

enum class Source { standard_table, paper, config_override };

std::string_view to_string(Source s);

struct ConstantRecord {
  std::string symbol;
  Quantity value;
  Source source;
  std::string note;
  std::optional<double> relative_uncertainty;
};

/// Symbol table of CGS constants and observed cosmological magnitudes.
///
/// Built once with the shipped defaults, optionally patched from an override
/// file during startup, then treated as read-only. Override file syntax, one
/// entry per line:
///
///     symbol = <decimal> [g^a cm^b s^c] [# note]
///
/// Exponents may be rational (`g^1/2`). Blank lines and lines starting with
/// `#` are skipped. An override of an existing symbol must keep its
/// dimension.
class Registry {
 public:
  static Registry with_defaults();

  /// Throws UnknownConstant listing the available symbols.
  const ConstantRecord& get(std::string_view symbol) const;
  const Quantity& value(std::string_view symbol) const { return get(symbol).value; }
  bool contains(std::string_view symbol) const { return records_.find(symbol) != records_.end(); }

  /// Returns the number of entries applied. Throws ConfigError (with the
  /// offending line number) on any malformed line; nothing is applied in
  /// that case.
  std::size_t load_overrides(const std::filesystem::path& path);
  std::size_t apply_overrides(std::istream& in, std::string_view origin = "<stream>");

  /// Sorted by symbol.
  std::vector<ConstantRecord> list() const;
  std::size_t size() const { return records_.size(); }

  /// Serializes every record in the override-file syntax; loading the output
  /// reproduces values, dimensions and notes bit-exactly.
  void write_overrides(std::ostream& out) const;

 private:
  std::map<std::string, ConstantRecord, std::less<>> records_;
};

/// Shortest decimal text that parses back to exactly `v`.
std::string format_roundtrip(double v);

}  // namespace fluctuaverse
