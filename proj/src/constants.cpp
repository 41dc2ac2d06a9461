#include "fluctuaverse/constants.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "fluctuaverse/errors.hpp"

namespace fluctuaverse {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Default {
  const char* symbol;
  double value;
  Dimension dim;
  Source source;
  const char* note;
  std::optional<double> uncertainty;
};

std::vector<Default> shipped_defaults() {
  using dims::kNone;
  const Source table = Source::standard_table;
  const Source paper = Source::paper;
  return {
      {"G", 6.674e-8, dims::kGravitational, table, "Newtonian gravitational constant", 2.2e-5},
      {"c", 2.998e10, dims::kVelocity, table, "speed of light", std::nullopt},
      {"hbar", 1.055e-27, dims::kAction, table, "reduced Planck constant", std::nullopt},
      {"e", 4.803e-10, dims::kCharge, table, "elementary charge (esu)", std::nullopt},
      {"m_e", 9.109e-28, dims::kMass, table, "electron mass", std::nullopt},
      {"m_p", 1.673e-24, dims::kMass, table, "proton mass", std::nullopt},
      {"m_pi", 2.488e-25, dims::kMass, table, "charged pion mass, 139.57 MeV/c^2", 1e-4},
      {"L_star", 1.616e-33, dims::kLength, table, "Planck length", std::nullopt},
      {"N_obs", 1e80, kNone, paper, "number of elementary particles in the universe", std::nullopt},
      {"M_obs", 1e56, dims::kMass, paper, "mass of the universe", std::nullopt},
      {"T_obs", 1e17, dims::kTime, paper, "age of the universe", std::nullopt},
      {"R_obs", 1e28, dims::kLength, paper,
       "radius of the universe; no independent value quoted, taken from G M_obs/c^2 rounded", std::nullopt},
      {"H_obs", 2.27e-18, dims::kInverseTime, table, "Hubble constant, 70 km/s/Mpc", 0.05},
      {"a0", 1.055e-27 / (2.0 * 9.109e-28 * 2.998e10 * 2.998e10), dims::kTime, paper,
       "imaginary time shift hbar/(2 m_e c^2)", std::nullopt},
      {"tau_fluct", 1e-11, dims::kTime, paper, "interstellar fluctuation time of the Boltzmann H function",
       std::nullopt},
      {"lambda_cmb", 0.3, dims::kLength, paper, "cosmic background radiation wavelength", std::nullopt},
  };
}

double parse_decimal(std::string_view text) {
  double v = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("'{}' is not a decimal number", text));
  }
  return v;
}

}  // namespace

std::string_view to_string(Source s) {
  switch (s) {
    case Source::standard_table:
      return "standard-table";
    case Source::paper:
      return "paper";
    case Source::config_override:
      return "config-override";
  }
  return "unknown";
}

std::string format_roundtrip(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, ptr};
}

Registry Registry::with_defaults() {
  Registry r;
  for (const auto& d : shipped_defaults()) {
    r.records_.emplace(d.symbol, ConstantRecord{d.symbol, Quantity(d.value, d.dim), d.source, d.note, d.uncertainty});
  }
  return r;
}

const ConstantRecord& Registry::get(std::string_view symbol) const {
  if (auto it = records_.find(symbol); it != records_.end()) return it->second;
  std::string available;
  for (const auto& [name, _] : records_) {
    if (!available.empty()) available += ", ";
    available += name;
  }
  throw UnknownConstant(fmt::format("unknown constant '{}'; available: {}", symbol, available));
}

std::size_t Registry::load_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open constants file '{}'", path.string()));
  return apply_overrides(in, path.string());
}

std::size_t Registry::apply_overrides(std::istream& in, std::string_view origin) {
  std::vector<ConstantRecord> staged;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fail = [&](const std::string& why) {
      return ConfigError(fmt::format("{}:{}: {}", origin, line_no, why));
    };
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::string note;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      note = std::string(trim(line.substr(hash + 1)));
      line = trim(line.substr(0, hash));
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw fail("expected 'symbol = value [dims]'");
    const std::string symbol(trim(line.substr(0, eq)));
    if (symbol.empty() || symbol.find_first_of(" \t") != std::string::npos) throw fail("bad symbol name");

    const std::string_view rhs = trim(line.substr(eq + 1));
    const auto split = rhs.find_first_of(" \t");
    const std::string_view number = rhs.substr(0, split);
    const std::string_view dim_text = split == std::string_view::npos ? std::string_view{} : rhs.substr(split + 1);

    double value = 0.0;
    Dimension dim;
    try {
      value = parse_decimal(number);
      dim = Dimension::parse(dim_text);
    } catch (const std::exception& ex) {
      throw fail(ex.what());
    }
    if (!std::isfinite(value)) throw fail("value must be finite");

    if (auto it = records_.find(symbol); it != records_.end() && it->second.value.dim() != dim) {
      throw fail(fmt::format("override of '{}' changes its dimension from [{}] to [{}]", symbol,
                             it->second.value.dim().to_string(), dim.to_string()));
    }
    staged.push_back({symbol, Quantity(value, dim), Source::config_override, std::move(note), std::nullopt});
  }
  if (in.bad()) throw ConfigError(fmt::format("{}: read error", origin));

  for (auto& rec : staged) {
    const std::string key = rec.symbol;
    records_.insert_or_assign(key, std::move(rec));
  }
  return staged.size();
}

std::vector<ConstantRecord> Registry::list() const {
  std::vector<ConstantRecord> out;
  out.reserve(records_.size());
  for (const auto& [_, rec] : records_) out.push_back(rec);
  return out;
}

void Registry::write_overrides(std::ostream& out) const {
  for (const auto& [name, rec] : records_) {
    out << name << " = " << format_roundtrip(rec.value.value());
    if (const auto d = rec.value.dim().to_string(); !d.empty()) out << ' ' << d;
    if (!rec.note.empty()) out << " # " << rec.note;
    out << '\n';
  }
}

}  // namespace fluctuaverse
