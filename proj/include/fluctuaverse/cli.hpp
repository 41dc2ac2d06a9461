#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fluctuaverse/growth.hpp"
#include "fluctuaverse/relations.hpp"

namespace fluctuaverse::cli {

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

enum class OutputFormat { text, json, csv };

struct RunConfig {
  std::optional<std::string> constants_path;
  ToleranceOverrides tolerance_overrides;
  OutputFormat output_format = OutputFormat::text;
  std::uint64_t seed = 0;
};

struct SimulateConfig {
  RunConfig run;
  std::string mass_symbol = "m_pi";
  GrowthMode mode = GrowthMode::exact;
  double t_end = 0.0;
  double dt = 0.0;
  std::optional<double> n0;
  std::size_t ensemble_size = 256;
  std::size_t stride = 1;
  std::optional<std::string> out_path;
};

struct EnsembleConfig {
  RunConfig run;
  std::size_t samples = 100'000;
  double mu = 1.0;
  std::size_t draws = 10'000;
  std::size_t instances = 20;
  std::optional<std::string> histogram_path;
};

/// Registry with defaults, then the override file if one is configured.
Registry load_registry(const RunConfig& config);

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateConfig& config, std::ostream& out, std::ostream& err);
int cmd_ensemble(const EnsembleConfig& config, std::ostream& out, std::ostream& err);

/// Relation table in the chosen format.
void write_reports(std::ostream& out, std::span<const RelationReport> reports, OutputFormat format);

/// Full command line entry point (argv[0] is the program name). Reads
/// FLUCTUAVERSE_CONSTANTS when --constants is absent.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fluctuaverse::cli
