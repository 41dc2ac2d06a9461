#include "fluctuaverse/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "fluctuaverse/ensemble.hpp"
#include "fluctuaverse/errors.hpp"

namespace fluctuaverse::cli {

namespace {

std::string sci4(double v) { return fmt::format("{:.3e}", v); }

std::string text_quantity(const Quantity& q) {
  const auto dim = q.dim().to_string();
  return dim.empty() ? sci4(q.value()) : fmt::format("{} {}", sci4(q.value()), dim);
}

std::string csv_escape(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

nlohmann::ordered_json quantity_json(const Quantity& q) {
  return {{"value", q.value()}, {"dim", q.dim().to_string()}};
}

void write_text(std::ostream& out, std::span<const RelationReport> reports) {
  out << fmt::format("{:<24} {:<26} {:<26} {:>7} {:>5}  {:<7} {}\n", "relation", "lhs", "rhs", "gap_dex", "tol",
                     "verdict", "anchor");
  std::size_t passed = 0;
  for (const auto& r : reports) {
    if (r.passed()) ++passed;
    out << fmt::format("{:<24} {:<26} {:<26} {:>7.3f} {:>5.2f}  {:<7} {}\n", r.id, text_quantity(r.lhs),
                       text_quantity(r.rhs), r.gap_dex, r.tolerance_dex, to_string(r.verdict), r.anchor);
  }
  out << fmt::format("{} relations: {} pass, {} fail\n", reports.size(), passed, reports.size() - passed);
}

void write_json(std::ostream& out, std::span<const RelationReport> reports) {
  auto rows = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const auto& r : reports) {
    if (r.passed()) ++passed;
    rows.push_back({{"id", r.id},
                    {"lhs", quantity_json(r.lhs)},
                    {"rhs", quantity_json(r.rhs)},
                    {"gap_dex", r.gap_dex},
                    {"tolerance_dex", r.tolerance_dex},
                    {"verdict", to_string(r.verdict)},
                    {"anchor", r.anchor}});
  }
  nlohmann::ordered_json doc;
  doc["relations"] = std::move(rows);
  doc["summary"] = {{"total", reports.size()}, {"passed", passed}, {"failed", reports.size() - passed}};
  out << doc.dump(2) << '\n';
}

void write_csv(std::ostream& out, std::span<const RelationReport> reports) {
  out << "id,lhs,lhs_dim,rhs,rhs_dim,gap_dex,tolerance_dex,verdict,anchor\n";
  for (const auto& r : reports) {
    out << r.id << ',' << format_roundtrip(r.lhs.value()) << ',' << r.lhs.dim().to_string() << ','
        << format_roundtrip(r.rhs.value()) << ',' << r.rhs.dim().to_string() << ',' << format_roundtrip(r.gap_dex)
        << ',' << format_roundtrip(r.tolerance_dex) << ',' << to_string(r.verdict) << ',' << csv_escape(r.anchor)
        << '\n';
  }
}

// Runs `body`, translating library errors into the exit-code contract.
template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
  try {
    return body();
  } catch (const IntegrationError& ex) {
    err << "IntegrationError: " << ex.what() << '\n';
    return kCheckFailed;
  } catch (const StabilityError& ex) {
    err << "StabilityError: " << ex.what() << '\n';
    return kCheckFailed;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsageError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsageError;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError(fmt::format("cannot open '{}' for writing", path));
  return f;
}

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

Registry load_registry(const RunConfig& config) {
  Registry reg = Registry::with_defaults();
  if (config.constants_path) reg.load_overrides(*config.constants_path);
  return reg;
}

void write_reports(std::ostream& out, std::span<const RelationReport> reports, OutputFormat format) {
  switch (format) {
    case OutputFormat::text:
      write_text(out, reports);
      break;
    case OutputFormat::json:
      write_json(out, reports);
      break;
    case OutputFormat::csv:
      write_csv(out, reports);
      break;
  }
}

int cmd_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Registry reg = load_registry(config);
    const auto reports = run_all(reg, config.tolerance_overrides);
    write_reports(out, reports, config.output_format);
    const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
    return all_pass ? kOk : kCheckFailed;
  });
}

int cmd_simulate(const SimulateConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Registry reg = load_registry(config.run);
    GrowthParams params{
        .mass = reg.value(config.mass_symbol),
        .t_end = seconds(config.t_end),
        .dt = seconds(config.dt),
        .n0 = config.n0.value_or(config.mode == GrowthMode::exact ? 0.0 : 1.0),
        .mode = config.mode,
        .seed = config.run.seed,
        .ensemble_size = config.ensemble_size,
        .stride = config.stride,
    };
    validate(params);

    std::ofstream file;
    if (config.out_path) file = open_output(*config.out_path);
    std::ostream& csv = config.out_path ? static_cast<std::ostream&>(file) : out;
    const GrowthModel model(reg, params.mass);
    const double exact_root = model.exact_root_n(params.t_end.value(), params.n0);

    if (params.mode == GrowthMode::stochastic) {
      const auto result = simulate_stochastic(reg, params);
      write_trajectory_csv(csv, result.mean_trajectory);
      const auto& last = result.moments.back();
      out << fmt::format("# mode=stochastic mass={} ensemble={} seed={} tau={}\n", config.mass_symbol,
                         params.ensemble_size, params.seed, format_roundtrip(model.tau()));
      out << fmt::format("# t_end={} mean_N={} std_N={} mean_sqrt_N={} std_sqrt_N={} stderr_sqrt_N={}\n",
                         format_roundtrip(last.t), format_roundtrip(last.mean_n), format_roundtrip(last.std_n),
                         format_roundtrip(last.mean_root_n), format_roundtrip(last.std_root_n),
                         format_roundtrip(last.stderr_root_n));
      out << fmt::format("# exact_sqrt_N={}\n", format_roundtrip(exact_root));
      return kOk;
    }

    const auto traj = integrate(reg, params);
    write_trajectory_csv(csv, traj);
    const auto& last = traj.back();
    out << fmt::format("# mode={} mass={} tau={}\n", to_string(params.mode), config.mass_symbol,
                       format_roundtrip(model.tau()));
    out << fmt::format("# final t={} N={} sqrt_N={} R={} H_local={}\n", format_roundtrip(last.t),
                       format_roundtrip(last.n), format_roundtrip(std::sqrt(last.n)), format_roundtrip(last.radius),
                       format_roundtrip(last.hubble));
    out << fmt::format("# exact_sqrt_N={}\n", format_roundtrip(exact_root));
    if (traj.size() >= 3) {
      out << fmt::format("# acceleration_identity_max_deviation={}\n", format_roundtrip(check_acceleration(traj)));
    }
    return kOk;
  });
}

int cmd_ensemble(const EnsembleConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.samples == 0 || config.draws == 0 || config.instances == 0) {
      throw ConfigError("--samples, --draws and --instances must be >= 1");
    }
    const std::uint64_t seed = config.run.seed;
    std::size_t checks = 0;
    std::size_t failures = 0;
    const auto record = [&](bool ok) {
      ++checks;
      if (!ok) ++failures;
    };

    const Complex diag = phase_correlation(0, 0, config.samples, seed);
    const bool diag_ok = diag == Complex(1.0, 0.0);
    record(diag_ok);
    out << fmt::format("phase_correlation n=0 m=0 samples={} value={} expected=1 {}\n", config.samples,
                       format_roundtrip(diag.real()), pass_fail(diag_ok));

    const Complex off = phase_correlation(0, 1, config.samples, seed);
    const double bound = 5.0 / std::sqrt(static_cast<double>(config.samples));
    const bool off_ok = std::abs(off) <= bound;
    record(off_ok);
    out << fmt::format("phase_correlation n=0 m=1 samples={} modulus={} bound={} {}\n", config.samples,
                       format_roundtrip(std::abs(off)), format_roundtrip(bound), pass_fail(off_ok));

    // Coherent (all cross terms) vs incoherent mixture on random 4-8 state instances.
    double worst_z = 0.0;
    std::size_t eq_fail = 0;
    for (std::size_t i = 0; i < config.instances; ++i) {
      std::mt19937_64 rng(seed + 1'000'003 * (i + 1));
      const auto dim = std::uniform_int_distribution<std::size_t>(4, 8)(rng);
      std::uniform_real_distribution<double> energy(0.0, 10.0);
      std::vector<double> energies(dim);
      for (auto& e : energies) e = energy(rng);
      const double low = *std::min_element(energies.begin(), energies.end()) - 0.5;
      const double width = std::uniform_real_distribution<double>(2.0, 12.0)(rng);
      const EnsembleState state(std::vector<Complex>(dim, Complex(1.0, 0.0)), energies, fmt::format("instance{}", i));
      const auto grained = coarse_grain(state, low, width);
      const auto op = Operator::random_hermitian(dim, rng);
      const double incoherent = expectation(grained, op.diagonal());
      const auto coherent = coherent_expectation(grained, op, config.draws, rng());
      const double diff = std::abs(coherent.mean - incoherent);
      const bool ok = diff <= 3.0 * coherent.standard_error;
      if (!ok) ++eq_fail;
      if (coherent.standard_error > 0.0) worst_z = std::max(worst_z, diff / coherent.standard_error);
      out << fmt::format("expectation instance={} states={} occupied={} incoherent={} coherent={} stderr={} {}\n", i,
                         dim, grained.occupied(), format_roundtrip(incoherent), format_roundtrip(coherent.mean),
                         format_roundtrip(coherent.standard_error), pass_fail(ok));
    }
    record(eq_fail == 0);
    out << fmt::format("expectation_equivalence instances={} draws={} failures={} max_z={} {}\n", config.instances,
                       config.draws, eq_fail, format_roundtrip(worst_z), pass_fail(eq_fail == 0));

    const auto stats = particlet_count_sampler({.mu = config.mu, .seed = seed + 2, .samples = config.samples});
    if (stats.std_dev_error) {
      const bool ok = std::abs(stats.std_dev - stats.theory_std_dev) <= 3.0 * *stats.std_dev_error;
      record(ok);
      out << fmt::format("sampler_std mu={} samples={} std={} theory={} stderr={} {}\n", format_roundtrip(config.mu),
                         config.samples, format_roundtrip(stats.std_dev), format_roundtrip(stats.theory_std_dev),
                         format_roundtrip(*stats.std_dev_error), pass_fail(ok));
    } else {
      out << fmt::format("sampler_std mu={} samples={} std=n/a theory={} skip\n", format_roundtrip(config.mu),
                         config.samples, format_roundtrip(stats.theory_std_dev));
    }
    const double ratio = stats.rms * config.mu;
    const bool spread_ok = ratio >= 0.5 && ratio <= 2.0;
    record(spread_ok);
    out << fmt::format("sampler_spread rms={} inverse_mu={} ratio={} {}\n", format_roundtrip(stats.rms),
                       format_roundtrip(1.0 / config.mu), format_roundtrip(ratio), pass_fail(spread_ok));

    if (config.histogram_path) {
      auto file = open_output(*config.histogram_path);
      write_histogram_csv(file, stats.histogram);
    }
    out << fmt::format("summary checks={} failed={}\n", checks, failures);
    return failures == 0 ? kOk : kCheckFailed;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consistency checks and simulations for the fluctuation cosmology relations", "fluctuaverse"};
  app.require_subcommand(1);

  RunConfig check_cfg;
  std::string format = "text";
  std::vector<std::string> tolerances;
  auto* check = app.add_subcommand("check", "Evaluate every relation against observed constants");
  check->add_option("--constants", check_cfg.constants_path, "Constants override file");
  check->add_option("--tolerance", tolerances, "Per-relation tolerance, ID=DEX (repeatable)");
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

  SimulateConfig sim_cfg;
  std::string mode = "exact";
  double n0 = 0.0;
  auto* simulate = app.add_subcommand("simulate", "Integrate or sample the particle-number growth law");
  simulate->add_option("--constants", sim_cfg.run.constants_path, "Constants override file");
  simulate->add_option("--mode", mode, "exact, rk4 or stochastic")
      ->required()
      ->check(CLI::IsMember({"exact", "rk4", "stochastic"}));
  simulate->add_option("--mass", sim_cfg.mass_symbol, "Registry symbol of the particle mass")->required();
  simulate->add_option("--t-end", sim_cfg.t_end, "End time [s]")->required();
  simulate->add_option("--dt", sim_cfg.dt, "Time step [s]")->required();
  auto* n0_opt = simulate->add_option("--n0", n0, "Initial particle count");
  simulate->add_option("--seed", sim_cfg.run.seed, "Random seed");
  simulate->add_option("--ensemble", sim_cfg.ensemble_size, "Stochastic ensemble size");
  simulate->add_option("--stride", sim_cfg.stride, "Store every k-th step");
  simulate->add_option("--out", sim_cfg.out_path, "Write the trajectory CSV here instead of stdout");

  EnsembleConfig ens_cfg;
  auto* ensemble = app.add_subcommand("ensemble", "Random-phase and particlet-count Monte Carlo checks");
  ensemble->add_option("--seed", ens_cfg.run.seed, "Random seed");
  ensemble->add_option("--samples", ens_cfg.samples, "Phase draws and sampler draws");
  ensemble->add_option("--mu", ens_cfg.mu, "Width parameter of exp(-mu^2 N^2)");
  ensemble->add_option("--draws", ens_cfg.draws, "Phase draws per expectation instance");
  ensemble->add_option("--instances", ens_cfg.instances, "Random expectation instances");
  ensemble->add_option("--histogram", ens_cfg.histogram_path, "Write the sampler histogram CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  std::optional<std::string> env_constants;
  if (const char* env = std::getenv("FLUCTUAVERSE_CONSTANTS"); env != nullptr && *env != '\0') env_constants = env;

  if (*check) {
    if (!check_cfg.constants_path) check_cfg.constants_path = env_constants;
    check_cfg.output_format = format == "json" ? OutputFormat::json
                              : format == "csv" ? OutputFormat::csv
                                                : OutputFormat::text;
    for (const auto& item : tolerances) {
      const auto eq = item.find('=');
      double value = 0.0;
      std::size_t used = 0;
      try {
        if (eq == std::string::npos) throw std::invalid_argument("missing '='");
        value = std::stod(item.substr(eq + 1), &used);
      } catch (const std::exception&) {
        err << fmt::format("error: --tolerance expects ID=DEX, got '{}'\n", item);
        return kUsageError;
      }
      if (used != item.size() - eq - 1) {
        err << fmt::format("error: --tolerance expects ID=DEX, got '{}'\n", item);
        return kUsageError;
      }
      check_cfg.tolerance_overrides[item.substr(0, eq)] = value;
    }
    return cmd_check(check_cfg, out, err);
  }
  if (*simulate) {
    if (!sim_cfg.run.constants_path) sim_cfg.run.constants_path = env_constants;
    sim_cfg.mode = parse_growth_mode(mode);
    if (n0_opt->count() > 0) sim_cfg.n0 = n0;
    return cmd_simulate(sim_cfg, out, err);
  }
  return cmd_ensemble(ens_cfg, out, err);
}

}  // namespace fluctuaverse::cli
