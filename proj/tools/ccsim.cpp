// ccsim: rate curves, sweeps and end-to-end simulations for group-based coded caching.
#include "codedcache/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace codedcache;

namespace {

constexpr int kExitDecodeFailure = 2;
constexpr int kExitConfig = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
  std::vector<Scheme> out;
  for (const auto& group : names) {
    for (const auto& name : split(group, ',')) {
      auto s = parse_scheme(name);
      if (!s) throw ConfigError("unknown scheme '" + name + "'");
      out.push_back(*s);
    }
  }
  return out;
}

/// "7", "1,2,5" or "1-20".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(std::stoull(item));
      continue;
    }
    const auto lo = std::stoull(item.substr(0, dash)), hi = std::stoull(item.substr(dash + 1));
    if (hi < lo) throw ConfigError("bad seed range '" + item + "'");
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

struct Output {
  std::string path;
  std::string format = "csv";

  template <class Fn>
  void write(Fn&& fn) const {
    if (path.empty() || path == "-") {
      fn(std::cout);
      return;
    }
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open " + path);
    fn(os);
  }
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Output file (default stdout)");
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-based coded caching: rate curves, sweeps and bit-exact simulations"};
  app.require_subcommand(1);

  // curve
  auto* curve = app.add_subcommand("curve", "Analytic rate curves R(M)");
  std::string curve_preset_name, m_range;
  std::uint32_t curve_n = 0, curve_k = 0;
  std::size_t points = 64;
  std::vector<std::string> curve_schemes;
  Output curve_out;
  curve->add_option("--preset", curve_preset_name, "fig3, fig4 or fig6")->check(CLI::IsMember({"fig3", "fig4", "fig6"}));
  curve->add_option("--n", curve_n, "Number of files N");
  curve->add_option("--k", curve_k, "Number of users K");
  curve->add_option("--m-range", m_range, "Capacity range lo:hi (rationals allowed, e.g. 1/15:4/3)");
  curve->add_option("--points", points, "Capacities per range")->check(CLI::PositiveNumber);
  curve->add_option("--scheme", curve_schemes, "Schemes (repeat or comma-separate; default all)");
  add_output(curve, curve_out);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "GBC vs best known scheme at M = N/K over a range of K");
  std::string sweep_preset, k_range;
  std::uint32_t sweep_n = 0;
  Output sweep_out;
  sweep->add_option("--preset", sweep_preset, "fig5")->check(CLI::IsMember({"fig5"}));
  sweep->add_option("--n", sweep_n, "Number of files N");
  sweep->add_option("--k-range", k_range, "lo:hi[:step]");
  add_output(sweep, sweep_out);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run placement and delivery on real bits and verify decoding");
  std::string sim_scheme = "gbc", sim_m, seeds_text;
  std::uint64_t seed = 0;
  SimulateConfig sim_cfg;
  std::uint32_t sim_t = 0;
  Output sim_out;
  sim_out.format = "json";
  sim->add_option("--scheme", sim_scheme, "gbc, man-c, gbd or man-d");
  sim->add_option("--n", sim_cfg.n, "Number of files N")->required();
  sim->add_option("--k", sim_cfg.k, "Number of users K")->required();
  sim->add_option("--m", sim_m, "Cache capacity M (e.g. 0.3 or 3/10)");
  sim->add_option("--t", sim_t, "MAN parameter t");
  sim->add_option("--f", sim_cfg.f, "Requested file length in bits (rounded up to the scheme granularity)");
  auto* seed_opt = sim->add_option("--seed", seed, "Single seed");
  sim->add_option("--seeds", seeds_text, "Seed list: 1,2,3 or 1-20")->excludes(seed_opt);
  sim->add_flag("--exact-random", sim_cfg.exact_random, "Emit real random combinations (F <= 512)");
  sim->add_flag("--measure-only", sim_cfg.measure_only, "Decentralized: count bits without building payloads");
  add_output(sim, sim_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    // Help and version requests exit cleanly; bad arguments count as config errors.
    return rc == 0 ? 0 : 3;
  }

  try {
    if (curve->parsed()) {
      CurveConfig cfg;
      if (!curve_preset_name.empty()) {
        cfg = curve_preset(curve_preset_name, points);
      } else {
        if (curve_n == 0 || curve_k == 0) throw ConfigError("curve needs --preset or --n and --k");
        cfg.n = curve_n;
        cfg.k = curve_k;
        Rational lo = Rational(1) / curve_k, hi = Rational(curve_n);
        if (!m_range.empty()) {
          const auto parts = split(m_range, ':');
          if (parts.size() != 2) throw ConfigError("--m-range expects lo:hi");
          lo = parse_rational(parts[0]);
          hi = parse_rational(parts[1]);
        }
        cfg.capacities = linear_grid(lo, hi, points);
        cfg.schemes = all_schemes();
      }
      if (!curve_schemes.empty()) cfg.schemes = parse_schemes(curve_schemes);
      const auto rows = run_curve(cfg);
      curve_out.write([&](std::ostream& os) {
        curve_out.format == "json" ? write_curve_json(os, cfg, rows) : write_curve_csv(os, rows);
      });
      return 0;
    }

    if (sweep->parsed()) {
      std::uint32_t n = sweep_n, lo = 0, hi = 0, step = 1;
      if (sweep_preset == "fig5") {
        n = 100;
        lo = 200;
        hi = 1000;
        step = 50;
      }
      if (!k_range.empty()) {
        const auto parts = split(k_range, ':');
        if (parts.size() < 2 || parts.size() > 3) throw ConfigError("--k-range expects lo:hi[:step]");
        lo = static_cast<std::uint32_t>(std::stoul(parts[0]));
        hi = static_cast<std::uint32_t>(std::stoul(parts[1]));
        step = parts.size() == 3 ? static_cast<std::uint32_t>(std::stoul(parts[2])) : 1;
      }
      if (n == 0 || lo == 0) throw ConfigError("sweep needs --preset fig5 or --n and --k-range");
      const auto rows = run_sweep(n, lo, hi, step);
      sweep_out.write([&](std::ostream& os) {
        sweep_out.format == "json" ? write_sweep_json(os, n, rows) : write_sweep_csv(os, rows);
      });
      return 0;
    }

    const auto scheme = parse_scheme(sim_scheme);
    if (!scheme) throw ConfigError("unknown scheme '" + sim_scheme + "'");
    sim_cfg.scheme = *scheme;
    if (!sim_m.empty()) sim_cfg.m = parse_rational(sim_m);
    if (sim_t != 0) sim_cfg.t = sim_t;
    sim_cfg.seeds = seeds_text.empty() ? std::vector<std::uint64_t>{seed} : parse_seeds(seeds_text);
    const auto result = run_simulate(sim_cfg);
    sim_out.write([&](std::ostream& os) {
      sim_out.format == "json" ? write_simulate_json(os, result) : write_simulate_csv(os, result);
    });
    if (!result.all_decoded()) {
      for (const auto& run : result.runs) {
        if (run.payload_dump.empty()) continue;
        std::cerr << "decode failure, seed " << run.seed << "; transcript:\n";
        for (const auto& line : run.payload_dump) std::cerr << "  " << line << '\n';
      }
      return kExitDecodeFailure;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}
