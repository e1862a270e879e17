#pragma once

#include "codedcache/decoder.hpp"
#include "codedcache/model.hpp"
#include "codedcache/stats.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace codedcache {

enum class Scheme { uncoded, man_c, cfl_point, ag_point, gbc, best_centralized, wtp_lb, cutset, man_d, gbd };

const char* to_string(Scheme scheme);
/// Accepts the names printed by to_string (e.g. "man-c", "best-centralized").
std::optional<Scheme> parse_scheme(const std::string& name);
const std::vector<Scheme>& all_schemes();

/// Schemes that exist at a single capacity; curves emit them once at `anchor_capacity`.
bool is_point_scheme(Scheme scheme);
Rational anchor_capacity(Scheme scheme, std::uint32_t n, std::uint32_t k);

/// Analytic rate, or nullopt when the scheme is undefined at (N, K, M).
std::optional<double> analytic_rate(Scheme scheme, std::uint32_t n, std::uint32_t k, const Rational& m);

/// `points` evenly spaced capacities from lo to hi inclusive.
std::vector<Rational> linear_grid(const Rational& lo, const Rational& hi, std::size_t points);

struct CurveConfig {
  std::uint32_t n = 1;
  std::uint32_t k = 1;
  std::vector<Rational> capacities;
  std::vector<Scheme> schemes;
};

struct CurveRow {
  Rational m;
  Scheme scheme = Scheme::uncoded;
  std::optional<double> rate;
};

/// Curve presets fig3, fig4 and fig6 with `points` capacities.
CurveConfig curve_preset(const std::string& name, std::size_t points = 64);

/// Rows ordered by M, then by scheme order in the config.
std::vector<CurveRow> run_curve(const CurveConfig& config);

struct SweepRow {
  std::uint32_t k = 0;
  Rational gbc;
  Rational best;
  Rational cutset;
  double reduction_pct = 0;
};

/// GBC against the best known scheme and the cut-set bound at M = N/K for
/// K = k_lo, k_lo + step, ..., <= k_hi (each K must exceed N).
std::vector<SweepRow> run_sweep(std::uint32_t n, std::uint32_t k_lo, std::uint32_t k_hi, std::uint32_t step);

struct SimulateConfig {
  Scheme scheme = Scheme::gbc;
  std::uint32_t n = 1;
  std::uint32_t k = 1;
  std::optional<Rational> m;
  std::optional<std::uint32_t> t;  // MAN parameter
  std::size_t f = 0;               // requested F; 0 picks the granularity
  std::vector<std::uint64_t> seeds{0};
  bool exact_random = false;
  /// Decentralized only: count bits from the ownership classes without
  /// building payloads or decoding.
  bool measure_only = false;
};

struct SimulationRun {
  std::uint64_t seed = 0;
  TranscriptStats stats;
  std::string procedure;
  std::optional<DecodeReport> report;
  std::vector<std::string> payload_dump;  // filled when some user fails
};

struct SimulationResult {
  SimulateConfig config;
  Rational m;
  std::size_t f_effective = 0;
  std::optional<double> analytic;
  std::vector<SimulationRun> runs;

  bool all_decoded() const;
  double mean_measured() const;
};

/// Builds database, placement and transcript per seed and verifies decoding.
/// Supported schemes: gbc, man-c, gbd, man-d. Throws ConfigError otherwise.
SimulationResult run_simulate(const SimulateConfig& config);

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows);
void write_curve_json(std::ostream& os, const CurveConfig& config, const std::vector<CurveRow>& rows);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_sweep_json(std::ostream& os, std::uint32_t n, const std::vector<SweepRow>& rows);
void write_simulate_csv(std::ostream& os, const SimulationResult& result);
void write_simulate_json(std::ostream& os, const SimulationResult& result);

}  // namespace codedcache
