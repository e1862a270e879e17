#include "codedcache/experiment.hpp"

#include "codedcache/centralized.hpp"
#include "codedcache/combinatorics.hpp"
#include "codedcache/decentralized.hpp"
#include "codedcache/rates.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace codedcache {
namespace {

using Json = nlohmann::ordered_json;

struct SchemeName {
  Scheme scheme;
  const char* name;
};

constexpr SchemeName kSchemeNames[] = {
    {Scheme::uncoded, "uncoded"},     {Scheme::man_c, "man-c"},
    {Scheme::cfl_point, "cfl-point"}, {Scheme::ag_point, "ag-point"},
    {Scheme::gbc, "gbc"},             {Scheme::best_centralized, "best-centralized"},
    {Scheme::wtp_lb, "wtp-lb"},       {Scheme::cutset, "cutset"},
    {Scheme::man_d, "man-d"},         {Scheme::gbd, "gbd"},
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

Json json_num(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json parts_json(const TranscriptStats& s) {
  Json parts = Json::object();
  for (std::size_t i = 0; i < kPartLabelCount; ++i) {
    const auto label = static_cast<PartLabel>(i);
    if (s.payloads_in(label) == 0) continue;
    parts[to_string(label)] = {{"bits", s.bits_in(label)}, {"payloads", s.payloads_in(label)}};
  }
  return parts;
}

Rational resolve_man_capacity(const SimulateConfig& c, std::uint32_t& t) {
  if (c.t) {
    t = *c.t;
    const Rational m = Rational(std::uint64_t{t} * c.n) / c.k;
    if (c.m && *c.m != m) throw ConfigError("--m disagrees with --t (MAN needs M = tN/K)");
    return m;
  }
  if (!c.m) {
    t = 1;
    return Rational(c.n) / c.k;
  }
  const Rational tt = *c.m * c.k / c.n;
  if (denominator(tt) != 1 || tt < 1 || tt > c.k) throw ConfigError("MAN needs M = tN/K with integer t in [1, K]");
  t = static_cast<std::uint32_t>(numerator(tt));
  return *c.m;
}

SimulationRun centralized_run(const SystemParams& params, Scheme scheme, std::uint32_t t, std::uint64_t seed) {
  const auto db = make_database(params, seed);
  const auto demands = worst_case_demands(params.n_files, params.n_users);
  const bool gbc = scheme == Scheme::gbc;
  const auto placement = gbc ? gbc_place(db, params) : man_place(db, params, t);
  const auto tx = gbc ? gbc_deliver(db, demands, placement) : man_deliver(db, demands, placement, t);
  SimulationRun run;
  run.seed = seed;
  run.stats = transcript_stats(tx);
  run.procedure = tx.procedure;
  run.report = verify_all(db, placement, tx, demands);
  if (!run.report->all_succeeded()) {
    for (const auto& p : tx.payloads) run.payload_dump.push_back(describe(p));
  }
  return run;
}

SimulationRun decentralized_run(const SystemParams& params, const SimulateConfig& c, std::uint64_t seed) {
  const auto demands = worst_case_demands(params.n_files, params.n_users);
  SimulationRun run;
  run.seed = seed;
  if (c.measure_only) {
    const auto ownership = random_ownership(params, seed);
    if (c.scheme == Scheme::man_d) {
      const auto plan = plan_man_dec(ownership, demands);
      run.stats = measure(plan, params.file_len);
      run.procedure = plan.procedure;
      return run;
    }
    const auto plan = plan_gbd_coded(ownership, demands);
    run.stats = measure(plan, params.file_len);
    run.procedure = plan.procedure;
    const auto random_bits = random_delivery_bits(ownership, demands);
    if (random_bits < run.stats.total_bits()) {
      run.stats = TranscriptStats{};
      run.stats.file_len = params.file_len;
      run.stats.add(PartLabel::random, random_bits);
      run.procedure = "gbd-random";
    }
    return run;
  }
  const auto db = make_database(params, seed);
  const auto placed = random_place(db, params, seed);
  const auto tx = c.scheme == Scheme::man_d
                      ? man_dec_deliver(db, demands, placed.placement, placed.ownership)
                      : gbd_deliver(db, demands, placed.placement, placed.ownership,
                                    RandomDeliveryOptions{c.exact_random, 16, seed});
  run.stats = transcript_stats(tx);
  run.procedure = tx.procedure;
  run.report = verify_all(db, placed.placement, tx, demands);
  if (!run.report->all_succeeded()) {
    for (const auto& p : tx.payloads) run.payload_dump.push_back(describe(p));
  }
  return run;
}

}  // namespace

const char* to_string(Scheme scheme) {
  for (const auto& s : kSchemeNames) {
    if (s.scheme == scheme) return s.name;
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
  for (const auto& s : kSchemeNames) {
    if (name == s.name) return s.scheme;
  }
  return std::nullopt;
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> all = [] {
    std::vector<Scheme> v;
    for (const auto& s : kSchemeNames) v.push_back(s.scheme);
    return v;
  }();
  return all;
}

bool is_point_scheme(Scheme scheme) { return scheme == Scheme::cfl_point || scheme == Scheme::ag_point; }

Rational anchor_capacity(Scheme scheme, std::uint32_t n, std::uint32_t k) {
  switch (scheme) {
    case Scheme::cfl_point: return Rational(1) / k;
    case Scheme::ag_point: return Rational(n - 1) / k;
    default: throw ConfigError(std::string(to_string(scheme)) + " is not a point scheme");
  }
}

std::optional<double> analytic_rate(Scheme scheme, std::uint32_t n, std::uint32_t k, const Rational& m) {
  try {
    switch (scheme) {
      case Scheme::uncoded: return to_double(r_uncoded(n, k, m));
      case Scheme::man_c: return to_double(r_man_c(n, k, m));
      case Scheme::cfl_point:
        if (m != anchor_capacity(scheme, n, k)) return std::nullopt;
        return to_double(r_cfl_point(n, k));
      case Scheme::ag_point:
        if (m != anchor_capacity(scheme, n, k)) return std::nullopt;
        return to_double(ag_point(n, k));
      case Scheme::gbc: return to_double(r_gbc(n, k, m));
      case Scheme::best_centralized: return to_double(r_best_centralized(n, k, m));
      case Scheme::wtp_lb: return to_double(r_wtp_lb(n, k, m));
      case Scheme::cutset: return to_double(cutset_bound(n, k, m));
      case Scheme::man_d: return r_man_d(n, k, to_double(m));
      case Scheme::gbd: return r_gbd_analytic(n, k, to_double(m)).total;
    }
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

std::vector<Rational> linear_grid(const Rational& lo, const Rational& hi, std::size_t points) {
  if (points == 0) throw ConfigError("grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<Rational> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
  return out;
}

CurveConfig curve_preset(const std::string& name, std::size_t points) {
  CurveConfig c;
  const std::vector<Scheme> centralized{Scheme::uncoded, Scheme::man_c,  Scheme::cfl_point, Scheme::ag_point,
                                        Scheme::gbc,     Scheme::best_centralized, Scheme::wtp_lb, Scheme::cutset};
  if (name == "fig3" || name == "fig4") {
    const bool fig3 = name == "fig3";
    c.n = fig3 ? 10 : 50;
    c.k = fig3 ? 15 : 130;
    c.capacities = linear_grid(Rational(1) / c.k, Rational((fig3 ? 2 : 4) * c.n) / c.k, points);
    c.schemes = centralized;
  } else if (name == "fig6") {
    c.n = 30;
    c.k = 50;
    for (std::size_t l = 1; l <= points; ++l) c.capacities.push_back(Rational(c.n) * l / points);
    c.schemes = {Scheme::uncoded, Scheme::man_d, Scheme::gbd, Scheme::gbc, Scheme::best_centralized, Scheme::cutset};
  } else {
    throw ConfigError("unknown curve preset '" + name + "' (expected fig3, fig4 or fig6)");
  }
  return c;
}

std::vector<CurveRow> run_curve(const CurveConfig& config) {
  struct Keyed {
    CurveRow row;
    std::size_t order;
  };
  std::vector<Keyed> rows;
  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    const Scheme scheme = config.schemes[s];
    if (is_point_scheme(scheme)) {
      const Rational m = anchor_capacity(scheme, config.n, config.k);
      rows.push_back({{m, scheme, analytic_rate(scheme, config.n, config.k, m)}, s});
      continue;
    }
    for (const auto& m : config.capacities) rows.push_back({{m, scheme, analytic_rate(scheme, config.n, config.k, m)}, s});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Keyed& a, const Keyed& b) {
    return a.row.m < b.row.m || (a.row.m == b.row.m && a.order < b.order);
  });
  std::vector<CurveRow> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.row));
  return out;
}

std::vector<SweepRow> run_sweep(std::uint32_t n, std::uint32_t k_lo, std::uint32_t k_hi, std::uint32_t step) {
  if (step == 0) throw ConfigError("sweep step must be positive");
  if (k_lo <= n) throw ConfigError("sweep needs K > N");
  std::vector<SweepRow> out;
  for (std::uint32_t k = k_lo; k <= k_hi; k += step) {
    const Rational m = Rational(n) / k;
    SweepRow row;
    row.k = k;
    row.gbc = r_gbc(n, k, m);
    row.best = r_best_centralized(n, k, m);
    row.cutset = cutset_bound(n, k, m);
    row.reduction_pct = to_double((row.best - row.gbc) / row.best * 100);
    out.push_back(row);
  }
  return out;
}

bool SimulationResult::all_decoded() const {
  return std::all_of(runs.begin(), runs.end(), [](const auto& r) { return !r.report || r.report->all_succeeded(); });
}

double SimulationResult::mean_measured() const {
  if (runs.empty()) return 0;
  double sum = 0;
  for (const auto& r : runs) sum += to_double(r.stats.rate());
  return sum / runs.size();
}

SimulationResult run_simulate(const SimulateConfig& config) {
  if (config.seeds.empty()) throw ConfigError("at least one seed is required");
  if (config.n < 1 || config.k < 1) throw ConfigError("N and K must be positive");
  SimulationResult result;
  result.config = config;
  SystemParams params;
  params.n_files = config.n;
  params.n_users = config.k;

  std::uint32_t t = 1;
  std::uint64_t granularity = 1;
  switch (config.scheme) {
    case Scheme::gbc:
      result.m = config.m.value_or(Rational(config.n) / config.k);
      granularity = CentralizedPlacementSpec{CentralizedKind::gbc}.granularity(config.k);
      result.analytic = config.n < config.k ? analytic_rate(Scheme::gbc, config.n, config.k, result.m)
                                            : analytic_rate(Scheme::man_c, config.n, config.k, result.m);
      break;
    case Scheme::man_c:
      result.m = resolve_man_capacity(config, t);
      granularity = CentralizedPlacementSpec{CentralizedKind::man, t}.granularity(config.k);
      result.analytic = to_double(r_man_c_formula(config.n, config.k, result.m));
      break;
    case Scheme::gbd:
    case Scheme::man_d:
      if (!config.m) throw ConfigError("decentralized simulation needs --m");
      result.m = *config.m;
      if (config.scheme == Scheme::gbd) {
        result.analytic = analytic_rate(Scheme::gbd, config.n, config.k, result.m);
      } else {
        result.analytic = r_man_d_coded(config.n, config.k, to_double(result.m));
      }
      break;
    default:
      throw ConfigError(std::string("scheme ") + to_string(config.scheme) +
                        " has no placement/delivery procedure (simulate supports gbc, man-c, gbd, man-d)");
  }
  params.cache = result.m;
  params.file_len = result.f_effective = round_up_file_len(config.f, granularity);
  params.validate();
  for (auto seed : config.seeds) {
    if (config.scheme == Scheme::gbc || config.scheme == Scheme::man_c) {
      result.runs.push_back(centralized_run(params, config.scheme, t, seed));
    } else {
      result.runs.push_back(decentralized_run(params, config, seed));
    }
  }
  return result;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
  os << "m,scheme,rate\n";
  for (const auto& r : rows) os << num(to_double(r.m)) << ',' << to_string(r.scheme) << ',' << (r.rate ? num(*r.rate) : "NA") << '\n';
}

void write_curve_json(std::ostream& os, const CurveConfig& config, const std::vector<CurveRow>& rows) {
  Json j{{"schema", 1}, {"kind", "curve"}, {"n", config.n}, {"k", config.k}};
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"m", to_double(r.m)}, {"m_exact", to_string(r.m)}, {"scheme", to_string(r.scheme)}, {"rate", json_num(r.rate)}});
  }
  j["rows"] = std::move(arr);
  os << j.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "k,gbc,best,cutset,reduction_pct\n";
  for (const auto& r : rows) {
    os << r.k << ',' << num(to_double(r.gbc)) << ',' << num(to_double(r.best)) << ',' << num(to_double(r.cutset)) << ','
       << num(r.reduction_pct) << '\n';
  }
}

void write_sweep_json(std::ostream& os, std::uint32_t n, const std::vector<SweepRow>& rows) {
  Json j{{"schema", 1}, {"kind", "sweep"}, {"n", n}};
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"k", r.k},
                   {"m_exact", to_string(Rational(n) / r.k)},
                   {"gbc", to_double(r.gbc)},
                   {"best", to_double(r.best)},
                   {"cutset", to_double(r.cutset)},
                   {"reduction_pct", r.reduction_pct}});
  }
  j["rows"] = std::move(arr);
  os << j.dump(2) << '\n';
}

void write_simulate_csv(std::ostream& os, const SimulationResult& result) {
  os << "m,scheme,rate,measured,delta,seed,f_effective\n";
  for (const auto& run : result.runs) {
    const double measured = to_double(run.stats.rate());
    os << num(to_double(result.m)) << ',' << to_string(result.config.scheme) << ','
       << (result.analytic ? num(*result.analytic) : "NA") << ',' << num(measured) << ','
       << (result.analytic ? num(measured - *result.analytic) : "NA") << ',' << run.seed << ',' << result.f_effective
       << '\n';
  }
}

void write_simulate_json(std::ostream& os, const SimulationResult& result) {
  const auto& c = result.config;
  Json j{{"schema", 1},
         {"kind", "simulate"},
         {"scheme", to_string(c.scheme)},
         {"n", c.n},
         {"k", c.k},
         {"m", to_double(result.m)},
         {"m_exact", to_string(result.m)},
         {"f_requested", c.f},
         {"f_effective", result.f_effective},
         {"seeds", c.seeds},
         {"analytic", json_num(result.analytic)},
         {"mean_measured", result.mean_measured()},
         {"all_decoded", result.all_decoded()}};
  Json runs = Json::array();
  for (const auto& run : result.runs) {
    const double measured = to_double(run.stats.rate());
    Json r{{"seed", run.seed},
           {"procedure", run.procedure},
           {"measured", measured},
           {"measured_exact", to_string(run.stats.rate())},
           {"delta", result.analytic ? Json(measured - *result.analytic) : Json(nullptr)},
           {"total_bits", run.stats.total_bits()},
           {"parts", parts_json(run.stats)}};
    if (run.report) {
      Json users = Json::array();
      for (std::size_t k = 0; k < run.report->users.size(); ++k) {
        const auto& u = run.report->users[k];
        users.push_back({{"user", k + 1},
                         {"success", u.success},
                         {"method", to_string(u.method)},
                         {"mismatched_bits", u.mismatched_bits},
                         {"unresolved_bits", u.unresolved_bits}});
      }
      r["decoded"] = run.report->all_succeeded();
      r["users"] = std::move(users);
    } else {
      r["decoded"] = nullptr;
    }
    if (!run.payload_dump.empty()) r["payload_dump"] = run.payload_dump;
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  os << j.dump(2) << '\n';
}

}  // namespace codedcache
