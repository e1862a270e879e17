#include "codedcache/rates.hpp"

#include "codedcache/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace codedcache {
namespace {

void require_users(std::uint32_t n, std::uint32_t k) {
  if (n < 1 || k < 1) throw DomainError("N and K must be positive");
}

void require_capacity(std::uint32_t n, const Rational& m) {
  if (m < 0 || m > n) throw DomainError("M=" + to_string(m) + " outside [0, N]");
}

void require_capacity(std::uint32_t n, double m) {
  if (!(m >= 0 && m <= n)) throw DomainError("M=" + std::to_string(m) + " outside [0, N]");
}

Rational r(std::uint64_t num, std::uint64_t den = 1) { return Rational(num) / Rational(den); }

}  // namespace

Rational r_uncoded(std::uint32_t n, std::uint32_t k, const Rational& m) {
  require_users(n, k);
  require_capacity(n, m);
  return k * (1 - m / n) * std::min(Rational(1), r(n, k));
}

Rational r_man_c_formula(std::uint32_t n, std::uint32_t k, const Rational& m) {
  require_users(n, k);
  require_capacity(n, m);
  return k * (1 - m / n) * std::min(Rational(1 / (1 + k * m / n)), r(n, k));
}

ConvexEnvelope man_c_envelope(std::uint32_t n, std::uint32_t k) {
  require_users(n, k);
  std::vector<RatePoint> pts;
  for (std::uint32_t t = 0; t <= k; ++t) {
    const Rational m = r(std::uint64_t{t} * n, k);
    pts.push_back({m, r_man_c_formula(n, k, m)});
  }
  return ConvexEnvelope(std::move(pts));
}

Rational r_man_c(std::uint32_t n, std::uint32_t k, const Rational& m) {
  require_capacity(n, m);
  return man_c_envelope(n, k)(m);
}

Rational r_cfl_point(std::uint32_t n, std::uint32_t k) {
  require_users(n, k);
  if (k < n) throw DomainError("the CFL point needs K >= N");
  return n * (1 - r(1, k));
}

bool in_zeta(std::uint32_t n, std::uint32_t k) {
  return n >= 4 && n < k && 2 * std::uint64_t{k} <= 3 * std::uint64_t{n} && std::gcd(n, k) > 1;
}

Rational f_cost(std::uint32_t n, std::uint32_t k, std::uint32_t t) {
  require_users(n, k);
  if (t < 1 || t > k) throw DomainError("t must lie in [1, K]");
  if (std::uint64_t{t} * n == 1) throw DomainError("f(N, K, t) is undefined for tN = 1");
  const Rational tn1 = Rational(std::uint64_t{t} * n) - 1;
  return Rational(n - 1) * (k - t) / ((t + 1) * tn1) + Rational(std::uint64_t{n} * n) * (1 - r(1, k)) * (t - 1) / tn1;
}

std::uint32_t t_star(std::uint32_t n, std::uint32_t k) {
  require_users(n, k);
  if (n > k) throw DomainError("t* is defined for N <= K");
  std::uint32_t best = 0;
  Rational best_f;
  for (std::uint32_t t = 1; t <= k; ++t) {
    if (std::uint64_t{t} * n == 1) continue;
    const Rational f = f_cost(n, k, t);
    if (best == 0 || f < best_f) {
      best = t;
      best_f = f;
    }
  }
  if (best == 0) throw DomainError("no admissible t for N=1, K=1");
  return best;
}

std::uint32_t t_hat(std::uint32_t n, std::uint32_t k) { return std::max<std::uint32_t>(2, t_star(n, k)); }

Rational ag_point(std::uint32_t n, std::uint32_t k) {
  if (!in_zeta(n, k)) throw DomainError("the AG point is only used for (N, K) in zeta");
  const Rational kk = k;
  return n - r(n, k) + (kk - 2) * (kk - 2 * Rational(n)) / (2 * kk);
}

MemorySharingPlan best_centralized_plan(std::uint32_t n, std::uint32_t k) {
  require_users(n, k);
  MemorySharingPlan plan;
  auto man_point = [&](std::uint32_t t) {
    const Rational m = r(std::uint64_t{t} * n, k);
    plan.anchors.push_back({m, r_man_c_formula(n, k, m)});
  };
  if (n > k || n == 1) {
    for (std::uint32_t t = 0; t <= k; ++t) man_point(t);
  } else {
    plan.t_star = t_star(n, k);
    plan.t_hat = std::max<std::uint32_t>(2, plan.t_star);
    plan.zeta_member = in_zeta(n, k);
    plan.anchors.push_back({0, Rational(std::min(n, k))});
    plan.anchors.push_back({r(1, k), r_cfl_point(n, k)});
    if (plan.zeta_member) {
      plan.anchors.push_back({r(n - 1, k), ag_point(n, k)});
      const std::uint32_t first = 2 * std::uint64_t{k} == 3 * std::uint64_t{n} ? 2 : 1;
      for (std::uint32_t t = first; t <= k; ++t) man_point(t);
    } else {
      for (std::uint32_t l = plan.t_star; l <= k; ++l) man_point(l);
    }
  }
  std::sort(plan.anchors.begin(), plan.anchors.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
  return plan;
}

Rational r_best_centralized(std::uint32_t n, std::uint32_t k, const Rational& m) {
  require_capacity(n, m);
  return ConvexEnvelope(best_centralized_plan(n, k).anchors)(m);
}

Rational r_gbc(std::uint32_t n, std::uint32_t k, const Rational& m) {
  require_users(n, k);
  if (n >= k) throw DomainError("the GBC curve needs N < K");
  const std::uint32_t th = t_hat(n, k);
  const Rational lo = r(1, k), mid = r(n, k), hi = r(std::uint64_t{th} * n, k);
  if (m < lo || m > hi) {
    throw DomainError("M=" + to_string(m) + " outside the GBC range [" + to_string(lo) + ", " + to_string(hi) + "]");
  }
  if (m <= mid) return n * (1 - m / 2 - 1 / Rational(2 * std::uint64_t{k}));
  const Rational t = th;
  return (k - t) / (t * t - 1) * (k * m / n - 1) + (2 * Rational(k) - n - 1) / (2 * (t - 1)) * (hi - m);
}

Rational r_wtp_lb(std::uint32_t n, std::uint32_t k, const Rational& m) {
  require_users(n, k);
  if (k < 2) throw DomainError("the WTP bound needs K >= 2");
  if (m <= 0 || m > n) throw DomainError("the WTP bound needs 0 < M <= N");
  const Rational nn = n, kk = k;
  const Rational co1 = nn - m - m * (nn - 1) * kk * (nn - m) / (nn * nn * (kk - 1));
  const Rational co2 = kk * (nn - m) / (nn + kk * m);
  return std::min(co1, co2);
}

Rational cutset_bound(std::uint32_t n, std::uint32_t k, const Rational& m) {
  require_users(n, k);
  require_capacity(n, m);
  Rational best = 0;
  for (std::uint32_t s = 1; s <= std::min(n, k); ++s) best = std::max(best, Rational(s - s * m / (n / s)));
  return best;
}

double r_man_d_coded(std::uint32_t n, std::uint32_t k, double m) {
  require_users(n, k);
  require_capacity(n, m);
  if (m == 0) return k;
  const double p = m / n;
  return (n / m - 1) * (1 - std::pow(1 - p, k));
}

double r_man_d(std::uint32_t n, std::uint32_t k, double m) {
  const double uncoded = k * (1 - m / n) * std::min(1.0, double(n) / k);
  return std::min(r_man_d_coded(n, k, m), uncoded);
}

GbdRates r_gbd_analytic(std::uint32_t n, std::uint32_t k, double m) {
  require_users(n, k);
  if (n >= k) throw DomainError("the GBD rate expressions need N < K");
  require_capacity(n, m);
  GbdRates out;
  const double p = m / n, q = 1 - p, K = k, N = n;
  out.random = N * q;
  if (m == 0) {
    out.part1 = out.coded = out.total = N;
    return out;
  }
  const double qk = std::pow(q, K), qk1 = std::pow(q, K - 1);
  out.part1 = N * qk;
  out.part2 = (N * K - N * (N + 1) / 2) * p * qk1;
  out.part3 = -(K - 2) * qk - 0.5 * (K - 2) * (K + 1) * p * qk1 + (1 / p) * (1 - qk1) - 1;
  out.coded = 1 / p - 1 - ((K - N - 2) * (1 + 0.5 * (K - N - 1) * p) + 1 / p) * qk1;
  out.total = std::min(out.coded, out.random);
  return out;
}

}  // namespace codedcache
