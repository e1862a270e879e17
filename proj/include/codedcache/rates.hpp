#pragma once

#include "codedcache/envelope.hpp"
#include "codedcache/rational.hpp"

#include <cstdint>
#include <vector>

namespace codedcache {

// Centralized rates are exact rationals; decentralized ones are doubles.

/// K(1 - M/N) min{1, N/K}.
Rational r_uncoded(std::uint32_t n, std::uint32_t k, const Rational& m);

/// K(1 - M/N) min{1/(1 + KM/N), N/K}, evaluated at any M.
Rational r_man_c_formula(std::uint32_t n, std::uint32_t k, const Rational& m);

/// MAN rate: the formula at M = tN/K, memory sharing between those points elsewhere.
Rational r_man_c(std::uint32_t n, std::uint32_t k, const Rational& m);
ConvexEnvelope man_c_envelope(std::uint32_t n, std::uint32_t k);

/// CFL point N(1 - 1/K) at M = 1/K; requires K >= N.
Rational r_cfl_point(std::uint32_t n, std::uint32_t k);

/// 4 <= N < K <= 3N/2 and gcd(N, K) > 1.
bool in_zeta(std::uint32_t n, std::uint32_t k);

/// Memory sharing between the CFL point and MAN at M = tN/K, evaluated at M = N/K.
Rational f_cost(std::uint32_t n, std::uint32_t k, std::uint32_t t);

/// argmin_t f(N, K, t) over t in [1:K] (ties to the smaller t); requires N <= K.
std::uint32_t t_star(std::uint32_t n, std::uint32_t k);
std::uint32_t t_hat(std::uint32_t n, std::uint32_t k);

/// AG rate at M = (N-1)/K; requires (N, K) in zeta.
Rational ag_point(std::uint32_t n, std::uint32_t k);

struct MemorySharingPlan {
  std::vector<RatePoint> anchors;  // sorted by M
  std::uint32_t t_star = 0;        // 0 when not applicable (N > K)
  std::uint32_t t_hat = 0;
  bool zeta_member = false;
};

/// Anchor points of the best known centralized scheme before GBC.
MemorySharingPlan best_centralized_plan(std::uint32_t n, std::uint32_t k);
Rational r_best_centralized(std::uint32_t n, std::uint32_t k, const Rational& m);

/// GBC with memory sharing: CFL to GBC on [1/K, N/K], GBC to MAN(t_hat) on
/// [N/K, t_hat N/K]. Requires N < K.
Rational r_gbc(std::uint32_t n, std::uint32_t k, const Rational& m);

/// min{R_co1, R_co2}; requires 0 < M <= N and K >= 2.
Rational r_wtp_lb(std::uint32_t n, std::uint32_t k, const Rational& m);

/// max over s in [1:min(N,K)] of s - sM/floor(N/s), clamped at 0.
Rational cutset_bound(std::uint32_t n, std::uint32_t k, const Rational& m);

/// Decentralized MAN, min of the coded procedure and uncoded delivery.
double r_man_d(std::uint32_t n, std::uint32_t k, double m);
/// Coded procedure alone: (N/M - 1)(1 - (1 - M/N)^K).
double r_man_d_coded(std::uint32_t n, std::uint32_t k, double m);

struct GbdRates {
  double total = 0;
  double part1 = 0;
  double part2 = 0;
  double part3 = 0;
  double coded = 0;   // closed form of part1 + part2 + part3
  double random = 0;  // uncoded fallback
};

/// GBD rates; requires N < K and 0 <= M <= N (M = 0 as the limit).
GbdRates r_gbd_analytic(std::uint32_t n, std::uint32_t k, double m);

}  // namespace codedcache
