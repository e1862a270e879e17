#pragma once

#include "codedcache/rational.hpp"

#include <vector>

namespace codedcache {

/// An achievable (M, R) operating point.
struct RatePoint {
  Rational m;
  Rational r;
  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

/// Lower convex envelope of a set of operating points, i.e. everything
/// reachable from them by memory sharing.
class ConvexEnvelope {
 public:
  /// Needs at least one point; among points with equal M the lowest R is kept.
  explicit ConvexEnvelope(std::vector<RatePoint> points);

  /// Envelope value at `m`; throws DomainError outside [min M, max M].
  Rational operator()(const Rational& m) const;
  const std::vector<RatePoint>& vertices() const { return hull_; }
  const Rational& min_m() const { return hull_.front().m; }
  const Rational& max_m() const { return hull_.back().m; }

 private:
  std::vector<RatePoint> hull_;
};

}  // namespace codedcache
