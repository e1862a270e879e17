#include "codedcache/envelope.hpp"

#include "codedcache/model.hpp"

#include <algorithm>

namespace codedcache {

ConvexEnvelope::ConvexEnvelope(std::vector<RatePoint> points) {
  if (points.empty()) throw ConfigError("envelope needs at least one point");
  std::sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.m < b.m || (a.m == b.m && a.r < b.r);
  });
  for (const auto& p : points) {
    if (!hull_.empty() && hull_.back().m == p.m) continue;
    // Drop the last vertex while it lies on or above the chord to p.
    while (hull_.size() >= 2) {
      const auto& a = hull_[hull_.size() - 2];
      const auto& b = hull_.back();
      const Rational cross = (b.m - a.m) * (p.r - a.r) - (b.r - a.r) * (p.m - a.m);
      if (cross > 0) break;
      hull_.pop_back();
    }
    hull_.push_back(p);
  }
}

Rational ConvexEnvelope::operator()(const Rational& m) const {
  if (m < min_m() || m > max_m()) {
    throw DomainError("M=" + to_string(m) + " lies outside the envelope range [" + to_string(min_m()) + ", " +
                      to_string(max_m()) + "]");
  }
  auto hi = std::lower_bound(hull_.begin(), hull_.end(), m, [](const RatePoint& p, const Rational& x) { return p.m < x; });
  if (hi->m == m) return hi->r;
  const auto& lo = *(hi - 1);
  return lo.r + (hi->r - lo.r) * (m - lo.m) / (hi->m - lo.m);
}

}  // namespace codedcache
