#ifndef HEISOT_VOLUME_HPP
#define HEISOT_VOLUME_HPP

// Monte Carlo volumes of Carnot-Caratheodory balls. Lebesgue measure on
// R^{2n+1} is a Haar measure of H^n and |B(x, r)| = c_n r^{2n+2}.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>

#include "heisot/box.hpp"
#include "heisot/geodesic.hpp"
#include "heisot/random.hpp"

namespace heisot {

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::size_t hits = 0;
};

/// Hit-or-miss estimate of a volume given a bounding box and a membership oracle.
template <typename Membership>
VolumeEstimate hit_or_miss_volume(const Box& box, Membership&& inside, std::size_t samples, Rng& rng) {
  detail::require(samples > 0, "volume estimate needs at least one sample");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i)
    if (inside(box.sample(rng))) ++hits;
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  const double vol = box.volume();
  return {vol * p, vol * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, hits};
}

/// Box containing B(0, r): |zeta| <= d and |t| <= 0.6371 d^2 for every point at distance d.
inline Box ball_bounding_box(std::size_t n, double r) {
  Box b = Box::cube(n, -r, r);
  b.lo.back() = -r * r;
  b.hi.back() = r * r;
  return b;
}

/// Monte Carlo estimate of |B(0, r)| in H^n.
inline VolumeEstimate estimate_ball_volume(std::size_t n, double r, std::size_t samples, std::uint64_t seed) {
  detail::require(n >= 1, "ball volume: n must be at least 1");
  detail::require(r > 0.0, "ball volume: radius must be positive");
  Rng rng(seed);
  return hit_or_miss_volume(
      ball_bounding_box(n, r), [r](const Point& p) { return cc_norm(p) <= r; }, samples, rng);
}

inline constexpr std::size_t kUnitBallSamples = 1'000'000;

/// c_n = |B(0, 1)|, estimated once per n and cached; thread-safe.
inline VolumeEstimate haar_unit_ball_volume(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, VolumeEstimate> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  const VolumeEstimate est = estimate_ball_volume(n, 1.0, kUnitBallSamples, 0x5eed0000u + n);
  cache.emplace(n, est);
  return est;
}

}  // namespace heisot

#endif  // HEISOT_VOLUME_HPP
