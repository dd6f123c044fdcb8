#include "attsp/trends.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "attsp/errors.hpp"

namespace attsp {

std::vector<WeekCount> weekly_volume(const std::vector<RawPost>& posts) {
  if (posts.empty()) return {};
  UnixTime first = posts.front().timestamp, last = posts.front().timestamp;
  for (const auto& p : posts) {
    first = std::min(first, p.timestamp);
    last = std::max(last, p.timestamp);
  }
  const UnixTime start = iso_week_start(first);
  const UnixTime end = iso_week_start(last);
  const UnixTime week = 7 * 86400;
  std::vector<WeekCount> out;
  for (UnixTime w = start; w <= end; w += week) out.push_back({w, 0});
  for (const auto& p : posts) {
    const auto idx = (iso_week_start(p.timestamp) - start) / week;
    out[static_cast<std::size_t>(idx)].count += 1;
  }
  return out;
}

namespace {

double tricube(double u) {
  u = std::abs(u);
  if (u >= 1.0) return 0.0;
  const double c = 1.0 - u * u * u;
  return c * c * c;
}

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  std::nth_element(v.begin(), v.begin() + n / 2, v.end());
  double hi = v[n / 2];
  if (n % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
  return 0.5 * (v[n / 2 - 1] + hi);
}

}  // namespace

std::vector<TimeSeriesPoint> lowess(const std::vector<TimeSeriesPoint>& points,
                                    double bandwidth_fraction,
                                    int robust_iterations) {
  const std::size_t n = points.size();
  if (n < 2) throw InsufficientData("lowess needs at least 2 points");
  if (bandwidth_fraction <= 0.0 || bandwidth_fraction > 1.0)
    throw Error("bandwidth_fraction must be in (0, 1]");
  for (std::size_t i = 1; i < n; ++i) {
    if (points[i].t < points[i - 1].t)
      throw Error("lowess input must be sorted by t");
  }
  const std::size_t q = std::min(
      n, static_cast<std::size_t>(
             std::ceil(bandwidth_fraction * static_cast<double>(n))));
  const std::size_t window = std::max<std::size_t>(q, 2);

  std::vector<double> robustness(n, 1.0), fitted(n, 0.0);
  for (int iter = 0; iter <= robust_iterations; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      // nearest-neighbor window around i on the sorted t axis
      std::size_t lo = i >= window - 1 ? i - (window - 1) : 0;
      std::size_t hi = lo + window - 1;
      if (hi >= n) {
        hi = n - 1;
        lo = hi - (window - 1);
      }
      while (lo > 0 &&
             points[i].t - points[lo - 1].t < points[hi].t - points[i].t) {
        --lo;
        --hi;
      }
      while (hi + 1 < n &&
             points[hi + 1].t - points[i].t < points[i].t - points[lo].t) {
        ++lo;
        ++hi;
      }
      double dmax = std::max(points[i].t - points[lo].t,
                             points[hi].t - points[i].t);
      double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
      for (std::size_t j = lo; j <= hi; ++j) {
        const double d = points[j].t - points[i].t;
        const double w =
            robustness[j] * (dmax > 0 ? tricube(d / dmax) : 1.0);
        sw += w;
        swx += w * d;
        swy += w * points[j].y;
        swxx += w * d * d;
        swxy += w * d * points[j].y;
      }
      if (sw <= 0) {
        fitted[i] = points[i].y;
        continue;
      }
      const double det = sw * swxx - swx * swx;
      if (std::abs(det) <= 1e-12 * sw * swxx || swxx == 0.0) {
        fitted[i] = swy / sw;  // degenerate window, local constant
      } else {
        // local line evaluated at d = 0
        fitted[i] = (swxx * swy - swx * swxy) / det;
      }
    }
    if (iter == robust_iterations) break;
    std::vector<double> absres(n);
    for (std::size_t i = 0; i < n; ++i)
      absres[i] = std::abs(points[i].y - fitted[i]);
    const double s = median(absres);
    if (s <= 0) break;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = absres[i] / (6.0 * s);
      robustness[i] = u >= 1.0 ? 0.0 : (1 - u * u) * (1 - u * u);
    }
  }

  std::vector<TimeSeriesPoint> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {points[i].t, fitted[i]};
  return out;
}

double jittered_days(const RawPost& post, UnixTime epoch) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : post.id) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  // jitter in [0, 1) milliseconds expressed in days
  const double jitter =
      static_cast<double>(h % 1000000ull) / 1.0e6 * (0.001 / 86400.0);
  return static_cast<double>(post.timestamp - epoch) / 86400.0 + jitter;
}

}  // namespace attsp
