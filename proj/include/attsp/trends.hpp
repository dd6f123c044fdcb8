#pragma once

#include <string>
#include <vector>

#include "attsp/corpus.hpp"

namespace attsp {

struct TimeSeriesPoint {
  double t = 0.0;  // days since the epoch of the first post
  double y = 0.0;
};

struct WeekCount {
  UnixTime week_start = 0;
  int count = 0;
};

// ISO-week buckets, zero-filled between the first and last week.
std::vector<WeekCount> weekly_volume(const std::vector<RawPost>& posts);

// Locally weighted linear regression with tricube weights over the
// ceil(fraction * n) nearest neighbors, evaluated at each input t, with
// bisquare robustifying iterations.
std::vector<TimeSeriesPoint> lowess(const std::vector<TimeSeriesPoint>& points,
                                    double bandwidth_fraction = 0.3,
                                    int robust_iterations = 2);

// Deterministic sub-second jitter from the post id, so tied timestamps keep
// neighbor selection well-defined.
double jittered_days(const RawPost& post, UnixTime epoch);

}  // namespace attsp
