#pragma once

// Synthetic benchmark generators: AR(1) drivers, piecewise-lag responses
// with tunable coupling and noise, value reshuffling. All generators are
// pure functions of (parameters, seed).

#include <cstdint>
#include <vector>

#include "tops/series.hpp"

namespace tops {

struct Ar1Params {
    double b = 0.7;        // AR coefficient, |b| < 1
    double sigma_xi = 1.0; // innovation stdev
    int length = 500;
    std::uint64_t seed = 0;
};

/// X(0) from the stationary law N(0, σ²/(1−b²)), then X(t) = bX(t−1) + ξ.
TimeSeries gen_ar1(const Ar1Params& p);

struct LagSegment {
    int end_index;  // exclusive end of the segment in Y's index
    int lag;        // τ: Y(i) couples to X(i − τ)
};

struct PiecewiseLagModel {
    std::vector<LagSegment> segments;  // strictly increasing ends, last == N
    double a = 0.8;                    // coupling coefficient
    double f = 0.2;                    // noise ratio σ_η / σ_ξ
    std::uint64_t seed = 0;
    int x_origin = 0;                  // index in X that Y's index 0 couples to (lag 0)

    int length() const { return segments.empty() ? 0 : segments.back().end_index; }
    int max_abs_lag() const;
    int lag_at(int i) const;
};

/// Y(i) = a·X(x_origin + i − τ_seg(i)) + η, η ~ N(0, f·σ_ξ).
TimeSeries gen_piecewise(const TimeSeries& x, const PiecewiseLagModel& m, double sigma_xi = 1.0);

struct RandomModelParams {
    int n_segments = 5;
    int segment_length = 100;
    int lag_min = -30;
    int lag_max = 30;
    double a_min = 0.7;
    double a_max = 1.0;
    double f = 0.2;
};

/// Segment lags uniform on [lag_min, lag_max], coupling uniform on [a_min, a_max].
PiecewiseLagModel gen_random_model(const RandomModelParams& p, std::uint64_t seed);

/// Uniform random permutation of the values (Fisher–Yates).
TimeSeries reshuffle(const TimeSeries& series, std::uint64_t seed);

/// A driver/response pair ready for analysis: X is the AR(1) driver trimmed
/// to the response's span, which was generated against the untrimmed X with
/// a burn-in margin of max|τ|+100 on both sides.
struct SyntheticPair {
    TimeSeries x;
    TimeSeries y;
    PiecewiseLagModel model;
    double b = 0.7;
    double sigma_xi = 1.0;
};

SyntheticPair gen_pair(PiecewiseLagModel model, double b, std::uint64_t seed,
                       double sigma_xi = 1.0);

/// Built-in benchmark presets:
///   A: lags +30,+15,0,−15,−30 over five 100-step segments (N=500)
///   B: same lags over five 200-step segments (N=1000)
///   C: lags +60,+30,0,−30,−60 over five 200-step segments (N=1000)
/// all with a=0.8, b=0.7, f=0.2.
enum class BenchmarkModel { A, B, C };

SyntheticPair benchmark_pair(BenchmarkModel which, std::uint64_t seed);
PiecewiseLagModel benchmark_model(BenchmarkModel which);

}  // namespace tops
