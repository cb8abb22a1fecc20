#pragma once

// Ingestion and conditioning of raw time series: log returns, RMS
// normalization, standardization. All operations are pure.

#include <string>
#include <vector>

namespace tops {

struct SeriesMeta {
    std::string source;
    std::vector<std::string> transforms;
};

/// A raw input series: optional ordered time labels plus values.
struct RawSeries {
    std::vector<std::string> labels;  // empty = no labels
    std::vector<double> values;
};

/// A uniformly sampled real-valued sequence with provenance.
struct TimeSeries {
    std::vector<double> values;
    SeriesMeta meta;

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

TimeSeries make_series(std::vector<double> values, std::string source = "");

/// r(t) = ln S(t+1) − ln S(t); output is one shorter than the input.
TimeSeries log_returns(const RawSeries& raw);

/// Divide by the root mean square so that the output has RMS 1.
TimeSeries normalize_rms(const TimeSeries& series);

/// Subtract the mean and divide by the sample (n−1) standard deviation.
TimeSeries standardize(const TimeSeries& series);

double mean(const std::vector<double>& v);
double sample_stdev(const std::vector<double>& v);
double rms(const std::vector<double>& v);

}  // namespace tops
