#include "tops/series.hpp"

#include <cmath>
#include <numeric>

#include "tops/errors.hpp"

namespace tops {

TimeSeries make_series(std::vector<double> values, std::string source) {
    if (values.size() < 2) throw TooShort("series must have at least 2 values");
    for (double v : values)
        if (!std::isfinite(v)) throw Error("series contains a non-finite value");
    TimeSeries s;
    s.values = std::move(values);
    s.meta.source = std::move(source);
    return s;
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stdev(const std::vector<double>& v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double rms(const std::vector<double>& v) {
    double ss = 0.0;
    for (double x : v) ss += x * x;
    return std::sqrt(ss / static_cast<double>(v.size()));
}

TimeSeries log_returns(const RawSeries& raw) {
    if (raw.values.size() < 2) throw TooShort("need at least 2 samples for returns");
    for (std::size_t i = 0; i < raw.values.size(); ++i)
        if (!(raw.values[i] > 0.0)) throw NonPositiveValue(i);

    TimeSeries out;
    out.values.resize(raw.values.size() - 1);
    for (std::size_t t = 0; t + 1 < raw.values.size(); ++t)
        out.values[t] = std::log(raw.values[t + 1]) - std::log(raw.values[t]);
    out.meta.transforms.push_back("log_returns");
    return out;
}

TimeSeries normalize_rms(const TimeSeries& series) {
    if (series.values.size() < 2) throw TooShort("need at least 2 samples");
    const double r = rms(series.values);
    if (!(r > 0.0)) throw DegenerateSeries("zero root mean square");

    TimeSeries out = series;
    for (double& v : out.values) v /= r;
    out.meta.transforms.push_back("normalize_rms");
    return out;
}

TimeSeries standardize(const TimeSeries& series) {
    if (series.values.size() < 2) throw TooShort("need at least 2 samples");
    const double m = mean(series.values);
    const double sd = sample_stdev(series.values);
    if (!(sd > 0.0)) throw DegenerateSeries("zero standard deviation");

    TimeSeries out = series;
    for (double& v : out.values) v = (v - m) / sd;
    out.meta.transforms.push_back("standardize");
    return out;
}

}  // namespace tops
