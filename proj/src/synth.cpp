#include "tops/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tops/errors.hpp"
#include "tops/rng.hpp"

namespace tops {

TimeSeries gen_ar1(const Ar1Params& p) {
    if (!(std::fabs(p.b) < 1.0)) throw InvalidCoefficient("AR(1) coefficient must satisfy |b| < 1");
    if (!(p.sigma_xi > 0.0)) throw InvalidCoefficient("innovation stdev must be > 0");
    if (p.length < 2) throw TooShort("AR(1) length must be >= 2");

    Rng rng(p.seed);
    TimeSeries out;
    out.values.resize(static_cast<std::size_t>(p.length));
    out.values[0] = rng.normal() * p.sigma_xi / std::sqrt(1.0 - p.b * p.b);
    for (int t = 1; t < p.length; ++t)
        out.values[static_cast<std::size_t>(t)] =
            p.b * out.values[static_cast<std::size_t>(t - 1)] + rng.normal() * p.sigma_xi;
    out.meta.source = "ar1";
    return out;
}

int PiecewiseLagModel::max_abs_lag() const {
    int m = 0;
    for (const auto& s : segments) m = std::max(m, std::abs(s.lag));
    return m;
}

int PiecewiseLagModel::lag_at(int i) const {
    for (const auto& s : segments)
        if (i < s.end_index) return s.lag;
    throw OutOfRange("index beyond the last segment");
}

namespace {

void validate_model(const PiecewiseLagModel& m) {
    if (m.segments.empty()) throw Error("piecewise model needs at least one segment");
    int prev = 0;
    for (const auto& s : m.segments) {
        if (s.end_index <= prev) throw Error("segment end indices must be strictly increasing");
        prev = s.end_index;
    }
    if (!(m.f >= 0.0)) throw InvalidCoefficient("noise ratio f must be >= 0");
}

}  // namespace

TimeSeries gen_piecewise(const TimeSeries& x, const PiecewiseLagModel& m, double sigma_xi) {
    validate_model(m);
    const int n = m.length();
    for (const auto& s : m.segments) {
        // every index the segment touches must exist in x
        const int first = m.x_origin - s.lag;
        const int last = m.x_origin + s.end_index - 1 - s.lag;
        if (first < 0 || last >= x.size())
            throw LagOutOfRange("lag " + std::to_string(s.lag) +
                                " reaches outside the driver series");
    }

    Rng rng(derive_seed(m.seed, 0x9e37ULL));
    TimeSeries out;
    out.values.resize(static_cast<std::size_t>(n));
    const double sigma_eta = m.f * sigma_xi;
    for (int i = 0; i < n; ++i) {
        const int tau = m.lag_at(i);
        out.values[static_cast<std::size_t>(i)] =
            m.a * x[m.x_origin + i - tau] + rng.normal() * sigma_eta;
    }
    out.meta.source = "piecewise_lag";
    return out;
}

PiecewiseLagModel gen_random_model(const RandomModelParams& p, std::uint64_t seed) {
    if (p.lag_min > p.lag_max || p.a_min > p.a_max) throw Error("empty parameter range");
    if (p.n_segments < 1 || p.segment_length < 1) throw Error("invalid segmentation");

    Rng rng(derive_seed(seed, 0x7a6eULL));
    PiecewiseLagModel m;
    m.seed = seed;
    m.f = p.f;
    m.a = p.a_min + (p.a_max - p.a_min) * rng.uniform();
    for (int j = 1; j <= p.n_segments; ++j)
        m.segments.push_back({j * p.segment_length, rng.uniform_int(p.lag_min, p.lag_max)});
    return m;
}

TimeSeries reshuffle(const TimeSeries& series, std::uint64_t seed) {
    TimeSeries out = series;
    Rng rng(derive_seed(seed, 0x5u));
    for (std::size_t i = out.values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(out.values[i - 1], out.values[j]);
    }
    out.meta.transforms.push_back("reshuffle");
    return out;
}

SyntheticPair gen_pair(PiecewiseLagModel model, double b, std::uint64_t seed, double sigma_xi) {
    validate_model(model);
    const int n = model.length();
    const int margin = model.max_abs_lag() + 100;

    Ar1Params ar;
    ar.b = b;
    ar.sigma_xi = sigma_xi;
    ar.length = n + 2 * margin;
    ar.seed = derive_seed(seed, 0x11ULL);
    const TimeSeries x_full = gen_ar1(ar);

    model.x_origin = margin;
    model.seed = derive_seed(seed, 0x22ULL);

    SyntheticPair pair;
    pair.y = gen_piecewise(x_full, model, sigma_xi);
    pair.x.values.assign(x_full.values.begin() + margin, x_full.values.begin() + margin + n);
    pair.x.meta.source = "ar1";
    pair.model = std::move(model);
    pair.b = b;
    pair.sigma_xi = sigma_xi;
    return pair;
}

PiecewiseLagModel benchmark_model(BenchmarkModel which) {
    PiecewiseLagModel m;
    m.a = 0.8;
    m.f = 0.2;
    switch (which) {
        case BenchmarkModel::A:
            m.segments = {{100, 30}, {200, 15}, {300, 0}, {400, -15}, {500, -30}};
            break;
        case BenchmarkModel::B:
            m.segments = {{200, 30}, {400, 15}, {600, 0}, {800, -15}, {1000, -30}};
            break;
        case BenchmarkModel::C:
            m.segments = {{200, 60}, {400, 30}, {600, 0}, {800, -30}, {1000, -60}};
            break;
    }
    return m;
}

SyntheticPair benchmark_pair(BenchmarkModel which, std::uint64_t seed) {
    return gen_pair(benchmark_model(which), 0.7, seed);
}

}  // namespace tops
