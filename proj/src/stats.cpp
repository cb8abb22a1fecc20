#include "tops/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "tops/errors.hpp"
#include "tops/parallel.hpp"
#include "tops/rng.hpp"

namespace tops {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTStatCap = 1e12;

double round_half_away(double v) { return v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5); }

}  // namespace

double quantile(std::vector<double> sample, double q) {
    if (sample.empty()) throw EmptySample("quantile of an empty sample");
    std::sort(sample.begin(), sample.end());
    if (sample.size() == 1) return sample[0];
    const double h = q * static_cast<double>(sample.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sample.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sample[lo] + frac * (sample[hi] - sample[lo]);
}

BootstrapBand bootstrap_band(const TimeSeries& x, const TimeSeries& y, const AnalysisConfig& cfg,
                             int n, std::uint64_t seed, bool keep_paths, double q_low,
                             double q_high) {
    if (n < 20) throw Error("bootstrap band needs at least 20 reshuffles");
    const int levels = 2 * x.size() - 1;

    std::vector<std::vector<double>> paths(static_cast<std::size_t>(n));
    std::vector<int> t0(static_cast<std::size_t>(n), 0);
    parallel_for(static_cast<std::size_t>(n), cfg.threads, [&](std::size_t i) {
        const TimeSeries xs = reshuffle(x, derive_seed(seed, 2 * i));
        const TimeSeries ys = reshuffle(y, derive_seed(seed, 2 * i + 1));
        const DistanceMatrix e = build_distance(xs, ys, cfg.distance);
        const PathSelection sel = select_best(e, cfg.temperature, cfg.boundary, cfg.method, 1);
        paths[i] = sel.best.xs;
        t0[i] = sel.best.start.t;
    });

    BootstrapBand band;
    band.n_reshuffles = n;
    band.q_low_level = q_low;
    band.q_high_level = q_high;
    band.q_low.assign(static_cast<std::size_t>(levels), kNaN);
    band.q_high.assign(static_cast<std::size_t>(levels), kNaN);
    band.coverage.assign(static_cast<std::size_t>(levels), 0);

    std::vector<double> column;
    for (int t = 0; t < levels; ++t) {
        column.clear();
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const int j = t - t0[i];
            if (j >= 0 && j < static_cast<int>(paths[i].size()))
                column.push_back(paths[i][static_cast<std::size_t>(j)]);
        }
        band.coverage[static_cast<std::size_t>(t)] = static_cast<int>(column.size());
        if (!column.empty()) {
            band.q_low[static_cast<std::size_t>(t)] = quantile(column, q_low);
            band.q_high[static_cast<std::size_t>(t)] = quantile(column, q_high);
        }
    }
    if (keep_paths) {
        band.paths = std::move(paths);
        band.path_t0 = std::move(t0);
    }
    return band;
}

RhoResult rho_metric(std::vector<double> fe_signal, std::vector<double> fe_random,
                     const std::optional<HistogramSpec>& bins) {
    if (fe_signal.empty() || fe_random.empty()) throw EmptySample("rho_metric needs both samples");

    RhoResult out;
    HistogramSpec spec;
    if (bins) {
        spec = *bins;
        if (spec.bins < 1 || !(spec.width > 0.0)) throw Error("invalid histogram spec");
    } else {
        std::vector<double> pooled = fe_signal;
        pooled.insert(pooled.end(), fe_random.begin(), fe_random.end());
        const double lo = *std::min_element(pooled.begin(), pooled.end());
        const double hi = *std::max_element(pooled.begin(), pooled.end());
        if (hi <= lo) {
            spec = {lo, 1.0, 1};
        } else {
            const double iqr = quantile(pooled, 0.75) - quantile(pooled, 0.25);
            double width = 2.0 * iqr / std::cbrt(static_cast<double>(pooled.size()));
            if (!(width > 0.0)) width = (hi - lo) / std::ceil(std::sqrt(static_cast<double>(pooled.size())));
            int nb = static_cast<int>(std::ceil((hi - lo) / width));
            nb = std::clamp(nb, 1, 100000);
            spec = {lo, (hi - lo) / nb, nb};
        }
    }

    auto count = [&spec](const std::vector<double>& sample) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(spec.bins), 0);
        for (double v : sample) {
            int b = static_cast<int>(std::floor((v - spec.lo) / spec.width));
            b = std::clamp(b, 0, spec.bins - 1);
            ++c[static_cast<std::size_t>(b)];
        }
        return c;
    };
    const auto cs = count(fe_signal);
    const auto cr = count(fe_random);
    const std::int64_t ns = static_cast<std::int64_t>(fe_signal.size());
    const std::int64_t nr = static_cast<std::int64_t>(fe_random.size());

    // Integer cross-products keep ρ of identical samples at exactly 1.
    long double overlap = 0.0L;
    for (int b = 0; b < spec.bins; ++b)
        overlap += static_cast<long double>(
            std::min(cs[static_cast<std::size_t>(b)] * nr, cr[static_cast<std::size_t>(b)] * ns));
    out.rho = static_cast<double>(overlap / (static_cast<long double>(ns) * nr));
    out.bins = spec;
    out.fe_signal = std::move(fe_signal);
    out.fe_random = std::move(fe_random);
    return out;
}

LeadLagSeries path_to_lags(const ThermalPath& path, int n) {
    std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
    std::vector<int> hits(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < path.xs.size(); ++i) {
        const int t = path.start.t + static_cast<int>(i);
        const double x = path.xs[i];
        const int t2 = static_cast<int>(round_half_away((t + x) / 2.0));
        if (t2 >= 0 && t2 < n) {
            sum[static_cast<std::size_t>(t2)] += x;
            ++hits[static_cast<std::size_t>(t2)];
        }
    }
    LeadLagSeries out;
    out.lag.assign(static_cast<std::size_t>(n), 0);
    out.usable.assign(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        if (hits[static_cast<std::size_t>(i)] == 0) continue;
        const double mean_x = sum[static_cast<std::size_t>(i)] / hits[static_cast<std::size_t>(i)];
        out.lag[static_cast<std::size_t>(i)] = static_cast<int>(round_half_away(-mean_x));
        out.usable[static_cast<std::size_t>(i)] = true;
    }
    return out;
}

SelfConsistencyResult regression_ttest(const TimeSeries& x, const TimeSeries& y,
                                       const LeadLagSeries& lags, Window window, double alpha) {
    if (window.start < 0 || window.length < 2 || window.start + window.length > y.size())
        throw OutOfRange("window outside the series span");
    if (static_cast<int>(lags.lag.size()) < y.size())
        throw LengthMismatch("lag series shorter than the response series");

    std::vector<double> xs, ys;
    for (int t = window.start; t < window.start + window.length; ++t) {
        if (!lags.usable[static_cast<std::size_t>(t)]) continue;
        const int xi = t + lags.lag[static_cast<std::size_t>(t)];
        if (xi < 0 || xi >= x.size()) continue;
        xs.push_back(x[xi]);
        ys.push_back(y[t]);
    }
    const int np = static_cast<int>(xs.size());
    if (np < 10)
        throw InsufficientOverlap("fewer than 10 usable points after lag synchronization");

    const double mx = mean(xs);
    const double my = mean(ys);
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < np; ++i) {
        sxx += (xs[static_cast<std::size_t>(i)] - mx) * (xs[static_cast<std::size_t>(i)] - mx);
        sxy += (xs[static_cast<std::size_t>(i)] - mx) * (ys[static_cast<std::size_t>(i)] - my);
    }
    if (!(sxx > 0.0)) throw DegenerateSeries("synchronized regressor is constant");

    SelfConsistencyResult res;
    res.window = window;
    res.n_points = np;
    res.a_hat = sxy / sxx;
    res.c_hat = my - res.a_hat * mx;

    double rss = 0.0, rss_noc = 0.0;
    for (int i = 0; i < np; ++i) {
        const double xv = xs[static_cast<std::size_t>(i)];
        const double yv = ys[static_cast<std::size_t>(i)];
        const double r = yv - res.c_hat - res.a_hat * xv;
        rss += r * r;
        const double r0 = yv - res.a_hat * xv;  // residual about â·X, no intercept
        rss_noc += r0 * r0;
    }
    const double s2 = rss / static_cast<double>(np - 2);
    if (s2 > 0.0) {
        res.t_stat = res.a_hat / std::sqrt(s2 / sxx);
        if (std::fabs(res.t_stat) > kTStatCap) res.t_stat = std::copysign(kTStatCap, res.t_stat);
    } else {
        res.t_stat = std::copysign(kTStatCap, res.a_hat == 0.0 ? 1.0 : res.a_hat);
    }
    const boost::math::students_t_distribution<double> dist(static_cast<double>(np - 2));
    const double crit = boost::math::quantile(dist, 1.0 - alpha / 2.0);
    res.significant = std::fabs(res.t_stat) > crit;
    res.f_hat = std::sqrt(rss_noc / sxx);
    return res;
}

double SignalMap::lookup(double a, double f, bool* clamped) const {
    auto nearest = [](const std::vector<double>& axis, double v, bool* clip) {
        std::size_t best = 0;
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < axis.size(); ++i) {
            const double d = std::fabs(axis[i] - v);
            if (d < dist) {
                dist = d;
                best = i;
            }
        }
        if (clip && (v < axis.front() - 1e-12 || v > axis.back() + 1e-12)) *clip = true;
        return best;
    };
    bool clip = false;
    const std::size_t ai = nearest(a_values, a, &clip);
    const std::size_t fi = nearest(f_values, f, &clip);
    if (clamped) *clamped = clip;
    return at(ai, fi);
}

std::vector<double> default_map_axis() {
    std::vector<double> axis;
    for (double v = 0.01; v < 0.9999; v += 0.05) axis.push_back(v);
    return axis;
}

namespace {

struct CellSamples {
    std::vector<double> fe_signal, fe_random;
};

CellSamples run_cell(double a, double f, const SignalMapConfig& cfg, std::uint64_t cell_salt) {
    CellSamples out;
    out.fe_signal.resize(static_cast<std::size_t>(cfg.ensemble));
    out.fe_random.resize(static_cast<std::size_t>(cfg.ensemble));
    RandomModelParams params;
    params.n_segments = cfg.n_segments;
    params.segment_length = cfg.segment_length;
    params.lag_min = cfg.lag_min;
    params.lag_max = cfg.lag_max;
    params.a_min = params.a_max = a;
    params.f = f;

    parallel_for(static_cast<std::size_t>(cfg.ensemble), cfg.threads, [&](std::size_t k) {
        const std::uint64_t sk = derive_seed(cfg.seed, cell_salt * 1000003ULL + k);
        const PiecewiseLagModel model = gen_random_model(params, derive_seed(sk, 1));
        const SyntheticPair pair = gen_pair(model, cfg.b, derive_seed(sk, 2));
        const TimeSeries xs = standardize(pair.x);
        const TimeSeries ys = standardize(pair.y);

        const DistanceMatrix ems = build_distance(xs, ys, DistanceKind::Minus);
        out.fe_signal[k] =
            select_best(ems, cfg.temperature, cfg.boundary, PathMethod::Tops, 1).best.free_energy;

        const TimeSeries xr = reshuffle(xs, derive_seed(sk, 3));
        const TimeSeries yr = reshuffle(ys, derive_seed(sk, 4));
        const DistanceMatrix ers = build_distance(xr, yr, DistanceKind::Minus);
        out.fe_random[k] =
            select_best(ers, cfg.temperature, cfg.boundary, PathMethod::Tops, 1).best.free_energy;
    });
    return out;
}

}  // namespace

SignalMap signal_map(const SignalMapConfig& cfg) {
    if (cfg.a_values.empty() || cfg.f_values.empty()) throw Error("empty signal-map grid");
    if (cfg.ensemble < 1) throw Error("signal-map ensemble must be >= 1");

    SignalMap map;
    map.a_values = cfg.a_values;
    map.f_values = cfg.f_values;
    map.temperature = cfg.temperature;
    map.ensemble = cfg.ensemble;
    map.series_length = cfg.n_segments * cfg.segment_length;
    map.seed = cfg.seed;
    map.rho.resize(cfg.a_values.size() * cfg.f_values.size());

    for (std::size_t ai = 0; ai < cfg.a_values.size(); ++ai) {
        for (std::size_t fi = 0; fi < cfg.f_values.size(); ++fi) {
            const std::size_t cell = ai * cfg.f_values.size() + fi;
            CellSamples s = run_cell(cfg.a_values[ai], cfg.f_values[fi], cfg, cell);
            map.rho[cell] = rho_metric(std::move(s.fe_signal), std::move(s.fe_random)).rho;
        }
    }
    return map;
}

RhoResult rho_from_params(double a, double f, const SignalMapConfig& cfg) {
    CellSamples s = run_cell(a, f, cfg, 0xabcdULL);
    return rho_metric(std::move(s.fe_signal), std::move(s.fe_random));
}

std::vector<WindowScanEntry> moving_window_scan(const TimeSeries& x, const TimeSeries& y,
                                                const ThermalPath& path, int window_len, int step,
                                                const SignalMap* map, double alpha) {
    const int n = y.size();
    if (window_len < 2 || window_len > n) throw OutOfRange("window length outside series span");
    if (step < 1) throw Error("window step must be >= 1");

    const LeadLagSeries lags = path_to_lags(path, n);
    LeadLagSeries zero;
    zero.lag.assign(static_cast<std::size_t>(n), 0);
    zero.usable.assign(static_cast<std::size_t>(n), true);

    std::vector<WindowScanEntry> rows;
    for (int w0 = 0; w0 + window_len <= n; w0 += step) {
        WindowScanEntry row;
        const Window w{w0, window_len};
        try {
            row.sync = regression_ttest(x, y, lags, w, alpha);
            row.sync_ok = true;
        } catch (const Error&) {
        }
        try {
            row.raw = regression_ttest(x, y, zero, w, alpha);
            row.raw_ok = true;
        } catch (const Error&) {
        }
        if (map) {
            for (auto* r : {&row.sync, &row.raw}) {
                bool clamped = false;
                r->rho_lookup = map->lookup(std::fabs(r->a_hat), r->f_hat, &clamped);
                r->rho_clamped = clamped;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<TemperatureProfileRow> temperature_profile(const std::vector<SignalMap>& maps) {
    std::vector<TemperatureProfileRow> rows;
    for (const auto& m : maps) {
        if (!maps.empty() &&
            (m.a_values != maps.front().a_values || m.f_values != maps.front().f_values))
            throw GridMismatch("signal maps use different grids");
        TemperatureProfileRow row;
        row.temperature = m.temperature;
        row.mean_rho = mean(m.rho);
        row.stdev_rho = m.rho.size() > 1 ? sample_stdev(m.rho) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

AnalyzeResult analyze_pair(const TimeSeries& x_std, const TimeSeries& y_std,
                           const AnalysisConfig& cfg) {
    const DistanceMatrix e = build_distance(x_std, y_std, cfg.distance);
    AnalyzeResult out;
    out.selection = select_best(e, cfg.temperature, cfg.boundary, cfg.method, cfg.threads);
    out.lags = path_to_lags(out.selection.best, x_std.size());
    return out;
}

}  // namespace tops
