#pragma once

// Significance machinery: reshuffle quantile bands, the free-energy overlap
// metric ρ, the self-consistent synchronized regression, moving-window scans
// and (a, f) signal-strength maps.

#include <cstdint>
#include <optional>
#include <vector>

#include "tops/pathsel.hpp"
#include "tops/synth.hpp"

namespace tops {

struct AnalysisConfig {
    PathMethod method = PathMethod::Tops;
    DistanceKind distance = DistanceKind::Minus;
    double temperature = 2.0;
    BoundarySpec boundary;
    int threads = 1;
};

struct BootstrapBand {
    int n_reshuffles = 0;
    double q_low_level = 0.05, q_high_level = 0.95;
    std::vector<double> q_low, q_high;  // per lattice level, NaN where uncovered
    std::vector<int> coverage;          // replicates whose path spans the level
    std::vector<std::vector<double>> paths;  // replicate xs (start.t-aligned), when kept
    std::vector<int> path_t0;
};

/// Reshuffle both series independently n times, run the full selection
/// pipeline per replicate, return per-level empirical quantile curves.
BootstrapBand bootstrap_band(const TimeSeries& x, const TimeSeries& y, const AnalysisConfig& cfg,
                             int n, std::uint64_t seed, bool keep_paths = false,
                             double q_low = 0.05, double q_high = 0.95);

/// Type-7 empirical quantile of a sample (linear interpolation).
double quantile(std::vector<double> sample, double q);

struct HistogramSpec {
    double lo = 0.0;
    double width = 1.0;
    int bins = 1;
};

struct RhoResult {
    double rho = 1.0;
    HistogramSpec bins;
    std::vector<double> fe_signal, fe_random;
};

/// Overlapping coefficient of the two samples' histograms on a shared bin
/// grid (Freedman–Diaconis width on the pooled sample unless given).
RhoResult rho_metric(std::vector<double> fe_signal, std::vector<double> fe_random,
                     const std::optional<HistogramSpec>& bins = std::nullopt);

/// Per-index lead/lag of the second series relative to the first, rounded
/// half-away-from-zero. Negative values mean the second series lags the
/// first. Indices never visited by the path are marked unusable.
struct LeadLagSeries {
    std::vector<int> lag;
    std::vector<bool> usable;
};

LeadLagSeries path_to_lags(const ThermalPath& path, int n);

struct Window {
    int start = 0;
    int length = 0;
};

struct SelfConsistencyResult {
    double a_hat = 0.0;
    double c_hat = 0.0;
    double t_stat = 0.0;
    bool significant = false;
    double f_hat = 0.0;
    Window window;
    int n_points = 0;
    double rho_lookup = std::numeric_limits<double>::quiet_NaN();
    bool rho_clamped = false;
};

/// OLS of Y(t) on the lag-synchronized X over the window, with a two-sided
/// t-test on the slope and the residual-amplitude estimate f̂.
SelfConsistencyResult regression_ttest(const TimeSeries& x, const TimeSeries& y,
                                       const LeadLagSeries& lags, Window window,
                                       double alpha = 0.05);

struct SignalMap {
    std::vector<double> a_values, f_values;
    std::vector<double> rho;  // row-major [a][f]
    double temperature = 2.0;
    int ensemble = 0;
    int series_length = 0;
    std::uint64_t seed = 0;

    double at(std::size_t ai, std::size_t fi) const { return rho[ai * f_values.size() + fi]; }
    /// ρ of the cell nearest to (a, f); clamps outside the grid.
    double lookup(double a, double f, bool* clamped = nullptr) const;
};

struct SignalMapConfig {
    std::vector<double> a_values, f_values;
    double temperature = 2.0;
    int ensemble = 200;
    std::uint64_t seed = 0;
    double b = 0.7;
    int n_segments = 5;
    int segment_length = 100;
    int lag_min = -30, lag_max = 30;
    BoundarySpec boundary;
    int threads = 1;
};

/// Default grid (a and f from 0.01 to 0.96 in steps of 0.05).
std::vector<double> default_map_axis();

/// Per cell: `ensemble` random piecewise-lag models at the cell's fixed
/// (a, f), TOPS free energies vs their reshuffled counterparts, ρ overlap.
SignalMap signal_map(const SignalMapConfig& cfg);

/// Regeneration route for a single (a, f): the ρ of one synthetic cell.
RhoResult rho_from_params(double a, double f, const SignalMapConfig& cfg);

struct WindowScanEntry {
    bool sync_ok = false, raw_ok = false;
    SelfConsistencyResult sync;  // lags taken from the path
    SelfConsistencyResult raw;   // lags ≡ 0
};

/// Moving windows of `window_len` advancing by `step`; each window is tested
/// synchronized and non-synchronized, with ρ looked up on `map` if present.
std::vector<WindowScanEntry> moving_window_scan(const TimeSeries& x, const TimeSeries& y,
                                                const ThermalPath& path, int window_len,
                                                int step = 1, const SignalMap* map = nullptr,
                                                double alpha = 0.05);

struct TemperatureProfileRow {
    double temperature = 0.0;
    double mean_rho = 0.0;
    double stdev_rho = 0.0;
};

/// Mean and sample stdev of ρ over all cells, one row per map.
std::vector<TemperatureProfileRow> temperature_profile(const std::vector<SignalMap>& maps);

/// Condition a pair for analysis: trim is the caller's job; this
/// standardizes both series (zero mean, unit sample variance).
struct AnalyzeResult {
    PathSelection selection;
    LeadLagSeries lags;
};

AnalyzeResult analyze_pair(const TimeSeries& x_std, const TimeSeries& y_std,
                           const AnalysisConfig& cfg);

}  // namespace tops
