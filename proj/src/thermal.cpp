#include "tops/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tops/errors.hpp"

namespace tops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative mass below which a prefix-sum difference is re-done by direct
// summation (the difference of two near-equal prefixes loses precision).
constexpr double kPrefixFloor = 1e-6;

std::pair<int, int> square_of(RotatedCoord c, int n) { return from_rotated(c, n); }

}  // namespace

const char* to_string(PathMethod m) { return m == PathMethod::Top ? "top" : "tops"; }

PathMethod path_method_from_string(const std::string& name) {
    if (name == "top") return PathMethod::Top;
    if (name == "tops") return PathMethod::Tops;
    throw Error("unknown path method: " + name);
}

LevelIndex::LevelIndex(int n_side) : n(n_side) {
    base.resize(static_cast<std::size_t>(levels()) + 1);
    std::size_t off = 0;
    for (int t = 0; t < levels(); ++t) {
        base[static_cast<std::size_t>(t)] = off;
        off += static_cast<std::size_t>(count(t));
    }
    base[static_cast<std::size_t>(levels())] = off;
}

BoltzmannCache::BoltzmannCache(const DistanceMatrix& e, double temperature_)
    : energy(&e), temperature(temperature_), idx(e.n()) {
    if (!(temperature > 0.0)) throw InvalidTemperature("temperature must be > 0");
    const int n = e.n();
    eps.resize(idx.total());
    boltzmann.resize(idx.total());
    level_eps_min.resize(static_cast<std::size_t>(idx.levels()));
    for (int t = 0; t < idx.levels(); ++t) {
        double lo = kInf;
        for (int x = idx.x_min(t); x <= idx.x_max(t); x += 2) {
            const double v = e.at((t - x) / 2, (t + x) / 2);
            eps[idx.node(t, x)] = v;
            lo = std::min(lo, v);
        }
        level_eps_min[static_cast<std::size_t>(t)] = lo;
        for (int x = idx.x_min(t); x <= idx.x_max(t); x += 2) {
            const std::size_t k = idx.node(t, x);
            boltzmann[k] = std::exp(-(eps[k] - lo) / temperature);
        }
    }
}

PartitionField::PartitionField(std::shared_ptr<const BoltzmannCache> cache, Direction dir,
                               RotatedCoord origin, bool with_prefix_sums)
    : cache_(std::move(cache)), dir_(dir), origin_(origin), with_prefix_(with_prefix_sums) {
    square_of(origin_, n());  // validates range and parity
    build();
}

void PartitionField::build() {
    const LevelIndex& idx = cache_->idx;
    const int levels = idx.levels();
    const int step = dir_ == Direction::Forward ? 1 : -1;

    t_lo_ = dir_ == Direction::Forward ? origin_.t : 0;
    t_hi_ = dir_ == Direction::Forward ? levels - 1 : origin_.t;

    cone_lo_.assign(static_cast<std::size_t>(levels), 1);
    cone_hi_.assign(static_cast<std::size_t>(levels), 0);
    v_.assign(idx.total(), 0.0);
    scale_.assign(static_cast<std::size_t>(levels), -kInf);
    level_sum_.assign(static_cast<std::size_t>(levels), 0.0);
    if (with_prefix_) {
        ps_.assign(idx.total() + static_cast<std::size_t>(levels), 0.0);
        pse_.assign(idx.total() + static_cast<std::size_t>(levels), 0.0);
    }

    const int t0 = origin_.t;
    for (int t = t0; t >= t_lo_ && t <= t_hi_; t += step) {
        const int spread = step * (t - t0);  // levels away from the origin
        const int lo = std::max(idx.x_min(t), origin_.x - spread);
        const int hi = std::min(idx.x_max(t), origin_.x + spread);
        cone_lo_[static_cast<std::size_t>(t)] = lo;
        cone_hi_[static_cast<std::size_t>(t)] = hi;

        const double* b = cache_->boltzmann.data();
        double peak = 0.0;
        if (t == t0) {
            v_[idx.node(t, origin_.x)] = b[idx.node(t, origin_.x)];
            peak = v_[idx.node(t, origin_.x)];
        } else {
            const int tp = t - step;   // one level toward the origin
            const int tpp = t - 2 * step;
            const bool has_pp = step * (tpp - t0) >= 0;
            const double cross = has_pp && std::isfinite(scale_[static_cast<std::size_t>(tpp)])
                                     ? std::exp(scale_[static_cast<std::size_t>(tpp)] -
                                                scale_[static_cast<std::size_t>(tp)])
                                     : 0.0;
            const int plo = cone_lo_[static_cast<std::size_t>(tp)];
            const int phi = cone_hi_[static_cast<std::size_t>(tp)];
            const int pplo = has_pp ? cone_lo_[static_cast<std::size_t>(tpp)] : 1;
            const int pphi = has_pp ? cone_hi_[static_cast<std::size_t>(tpp)] : 0;
            for (int x = lo; x <= hi; x += 2) {
                double acc = 0.0;
                if (x - 1 >= plo && x - 1 <= phi) acc += v_[idx.node(tp, x - 1)];
                if (x + 1 >= plo && x + 1 <= phi) acc += v_[idx.node(tp, x + 1)];
                if (has_pp && x >= pplo && x <= pphi) acc += v_[idx.node(tpp, x)] * cross;
                const double w = acc * b[idx.node(t, x)];
                v_[idx.node(t, x)] = w;
                peak = std::max(peak, w);
            }
        }
        if (!(peak > 0.0))
            throw Error("partition weights vanished (energy scale too large for this temperature)");

        const double prev = t == t0 ? 0.0 : scale_[static_cast<std::size_t>(t - step)];
        scale_[static_cast<std::size_t>(t)] =
            prev - cache_->level_eps_min[static_cast<std::size_t>(t)] / cache_->temperature +
            std::log(peak);

        const double inv = 1.0 / peak;
        long double total = 0.0L;
        for (int x = lo; x <= hi; x += 2) {
            const std::size_t k = idx.node(t, x);
            v_[k] *= inv;
            total += v_[k];
        }
        level_sum_[static_cast<std::size_t>(t)] = static_cast<double>(total);

        if (with_prefix_) {
            const std::size_t pb = pbase(t) + static_cast<std::size_t>((lo - idx.x_min(t)) / 2);
            long double accm = 0.0L, acce = 0.0L;
            ps_[pb] = 0.0;
            pse_[pb] = 0.0;
            std::size_t j = 0;
            for (int x = lo; x <= hi; x += 2, ++j) {
                const std::size_t k = idx.node(t, x);
                accm += v_[k];
                acce += v_[k] * cache_->eps[k];
                ps_[pb + j + 1] = static_cast<double>(accm);
                pse_[pb + j + 1] = static_cast<double>(acce);
            }
        }
    }
}

bool PartitionField::contains(int t, int x) const {
    if (t < t_lo_ || t > t_hi_) return false;
    if ((t + x) % 2 != 0) return false;
    if (x < cone_lo_[static_cast<std::size_t>(t)] || x > cone_hi_[static_cast<std::size_t>(t)])
        return false;
    return v_[cache_->idx.node(t, x)] > 0.0;
}

double PartitionField::weight(int t, int x) const {
    if (t < t_lo_ || t > t_hi_ || (t + x) % 2 != 0) return 0.0;
    if (x < cone_lo_[static_cast<std::size_t>(t)] || x > cone_hi_[static_cast<std::size_t>(t)])
        return 0.0;
    return v_[cache_->idx.node(t, x)];
}

double PartitionField::logw(int t, int x) const {
    const double w = weight(t, x);
    if (w <= 0.0) return -kInf;
    return std::log(w) + scale_[static_cast<std::size_t>(t)];
}

double PartitionField::lognorm(int t) const {
    if (t < t_lo_ || t > t_hi_) return -kInf;
    return std::log(level_sum_[static_cast<std::size_t>(t)]) + scale_[static_cast<std::size_t>(t)];
}

PartitionField::IntervalSums PartitionField::interval(int t, int x_lo, int x_hi,
                                                      bool with_moment) const {
    IntervalSums out;
    if (t < t_lo_ || t > t_hi_) return out;
    const int lo = std::max(x_lo, cone_lo_[static_cast<std::size_t>(t)]);
    const int hi = std::min(x_hi, cone_hi_[static_cast<std::size_t>(t)]);
    if (lo > hi) return out;

    const LevelIndex& idx = cache_->idx;
    if (with_prefix_ && !with_moment) {
        const std::size_t pb = pbase(t);
        const std::size_t j0 = static_cast<std::size_t>((lo - idx.x_min(t)) / 2);
        const std::size_t j1 = static_cast<std::size_t>((hi - idx.x_min(t)) / 2);
        const double mass = ps_[pb + j1 + 1] - ps_[pb + j0];
        if (mass > level_sum_[static_cast<std::size_t>(t)] * kPrefixFloor) {
            out.mass = mass;
            out.energy = pse_[pb + j1 + 1] - pse_[pb + j0];
            return out;
        }
    }
    long double m = 0.0L, mx = 0.0L, me = 0.0L;
    for (int x = lo; x <= hi; x += 2) {
        const std::size_t k = idx.node(t, x);
        m += v_[k];
        me += v_[k] * cache_->eps[k];
        if (with_moment) mx += v_[k] * x;
    }
    out.mass = static_cast<double>(m);
    out.moment = static_cast<double>(mx);
    out.energy = static_cast<double>(me);
    return out;
}

PartitionField forward_field(const DistanceMatrix& energy, double temperature,
                             RotatedCoord origin) {
    auto cache = std::make_shared<BoltzmannCache>(energy, temperature);
    return PartitionField(std::move(cache), Direction::Forward, origin, false);
}

PartitionField backward_field(const DistanceMatrix& energy, double temperature,
                              RotatedCoord origin) {
    auto cache = std::make_shared<BoltzmannCache>(energy, temperature);
    return PartitionField(std::move(cache), Direction::Backward, origin, false);
}

namespace {

void check_reachable(RotatedCoord start, RotatedCoord end, int n) {
    const auto [s1, s2] = from_rotated(start, n);
    const auto [e1, e2] = from_rotated(end, n);
    if (e1 < s1 || e2 < s2)
        throw UnreachableEnd("end node is not reachable from the start node");
}

struct LevelStats {
    double x = 0.0;
    double energy = 0.0;
};

// Occupancy-weighted x and ε on one level, restricted to [lo, hi].
LevelStats restricted_stats(const PartitionField& f, int t, int lo, int hi) {
    const auto s = f.interval(t, lo, hi, true);
    if (!(s.mass > 0.0))
        throw Error("no path weight left on level " + std::to_string(t) +
                    " (numeric underflow for this boundary pair)");
    return {s.moment / s.mass, s.energy / s.mass};
}

ThermalPath build_path(const PartitionField& fwd, const PartitionField* bwd, RotatedCoord start,
                       RotatedCoord end) {
    const int n = fwd.n();
    check_reachable(start, end, n);

    ThermalPath path;
    path.temperature = fwd.temperature();
    path.start = start;
    path.end = end;
    path.method = bwd ? PathMethod::Tops : PathMethod::Top;
    path.distance_kind = fwd.cache().energy->kind();
    path.n = n;
    path.xs.resize(static_cast<std::size_t>(end.t - start.t) + 1);

    long double e_acc = 0.0L;
    for (int t = start.t; t <= end.t; ++t) {
        const int blo = std::max(level_x_min(t, n), end.x - (end.t - t));
        const int bhi = std::min(level_x_max(t, n), end.x + (end.t - t));
        const auto f = restricted_stats(fwd, t, blo, bhi);
        if (bwd) {
            const auto b = restricted_stats(*bwd, t, std::max(level_x_min(t, n), start.x - (t - start.t)),
                                            std::min(level_x_max(t, n), start.x + (t - start.t)));
            path.xs[static_cast<std::size_t>(t - start.t)] = 0.5 * (f.x + b.x);
            e_acc += 0.5L * (f.energy + b.energy);
        } else {
            path.xs[static_cast<std::size_t>(t - start.t)] = f.x;
            e_acc += f.energy;
        }
    }
    path.free_energy = static_cast<double>(e_acc / static_cast<long double>(end.t - start.t + 1));
    return path;
}

}  // namespace

ThermalPath top_path(const PartitionField& fwd, RotatedCoord end) {
    if (fwd.direction() != Direction::Forward) throw Error("top_path needs a forward field");
    return build_path(fwd, nullptr, fwd.origin(), end);
}

ThermalPath tops_path(const PartitionField& fwd, const PartitionField& bwd, RotatedCoord start,
                      RotatedCoord end) {
    if (fwd.direction() != Direction::Forward || bwd.direction() != Direction::Backward)
        throw Error("tops_path needs a forward and a backward field");
    if (!(fwd.origin() == start)) throw Error("forward field origin must equal start");
    if (!(bwd.origin() == end)) throw Error("backward field origin must equal end");
    return build_path(fwd, &bwd, start, end);
}

double free_energy(const PartitionField& fwd, const PartitionField* bwd, RotatedCoord start,
                   RotatedCoord end) {
    return build_path(fwd, bwd, start, end).free_energy;
}

}  // namespace tops
