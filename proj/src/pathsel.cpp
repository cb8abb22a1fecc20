#include "tops/pathsel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "tops/errors.hpp"
#include "tops/parallel.hpp"

namespace tops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<RotatedCoord> axes_nodes(int n, int m, int stride, bool start_side) {
    std::vector<RotatedCoord> nodes;
    nodes.reserve(static_cast<std::size_t>(2 * (m / stride) + 1));
    const int far = 2 * n - 2;
    nodes.push_back(start_side ? RotatedCoord{0, 0} : RotatedCoord{far, 0});
    for (int o = stride; o <= m; o += stride) {
        if (start_side) {
            nodes.push_back(to_rotated(o, 0, n));  // x = −o
            nodes.push_back(to_rotated(0, o, n));  // x = +o
        } else {
            nodes.push_back(to_rotated(n - 1, n - 1 - o, n));  // x = −o
            nodes.push_back(to_rotated(n - 1 - o, n - 1, n));  // x = +o
        }
    }
    return nodes;
}

std::vector<RotatedCoord> grid_nodes(int n, int m, int stride, bool start_side) {
    std::vector<RotatedCoord> nodes;
    for (int i1 = 0; i1 <= m; i1 += stride)
        for (int i2 = 0; i2 <= m; i2 += stride)
            nodes.push_back(start_side ? to_rotated(i1, i2, n)
                                       : to_rotated(n - 1 - i1, n - 1 - i2, n));
    std::sort(nodes.begin(), nodes.end(), [](const RotatedCoord& a, const RotatedCoord& b) {
        return std::make_tuple(std::abs(a.x), a.x, a.t) < std::make_tuple(std::abs(b.x), b.x, b.t);
    });
    return nodes;
}

bool pair_reachable(const RotatedCoord& s, const RotatedCoord& e, int n) {
    const auto [s1, s2] = from_rotated(s, n);
    const auto [e1, e2] = from_rotated(e, n);
    return e1 >= s1 && e2 >= s2;
}

// Free energy of one (start, end) pair from interval aggregates.
double pair_energy(const PartitionField& fwd, const PartitionField* bwd, const RotatedCoord& s,
                   const RotatedCoord& e, int n) {
    long double acc = 0.0L;
    for (int t = s.t; t <= e.t; ++t) {
        const int xlo = level_x_min(t, n);
        const int xhi = level_x_max(t, n);
        const int blo = std::max(xlo, e.x - (e.t - t));
        const int bhi = std::min(xhi, e.x + (e.t - t));
        const auto f = fwd.interval(t, blo, bhi, false);
        if (!(f.mass > 0.0)) return kInf;
        if (bwd) {
            const auto b = bwd->interval(t, std::max(xlo, s.x - (t - s.t)),
                                         std::min(xhi, s.x + (t - s.t)), false);
            if (!(b.mass > 0.0)) return kInf;
            acc += 0.5L * (f.energy / f.mass + b.energy / b.mass);
        } else {
            acc += f.energy / f.mass;
        }
    }
    return static_cast<double>(acc / static_cast<long double>(e.t - s.t + 1));
}

std::size_t argmin_with_tiebreak(const std::vector<double>& energies,
                                 const std::vector<RotatedCoord>& starts,
                                 const std::vector<RotatedCoord>& ends) {
    std::size_t best = 0;
    bool found = false;
    auto rank = [&](std::size_t k) {
        const RotatedCoord& s = starts[k / ends.size()];
        const RotatedCoord& e = ends[k % ends.size()];
        return std::make_tuple(std::abs(s.x), std::abs(e.x), s.x, e.x);
    };
    for (std::size_t k = 0; k < energies.size(); ++k) {
        if (!std::isfinite(energies[k])) continue;
        if (!found || energies[k] < energies[best] ||
            (energies[k] == energies[best] && rank(k) < rank(best))) {
            best = k;
            found = true;
        }
    }
    if (!found) throw UnreachableEnd("no reachable (start, end) pair in the boundary set");
    return best;
}

struct Scan {
    std::shared_ptr<const BoltzmannCache> cache;
    BoundaryPairs bounds;
    std::vector<PartitionField> bwd_fields;  // only when TOPS weights are needed
    std::vector<double> top_energies, tops_energies;
    bool want_top = false, want_tops = false;
};

Scan run_scan(const DistanceMatrix& energy, double temperature, const BoundarySpec& spec,
              bool want_top, bool want_tops, int threads) {
    Scan scan;
    scan.want_top = want_top;
    scan.want_tops = want_tops;
    scan.cache = std::make_shared<BoltzmannCache>(energy, temperature);
    scan.bounds = enumerate_boundaries(energy.n(), spec);
    const std::size_t ns = scan.bounds.starts.size();
    const std::size_t ne = scan.bounds.ends.size();
    const int n = energy.n();

    if (want_tops) {
        scan.bwd_fields.reserve(ne);
        for (std::size_t ei = 0; ei < ne; ++ei)
            scan.bwd_fields.emplace_back(scan.cache, Direction::Backward, scan.bounds.ends[ei],
                                         true);
        scan.tops_energies.assign(ns * ne, kInf);
    }
    if (want_top) scan.top_energies.assign(ns * ne, kInf);

    parallel_for(ns, threads, [&](std::size_t si) {
        const PartitionField fwd(scan.cache, Direction::Forward, scan.bounds.starts[si], true);
        for (std::size_t ei = 0; ei < ne; ++ei) {
            const RotatedCoord s = scan.bounds.starts[si];
            const RotatedCoord e = scan.bounds.ends[ei];
            if (!pair_reachable(s, e, n)) continue;
            if (want_top)
                scan.top_energies[si * ne + ei] = pair_energy(fwd, nullptr, s, e, n);
            if (want_tops)
                scan.tops_energies[si * ne + ei] =
                    pair_energy(fwd, &scan.bwd_fields[ei], s, e, n);
        }
    });
    return scan;
}

PathSelection finalize(const Scan& scan, std::vector<double> energies, PathMethod method) {
    const std::size_t ne = scan.bounds.ends.size();
    const std::size_t k = argmin_with_tiebreak(energies, scan.bounds.starts, scan.bounds.ends);
    const RotatedCoord s = scan.bounds.starts[k / ne];
    const RotatedCoord e = scan.bounds.ends[k % ne];

    PathSelection out;
    const PartitionField fwd(scan.cache, Direction::Forward, s, true);
    if (method == PathMethod::Tops) {
        const PartitionField& bwd = scan.bwd_fields[k % ne];
        out.best = tops_path(fwd, bwd, s, e);
    } else {
        out.best = top_path(fwd, e);
    }
    out.scanned = static_cast<long>(scan.bounds.starts.size() * ne);
    out.starts = scan.bounds.starts;
    out.ends = scan.bounds.ends;
    out.energies = std::move(energies);
    return out;
}

}  // namespace

BoundaryPairs enumerate_boundaries(int n, const BoundarySpec& spec) {
    if (spec.max_offset < 0 || spec.max_offset > n - 1)
        throw OffsetTooLarge("max offset must lie in [0, n-1]");
    if (spec.stride < 1) throw Error("boundary stride must be >= 1");

    BoundaryPairs out;
    if (spec.scheme == BoundaryScheme::Axes) {
        out.starts = axes_nodes(n, spec.max_offset, spec.stride, true);
        out.ends = axes_nodes(n, spec.max_offset, spec.stride, false);
    } else {
        out.starts = grid_nodes(n, spec.max_offset, spec.stride, true);
        out.ends = grid_nodes(n, spec.max_offset, spec.stride, false);
    }
    return out;
}

PathSelection select_best(const DistanceMatrix& energy, double temperature,
                          const BoundarySpec& spec, PathMethod method, int threads) {
    const bool tops = method == PathMethod::Tops;
    Scan scan = run_scan(energy, temperature, spec, !tops, tops, threads);
    return finalize(scan, tops ? std::move(scan.tops_energies) : std::move(scan.top_energies),
                    method);
}

std::pair<PathSelection, PathSelection> select_best_both(const DistanceMatrix& energy,
                                                         double temperature,
                                                         const BoundarySpec& spec, int threads) {
    Scan scan = run_scan(energy, temperature, spec, true, true, threads);
    PathSelection top = finalize(scan, std::move(scan.top_energies), PathMethod::Top);
    PathSelection tops = finalize(scan, std::move(scan.tops_energies), PathMethod::Tops);
    return {std::move(top), std::move(tops)};
}

}  // namespace tops
