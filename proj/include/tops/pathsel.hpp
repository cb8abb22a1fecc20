#pragma once

// Boundary-node enumeration and selection of the minimum-free-energy path
// over all (start, end) pairs. Fields are computed once per boundary node,
// not per pair.

#include <vector>

#include "tops/thermal.hpp"

namespace tops {

enum class BoundaryScheme {
    Axes,  // starts on the t1=0 / t2=0 axes, ends mirrored at the far corner
    Grid,  // starts (i1,i2), ends (n−1−i1, n−1−i2), i1,i2 in [0, m]
};

struct BoundarySpec {
    int max_offset = 30;
    BoundaryScheme scheme = BoundaryScheme::Axes;
    int stride = 1;  // offset step; 1 enumerates every offset
};

struct BoundaryPairs {
    std::vector<RotatedCoord> starts;
    std::vector<RotatedCoord> ends;
};

/// Axes scheme: (0,0) plus (0,i) and (i,0) for i = stride, 2·stride, … ≤ m,
/// ends mirrored at the far corner; 2·(m/stride)+1 nodes per side.
BoundaryPairs enumerate_boundaries(int n, const BoundarySpec& spec);

struct PathSelection {
    ThermalPath best;
    long scanned = 0;  // number of (start, end) pairs evaluated
    std::vector<RotatedCoord> starts;
    std::vector<RotatedCoord> ends;
    std::vector<double> energies;  // row-major [start][end]; +inf = unreachable

    double energy_at(std::size_t si, std::size_t ei) const {
        return energies[si * ends.size() + ei];
    }
};

/// Evaluate every boundary pair and return the arg-min by free energy.
/// Ties break toward the least-offset pair: lexicographic smallest
/// (|start.x|, |end.x|, start.x, end.x).
PathSelection select_best(const DistanceMatrix& energy, double temperature,
                          const BoundarySpec& spec, PathMethod method, int threads = 1);

/// One shared field sweep evaluating both weightings; returns {TOP, TOPS}.
std::pair<PathSelection, PathSelection> select_best_both(const DistanceMatrix& energy,
                                                         double temperature,
                                                         const BoundarySpec& spec,
                                                         int threads = 1);

}  // namespace tops
