#pragma once

// The N×N distance (energy) landscape between two series and the rotated
// lattice frame (t, x) = (t1 + t2, t2 − t1) used by the path recursion.

#include <utility>
#include <vector>

#include "tops/series.hpp"

namespace tops {

enum class DistanceKind { Minus, Plus, MinOfBoth };

const char* to_string(DistanceKind kind);
DistanceKind distance_kind_from_string(const std::string& name);

/// Node in the rotated frame. Valid nodes satisfy t + x even, with
/// t1 = (t−x)/2 and t2 = (t+x)/2 both inside [0, n−1].
struct RotatedCoord {
    int t = 0;
    int x = 0;

    friend bool operator==(const RotatedCoord& a, const RotatedCoord& b) {
        return a.t == b.t && a.x == b.x;
    }
};

RotatedCoord to_rotated(int t1, int t2, int n);
std::pair<int, int> from_rotated(const RotatedCoord& c, int n);

/// Smallest/largest x on a given level t of the n-lattice diamond.
inline int level_x_min(int t, int n) { return t <= n - 1 ? -t : t - 2 * (n - 1); }
inline int level_x_max(int t, int n) { return t <= n - 1 ? t : 2 * (n - 1) - t; }

class DistanceMatrix {
public:
    DistanceMatrix(int n, DistanceKind kind, std::vector<double> energies);

    int n() const { return n_; }
    DistanceKind kind() const { return kind_; }

    double at(int t1, int t2) const { return e_[static_cast<std::size_t>(t1) * n_ + t2]; }
    double at_rotated(int t, int x) const { return at((t - x) / 2, (t + x) / 2); }
    const std::vector<double>& data() const { return e_; }

private:
    int n_;
    DistanceKind kind_;
    std::vector<double> e_;  // row-major, (t1, t2)
};

/// Entry (t1,t2) is ε−=(X−Y)², ε+=(X+Y)² or their pointwise min.
DistanceMatrix build_distance(const TimeSeries& x, const TimeSeries& y, DistanceKind kind);

}  // namespace tops
