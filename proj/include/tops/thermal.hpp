#pragma once

// Boltzmann partition fields over directed lattice paths and the thermal
// average paths (TOP: forward occupancies; TOPS: forward/backward symmetric
// occupancies), together with the ensemble free energy e_T.
//
// Weights are kept in the log domain: each level stores linear weights
// rescaled so the level maximum is 1, plus a per-level log offset, so
// log G(t,x) is available exactly without per-node exp/log in the recursion.

#include <memory>
#include <vector>

#include "tops/lattice.hpp"

namespace tops {

enum class Direction { Forward, Backward };
enum class PathMethod { Top, Tops };

const char* to_string(PathMethod m);
PathMethod path_method_from_string(const std::string& name);

/// Per-level flat layout of the rotated diamond lattice.
struct LevelIndex {
    int n = 0;
    std::vector<std::size_t> base;  // offset of level t in node-indexed arrays

    explicit LevelIndex(int n_side);
    int levels() const { return 2 * n - 1; }
    int x_min(int t) const { return level_x_min(t, n); }
    int x_max(int t) const { return level_x_max(t, n); }
    int count(int t) const { return (x_max(t) - x_min(t)) / 2 + 1; }
    std::size_t node(int t, int x) const {
        return base[static_cast<std::size_t>(t)] + static_cast<std::size_t>((x - x_min(t)) / 2);
    }
    std::size_t total() const { return static_cast<std::size_t>(n) * n; }
};

/// exp(−(ε−min_level ε)/T) and ε in diamond layout, shared by all fields
/// computed against one (energy, T).
struct BoltzmannCache {
    BoltzmannCache(const DistanceMatrix& energy, double temperature);

    const DistanceMatrix* energy;
    double temperature;
    LevelIndex idx;
    std::vector<double> boltzmann;      // level-min-shifted factors
    std::vector<double> eps;            // raw energies, diamond layout
    std::vector<double> level_eps_min;  // per level
};

class PartitionField {
public:
    PartitionField(std::shared_ptr<const BoltzmannCache> cache, Direction dir,
                   RotatedCoord origin, bool with_prefix_sums);

    Direction direction() const { return dir_; }
    RotatedCoord origin() const { return origin_; }
    int n() const { return cache_->idx.n; }
    double temperature() const { return cache_->temperature; }
    const BoltzmannCache& cache() const { return *cache_; }

    /// Levels carrying weight: [t_lo, t_hi] inclusive.
    int t_lo() const { return t_lo_; }
    int t_hi() const { return t_hi_; }
    /// Cone bounds (x range of reachable nodes) on level t.
    int cone_lo(int t) const { return cone_lo_[static_cast<std::size_t>(t)]; }
    int cone_hi(int t) const { return cone_hi_[static_cast<std::size_t>(t)]; }

    bool contains(int t, int x) const;
    /// log G(t,x); −inf when the node is unreachable.
    double logw(int t, int x) const;
    /// log Σ_x G(t,x) over the level's reachable nodes.
    double lognorm(int t) const;

    /// Rescaled linear weight and the level log offset:
    /// log G(t,x) = log weight(t,x) + level_scale(t).
    double weight(int t, int x) const;
    double level_scale(int t) const { return scale_[static_cast<std::size_t>(t)]; }
    double level_mass(int t) const { return level_sum_[static_cast<std::size_t>(t)]; }

    /// Interval aggregates over reachable x in [x_lo, x_hi] on level t:
    /// mass Σw, moment Σx·w, energy Σε·w. Uses prefix sums when present and
    /// safe, otherwise sums directly. Returns mass 0 when no weight survives.
    struct IntervalSums {
        double mass = 0.0;
        double moment = 0.0;
        double energy = 0.0;
    };
    IntervalSums interval(int t, int x_lo, int x_hi, bool with_moment) const;

private:
    void build();

    std::shared_ptr<const BoltzmannCache> cache_;
    Direction dir_;
    RotatedCoord origin_;
    bool with_prefix_;
    int t_lo_ = 0, t_hi_ = 0;
    std::vector<int> cone_lo_, cone_hi_;
    std::vector<double> v_;          // rescaled weights, diamond layout
    std::vector<double> scale_;      // per-level log offset
    std::vector<double> level_sum_;  // Σ v per level
    std::vector<double> ps_, pse_;   // per-level prefix sums of v and ε·v
    std::size_t pbase(int t) const { return cache_->idx.base[static_cast<std::size_t>(t)] + static_cast<std::size_t>(t); }
};

struct ThermalPath {
    double temperature = 0.0;
    RotatedCoord start, end;
    std::vector<double> xs;  // ⟨x(t)⟩ for t = start.t .. end.t
    double free_energy = 0.0;
    PathMethod method = PathMethod::Tops;
    DistanceKind distance_kind = DistanceKind::Minus;
    int n = 0;
};

PartitionField forward_field(const DistanceMatrix& energy, double temperature, RotatedCoord origin);
PartitionField backward_field(const DistanceMatrix& energy, double temperature, RotatedCoord origin);

/// Eq-8-style thermal average over forward occupancies, restricted at each
/// level to nodes that can still reach `end`, renormalized.
ThermalPath top_path(const PartitionField& fwd, RotatedCoord end);

/// Time-reversal symmetric average of forward and backward occupancies,
/// each restricted to the cone intersection and renormalized.
ThermalPath tops_path(const PartitionField& fwd, const PartitionField& bwd, RotatedCoord start,
                      RotatedCoord end);

/// Ensemble-average energy per lattice level between start and end
/// (bwd == nullptr selects the forward-only weighting).
double free_energy(const PartitionField& fwd, const PartitionField* bwd, RotatedCoord start,
                   RotatedCoord end);

}  // namespace tops
