#include "tops/lattice.hpp"

#include <cmath>

#include "tops/errors.hpp"

namespace tops {

const char* to_string(DistanceKind kind) {
    switch (kind) {
        case DistanceKind::Minus: return "minus";
        case DistanceKind::Plus: return "plus";
        case DistanceKind::MinOfBoth: return "min";
    }
    return "?";
}

DistanceKind distance_kind_from_string(const std::string& name) {
    if (name == "minus") return DistanceKind::Minus;
    if (name == "plus") return DistanceKind::Plus;
    if (name == "min") return DistanceKind::MinOfBoth;
    throw Error("unknown distance kind: " + name);
}

RotatedCoord to_rotated(int t1, int t2, int n) {
    if (t1 < 0 || t1 >= n || t2 < 0 || t2 >= n)
        throw OutOfRange("square node (" + std::to_string(t1) + "," + std::to_string(t2) +
                         ") outside lattice of side " + std::to_string(n));
    return RotatedCoord{t1 + t2, t2 - t1};
}

std::pair<int, int> from_rotated(const RotatedCoord& c, int n) {
    if ((c.t + c.x) % 2 != 0)
        throw ParityViolation("rotated node (" + std::to_string(c.t) + "," + std::to_string(c.x) +
                              ") has odd t+x");
    const int t1 = (c.t - c.x) / 2;
    const int t2 = (c.t + c.x) / 2;
    if (t1 < 0 || t1 >= n || t2 < 0 || t2 >= n)
        throw OutOfRange("rotated node (" + std::to_string(c.t) + "," + std::to_string(c.x) +
                         ") outside lattice of side " + std::to_string(n));
    return {t1, t2};
}

DistanceMatrix::DistanceMatrix(int n, DistanceKind kind, std::vector<double> energies)
    : n_(n), kind_(kind), e_(std::move(energies)) {
    if (n_ < 2) throw TooShort("lattice side must be >= 2");
    if (e_.size() != static_cast<std::size_t>(n_) * n_)
        throw LengthMismatch("energy grid size does not match lattice side");
    for (double v : e_)
        if (!std::isfinite(v) || v < 0.0) throw Error("energies must be finite and nonnegative");
}

DistanceMatrix build_distance(const TimeSeries& x, const TimeSeries& y, DistanceKind kind) {
    const int n = x.size();
    if (n != y.size()) throw LengthMismatch("series lengths differ");
    if (n < 2) throw TooShort("need at least 2 samples per series");

    std::vector<double> e(static_cast<std::size_t>(n) * n);
    for (int t1 = 0; t1 < n; ++t1) {
        for (int t2 = 0; t2 < n; ++t2) {
            const double dm = x[t1] - y[t2];
            const double dp = x[t1] + y[t2];
            double v = 0.0;
            switch (kind) {
                case DistanceKind::Minus: v = dm * dm; break;
                case DistanceKind::Plus: v = dp * dp; break;
                case DistanceKind::MinOfBoth: v = std::min(dm * dm, dp * dp); break;
            }
            e[static_cast<std::size_t>(t1) * n + t2] = v;
        }
    }
    return DistanceMatrix(n, kind, std::move(e));
}

}  // namespace tops
