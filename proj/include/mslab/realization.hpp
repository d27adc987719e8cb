#ifndef MSLAB_REALIZATION_HPP
#define MSLAB_REALIZATION_HPP

#include <optional>
#include <vector>

#include "correspondence.hpp"
#include "metric_space.hpp"

namespace mslab {

/// An ambient space holding isometric copies of X (at x_indices) and Y (at
/// y_indices) whose Hausdorff distance is at most radius.
struct Realization {
    FiniteMetricSpace ambient;
    std::vector<int> x_indices;
    std::vector<int> y_indices;
    Rat radius;
};

/// Glues X and Y along a correspondence R. The ambient space is the disjoint
/// union (X first, then Y) with
///   |x y| = min over (x', y') in R of d_X(x, x') + r + d_Y(y', y),  r = dis(R) / 2.
/// When r = 0 related points are at distance 0 and the result is a pseudometric.
inline Realization glue_realization(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const Correspondence& r) {
    Rat radius = half(distortion(r, x, y));
    int n = x.size();
    int m = y.size();
    int total = n + m;
    std::vector<Rat> flat(static_cast<std::size_t>(total) * total);
    auto cell = [&flat, total](int i, int j) -> Rat& { return flat[static_cast<std::size_t>(i) * total + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cell(i, j) = x.d(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            cell(n + i, n + j) = y.d(i, j);
    for (int xi = 0; xi < n; ++xi)
        for (int yi = 0; yi < m; ++yi) {
            std::optional<Rat> best;
            for (auto [xp, yp] : r.pairs()) {
                Rat via = x.d(xi, xp) + radius + y.d(yp, yi);
                if (!best || via < *best)
                    best = via;
            }
            cell(xi, n + yi) = *best;
            cell(n + yi, xi) = *best;
        }
    Realization out{validate_flat(total, std::move(flat), {.allow_pseudometric = true}), {}, {}, radius};
    for (int i = 0; i < n; ++i)
        out.x_indices.push_back(i);
    for (int i = 0; i < m; ++i)
        out.y_indices.push_back(n + i);
    return out;
}

} // namespace mslab

#endif // MSLAB_REALIZATION_HPP
