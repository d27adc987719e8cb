#ifndef MSLAB_HYPERSPACE_HPP
#define MSLAB_HYPERSPACE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "metric_space.hpp"
#include "rational.hpp"
#include "subset.hpp"

namespace mslab {

inline constexpr int kDefaultHyperspaceCap = 12;
inline constexpr std::uint64_t kDefaultSubsetPairBudget = std::uint64_t{1} << 24;

/// sup over a in A of |aB|.
inline Rat directed_hausdorff(const FiniteMetricSpace& z, const Subset& a, const Subset& b) {
    require_subset_of(z, a);
    require_subset_of(z, b);
    Rat worst(0);
    auto b_idx = b.indices();
    for (int i : a.indices()) {
        Rat nearest = z.d(i, b_idx.front());
        for (int j : b_idx)
            nearest = std::min(nearest, z.d(i, j));
        worst = std::max(worst, nearest);
    }
    return worst;
}

inline Rat hausdorff_distance(const FiniteMetricSpace& z, const Subset& a, const Subset& b) {
    return std::max(directed_hausdorff(z, a, b), directed_hausdorff(z, b, a));
}

namespace detail {

/// Distances replaced by their rank among the distinct values of the matrix.
/// Hausdorff distances only take min/max, so they can be computed on ranks.
struct RankedMetric {
    int n = 0;
    std::vector<Rat> values;
    std::vector<std::uint32_t> rank;

    explicit RankedMetric(const FiniteMetricSpace& z) : n(z.size()) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                values.push_back(z.d(i, j));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        rank.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rank[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint32_t>(
                    std::lower_bound(values.begin(), values.end(), z.d(i, j)) - values.begin());
    }

    std::uint32_t at(int i, int j) const { return rank[static_cast<std::size_t>(i) * n + j]; }
};

/// nearest[x * 2^n + mask] = rank of min over b in mask of d(x, b), for every
/// point x and nonempty mask over all n points.
inline std::vector<std::uint32_t> nearest_rank_table(const RankedMetric& rm) {
    int n = rm.n;
    std::size_t count = std::size_t{1} << n;
    std::vector<std::uint32_t> nearest(static_cast<std::size_t>(n) * count, 0);
    for (int x = 0; x < n; ++x) {
        std::uint32_t* row = nearest.data() + static_cast<std::size_t>(x) * count;
        for (std::size_t mask = 1; mask < count; ++mask) {
            int low = std::countr_zero(mask);
            std::size_t rest = mask & (mask - 1);
            std::uint32_t here = rm.at(x, low);
            row[mask] = rest == 0 ? here : std::min(here, row[rest]);
        }
    }
    return nearest;
}

inline std::uint32_t hausdorff_rank(const std::vector<std::uint32_t>& nearest, int n, std::uint64_t a, std::uint64_t b) {
    std::size_t count = std::size_t{1} << n;
    std::uint32_t worst = 0;
    for (std::uint64_t rest = a; rest != 0; rest &= rest - 1)
        worst = std::max(worst, nearest[static_cast<std::size_t>(std::countr_zero(rest)) * count + b]);
    for (std::uint64_t rest = b; rest != 0; rest &= rest - 1)
        worst = std::max(worst, nearest[static_cast<std::size_t>(std::countr_zero(rest)) * count + a]);
    return worst;
}

} // namespace detail

/// H(X): all nonempty subsets of a finite space under the Hausdorff metric.
/// Member i is the subset with bitmask i + 1 (ascending bitmask order).
struct Hyperspace {
    FiniteMetricSpace base;
    std::vector<Subset> members;
    FiniteMetricSpace metric;

    int index_of(const Subset& s) const { return static_cast<int>(s.bits()) - 1; }
};

inline Hyperspace build_hyperspace(const FiniteMetricSpace& x, int cap = kDefaultHyperspaceCap) {
    int n = x.size();
    if (n > cap || n > 20)
        throw Error(ErrorCode::SizeCapExceeded,
                    "hyperspace of " + std::to_string(n) + " points exceeds cap " + std::to_string(cap));
    detail::RankedMetric rm(x);
    auto nearest = detail::nearest_rank_table(rm);
    int members = (1 << n) - 1;
    std::vector<Rat> flat(static_cast<std::size_t>(members) * members, Rat(0));
    for (int i = 0; i < members; ++i)
        for (int j = i + 1; j < members; ++j) {
            const Rat& v = rm.values[detail::hausdorff_rank(nearest, n, std::uint64_t(i) + 1, std::uint64_t(j) + 1)];
            flat[static_cast<std::size_t>(i) * members + j] = v;
            flat[static_cast<std::size_t>(j) * members + i] = v;
        }
    std::vector<Subset> subsets;
    std::vector<std::string> labels;
    subsets.reserve(members);
    labels.reserve(members);
    for (int i = 0; i < members; ++i) {
        subsets.push_back(Subset::from_bits(std::uint64_t(i) + 1, n));
        labels.push_back(subsets.back().to_string());
    }
    // A valid base metric always yields a valid Hausdorff metric; the O(N^3)
    // triangle check is skipped above ValidateOptions::triangle_check_limit members.
    auto metric = validate_flat(members, std::move(flat), {.allow_pseudometric = x.pseudometric()});
    return Hyperspace{x, std::move(subsets), metric.with_labels(std::move(labels))};
}

/// Nearest-point map gamma: X -> Y inside a common space Z.
struct GammaMap {
    /// image[x] = gamma(x) for x in X, -1 for points outside X.
    std::vector<int> image;
    int ambient_size = 0;

    /// gamma(A) for A inside the domain. Finite sets are closed, so this is
    /// also the closure of gamma(A).
    Subset apply(const Subset& a) const {
        std::uint64_t bits = 0;
        for (int i : a.indices()) {
            if (image.at(i) < 0)
                throw Error(ErrorCode::InvalidParameter, "point " + std::to_string(i) + " is outside gamma's domain");
            bits |= std::uint64_t{1} << image[i];
        }
        return Subset::from_bits(bits, ambient_size);
    }
};

/// Ties are broken toward the lowest index of Y.
inline GammaMap gamma_map(const FiniteMetricSpace& z, const Subset& x, const Subset& y) {
    require_subset_of(z, x);
    require_subset_of(z, y);
    GammaMap g{std::vector<int>(z.size(), -1), z.size()};
    auto ys = y.indices();
    for (int xi : x.indices()) {
        int best = ys.front();
        for (int yi : ys)
            if (z.d(xi, yi) < z.d(xi, best))
                best = yi;
        g.image[xi] = best;
    }
    return g;
}

struct SubsetHyperspaceDistance {
    Rat via_enum;  ///< min over nonempty B in Y of |AB|_Z
    Rat via_gamma; ///< |A gamma(A)|_Z
};

/// Distance from A to the family H(Y) inside H(Z), computed two ways.
inline SubsetHyperspaceDistance subset_to_hyperspace_distance(const FiniteMetricSpace& z, const Subset& a, const Subset& y) {
    require_subset_of(z, a);
    require_subset_of(z, y);
    std::optional<Rat> best;
    for_each_nonempty_submask(y.bits(), [&](std::uint64_t b) {
        Rat h = hausdorff_distance(z, a, Subset::from_bits(b, z.size()));
        if (!best || h < *best)
            best = h;
    });
    auto g = gamma_map(z, a, y);
    return {*best, hausdorff_distance(z, a, g.apply(a))};
}

struct GammaReport {
    bool passed = true;
    int failed_clause = 0; ///< 1..4, 0 when passed
    std::string counterexample;
    std::uint64_t subsets_checked = 0;
};

/// Exhaustively checks, for every nonempty A in X with gamma: X -> Y,
///  (1) |a gamma(A)| = |a gamma(a)| for a in A
///  (2) |A gamma(A)|_Z = max over a in A of |a gamma(a)|
///  (3) |AB|_Z >= |A gamma(A)|_Z for every nonempty B in Y
///  (4) |A gamma(A)|_Z <= max over x in X of |x gamma(x)|
inline GammaReport check_gamma_identities(const FiniteMetricSpace& z, const Subset& x, const Subset& y,
                                          std::uint64_t pair_budget = kDefaultSubsetPairBudget) {
    require_subset_of(z, x);
    require_subset_of(z, y);
    if (x.size() + y.size() >= 63 || (std::uint64_t{1} << (x.size() + y.size())) > pair_budget)
        throw Error(ErrorCode::SizeCapExceeded, "2^|X| * 2^|Y| exceeds the subset pair budget");
    GammaReport report;
    auto g = gamma_map(z, x, y);
    Rat global(0);
    for (int xi : x.indices())
        global = std::max(global, z.d(xi, g.image[xi]));

    auto fail = [&report](int clause, std::string what) {
        report.passed = false;
        report.failed_clause = clause;
        report.counterexample = std::move(what);
    };

    for_each_nonempty_submask(x.bits(), [&](std::uint64_t abits) {
        if (!report.passed)
            return;
        Subset a = Subset::from_bits(abits, z.size());
        Subset ga = g.apply(a);
        auto ga_idx = ga.indices();
        Rat pointwise_max(0);
        for (int ai : a.indices()) {
            Rat to_set = z.d(ai, ga_idx.front());
            for (int j : ga_idx)
                to_set = std::min(to_set, z.d(ai, j));
            Rat to_point = z.d(ai, g.image[ai]);
            if (to_set != to_point) {
                fail(1, "A=" + a.to_string() + " a=" + std::to_string(ai) + ": |a gamma(A)|=" + to_string(to_set) +
                            " but |a gamma(a)|=" + to_string(to_point));
                return;
            }
            pointwise_max = std::max(pointwise_max, to_point);
        }
        Rat h = hausdorff_distance(z, a, ga);
        if (h != pointwise_max) {
            fail(2, "A=" + a.to_string() + ": |A gamma(A)|=" + to_string(h) + " but max |a gamma(a)|=" +
                        to_string(pointwise_max));
            return;
        }
        for_each_nonempty_submask(y.bits(), [&](std::uint64_t bbits) {
            if (!report.passed)
                return;
            ++report.subsets_checked;
            Subset b = Subset::from_bits(bbits, z.size());
            Rat hab = hausdorff_distance(z, a, b);
            if (hab < h)
                fail(3, "A=" + a.to_string() + " B=" + b.to_string() + ": |AB|=" + to_string(hab) +
                            " < |A gamma(A)|=" + to_string(h));
        });
        if (!report.passed)
            return;
        if (h > global)
            fail(4, "A=" + a.to_string() + ": |A gamma(A)|=" + to_string(h) + " > max |x gamma(x)|=" + to_string(global));
    });
    return report;
}

struct EmbeddingCheck {
    Rat lhs; ///< |H(X) H(Y)| inside H(Z)
    Rat rhs; ///< |XY|_Z
};

/// Evaluates both sides of |H(X)H(Y)|_{H(Z)} = |XY|_Z by iterating the two
/// subset families directly instead of materializing H(Z).
inline EmbeddingCheck verify_embedding_theorem(const FiniteMetricSpace& z, const Subset& x, const Subset& y,
                                               int cap = kDefaultHyperspaceCap) {
    require_subset_of(z, x);
    require_subset_of(z, y);
    if (z.size() > cap || z.size() > 20)
        throw Error(ErrorCode::SizeCapExceeded, "ambient space exceeds cap " + std::to_string(cap));
    detail::RankedMetric rm(z);
    auto nearest = detail::nearest_rank_table(rm);
    int n = z.size();

    std::vector<std::uint64_t> xs, ys;
    for_each_nonempty_submask(x.bits(), [&](std::uint64_t s) { xs.push_back(s); });
    for_each_nonempty_submask(y.bits(), [&](std::uint64_t s) { ys.push_back(s); });
    std::vector<std::uint32_t> h(xs.size() * ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j)
            h[i * ys.size() + j] = detail::hausdorff_rank(nearest, n, xs[i], ys[j]);

    std::uint32_t worst = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::uint32_t best = h[i * ys.size()];
        for (std::size_t j = 0; j < ys.size(); ++j)
            best = std::min(best, h[i * ys.size() + j]);
        worst = std::max(worst, best);
    }
    for (std::size_t j = 0; j < ys.size(); ++j) {
        std::uint32_t best = h[j];
        for (std::size_t i = 0; i < xs.size(); ++i)
            best = std::min(best, h[i * ys.size() + j]);
        worst = std::max(worst, best);
    }
    return {rm.values[worst], hausdorff_distance(z, x, y)};
}

struct LipschitzCheck {
    Rat lhs_haus; ///< |pi(t1) pi(t2)|_X
    Rat rhs_sup;  ///< max_i d(t1[i], t2[i])
};

/// pi_n sends a tuple of points to the set of its entries; compares the
/// Hausdorff distance of the images with the sup-metric on X^n.
inline LipschitzCheck projection_lipschitz_check(const FiniteMetricSpace& x, const std::vector<int>& t1,
                                                 const std::vector<int>& t2) {
    if (t1.empty() || t2.empty())
        throw Error(ErrorCode::EmptyTuple, "tuples must be nonempty");
    if (t1.size() != t2.size())
        throw Error(ErrorCode::LengthMismatch, "tuples have lengths " + std::to_string(t1.size()) + " and " +
                                                   std::to_string(t2.size()));
    Rat sup(0);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        if (t1[i] < 0 || t1[i] >= x.size() || t2[i] < 0 || t2[i] >= x.size())
            throw Error(ErrorCode::InvalidParameter, "tuple entry out of range");
        sup = std::max(sup, x.d(t1[i], t2[i]));
    }
    auto a = Subset::from_indices(std::span<const int>(t1), x.size());
    auto b = Subset::from_indices(std::span<const int>(t2), x.size());
    return {hausdorff_distance(x, a, b), sup};
}

} // namespace mslab

#endif // MSLAB_HYPERSPACE_HPP
