#ifndef MSLAB_METRIC_SPACE_HPP
#define MSLAB_METRIC_SPACE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"
#include "subset.hpp"

namespace mslab {

using Matrix = std::vector<std::vector<Rat>>;

struct ValidateOptions {
    bool allow_pseudometric = false;
    /// Triangle inequality is checked exhaustively only up to this many points (O(n^3)).
    int triangle_check_limit = 511;
};

/// A finite metric (or pseudometric) space given by its distance matrix.
/// Instances only come out of validate() or the builders in this library,
/// so every instance satisfies the metric axioms.
class FiniteMetricSpace {
public:
    int size() const noexcept { return n_; }
    const Rat& d(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    bool pseudometric() const noexcept { return pseudometric_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    Matrix matrix() const {
        Matrix out(n_, std::vector<Rat>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                out[i][j] = d(i, j);
        return out;
    }

    FiniteMetricSpace with_labels(std::vector<std::string> labels) const {
        if (!labels.empty() && static_cast<int>(labels.size()) != n_)
            throw Error(ErrorCode::InvalidParameter, "label count does not match point count");
        FiniteMetricSpace copy = *this;
        copy.labels_ = std::move(labels);
        return copy;
    }

    friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }

    friend FiniteMetricSpace validate_flat(int n, std::vector<Rat> flat, ValidateOptions options);

private:
    FiniteMetricSpace(int n, std::vector<Rat> flat, bool pseudo)
        : n_(n), d_(std::move(flat)), pseudometric_(pseudo) {}

    int n_ = 0;
    std::vector<Rat> d_;
    bool pseudometric_ = false;
    std::vector<std::string> labels_;
};

namespace detail {

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    std::int64_t q = b / g;
    if (a > std::numeric_limits<std::int64_t>::max() / q)
        return 0;
    return a * q;
}

/// Returns false on the first (i, j, k) with d(i,j) > d(i,k) + d(k,j) and stores it.
inline bool triangle_ok(int n, const std::vector<Rat>& d, std::array<int, 3>& bad) {
    // Scale to a common denominator so the O(n^3) loop runs on integers.
    std::int64_t common = 1;
    for (const Rat& r : d) {
        common = lcm_checked(common, r.denominator());
        if (common == 0 || common > (std::int64_t{1} << 40))
            break;
    }
    auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
    bool scaled_ok = common != 0 && common <= (std::int64_t{1} << 40);
    std::vector<std::int64_t> scaled;
    if (scaled_ok) {
        scaled.resize(d.size());
        for (std::size_t e = 0; e < d.size(); ++e) {
            const Rat& r = d[e];
            std::int64_t factor = common / r.denominator();
            if (r.numerator() > (std::numeric_limits<std::int64_t>::max() >> 2) / factor) {
                scaled_ok = false;
                break;
            }
            scaled[e] = r.numerator() * factor;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j)
                    continue;
                bool violated = scaled_ok ? scaled[at(i, j)] > scaled[at(i, k)] + scaled[at(k, j)]
                                          : d[at(i, j)] > d[at(i, k)] + d[at(k, j)];
                if (violated) {
                    bad = {i, j, k};
                    return false;
                }
            }
        }
    return true;
}

} // namespace detail

/// Checks the axioms in the order: negative entries, diagonal, symmetry,
/// zero off-diagonal entries (unless pseudometrics are allowed), triangle
/// inequality. Degenerate triangles (equality) are accepted.
inline FiniteMetricSpace validate_flat(int n, std::vector<Rat> d, ValidateOptions options = {}) {
    if (n <= 0)
        throw Error(ErrorCode::InvalidParameter, "a space needs at least one point");
    if (d.size() != static_cast<std::size_t>(n) * n)
        throw Error(ErrorCode::NotSquare, "distance matrix is not square");
    auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
    auto pos = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d[at(i, j)] < Rat(0))
                throw Error(ErrorCode::NegativeDistance, "negative entry at " + pos(i, j));
    for (int i = 0; i < n; ++i)
        if (d[at(i, i)] != Rat(0))
            throw Error(ErrorCode::NonzeroDiagonal, "nonzero diagonal at " + pos(i, i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d[at(i, j)] != d[at(j, i)])
                throw Error(ErrorCode::AsymmetricMatrix, "d" + pos(i, j) + " != d" + pos(j, i));
    bool has_zero = false;
    for (int i = 0; i < n && !has_zero; ++i)
        for (int j = i + 1; j < n; ++j)
            if (d[at(i, j)] == Rat(0)) {
                if (!options.allow_pseudometric)
                    throw Error(ErrorCode::ZeroOffDiagonal, "zero distance between distinct points " + pos(i, j));
                has_zero = true;
                break;
            }
    if (n <= options.triangle_check_limit) {
        std::array<int, 3> bad{};
        if (!detail::triangle_ok(n, d, bad))
            throw Error(ErrorCode::TriangleViolation,
                        "d(" + std::to_string(bad[0]) + "," + std::to_string(bad[1]) + ") > d(" +
                            std::to_string(bad[0]) + "," + std::to_string(bad[2]) + ") + d(" +
                            std::to_string(bad[2]) + "," + std::to_string(bad[1]) + ")",
                        bad);
    }
    return FiniteMetricSpace(n, std::move(d), has_zero);
}

inline FiniteMetricSpace validate(const Matrix& matrix, ValidateOptions options = {}) {
    int n = static_cast<int>(matrix.size());
    std::vector<Rat> flat;
    flat.reserve(matrix.size() * matrix.size());
    for (const auto& row : matrix) {
        if (row.size() != matrix.size())
            throw Error(ErrorCode::NotSquare, "row length " + std::to_string(row.size()) + " != " + std::to_string(n));
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return validate_flat(n, std::move(flat), options);
}

/// Convenience for integer matrices in code and tests.
inline FiniteMetricSpace validate_ints(const std::vector<std::vector<std::int64_t>>& ints, ValidateOptions options = {}) {
    Matrix m;
    for (const auto& row : ints)
        m.emplace_back(row.begin(), row.end());
    return validate(m, options);
}

/// The points 0 < x_1 < ... of a subset of the real line, with |x - y| as metric.
inline FiniteMetricSpace line_space(const std::vector<Rat>& coords) {
    Matrix m(coords.size(), std::vector<Rat>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = 0; j < coords.size(); ++j)
            m[i][j] = abs_diff(coords[i], coords[j]);
    return validate(m);
}

struct DiamEps {
    Rat diam;
    /// Minimal distance between distinct points; nullopt stands for +infinity (one-point space).
    std::optional<Rat> eps;

    friend bool operator==(const DiamEps&, const DiamEps&) = default;
};

inline DiamEps diam_eps(const FiniteMetricSpace& space) {
    DiamEps out{Rat(0), std::nullopt};
    for (int i = 0; i < space.size(); ++i)
        for (int j = i + 1; j < space.size(); ++j) {
            const Rat& v = space.d(i, j);
            out.diam = std::max(out.diam, v);
            if (!out.eps || v < *out.eps)
                out.eps = v;
        }
    return out;
}

inline Rat diameter(const FiniteMetricSpace& space) { return diam_eps(space).diam; }

/// The simplex t*Delta_n: n points, all nonzero distances equal to t.
inline FiniteMetricSpace simplex(int n, const Rat& t) {
    if (n <= 0)
        throw Error(ErrorCode::InvalidParameter, "simplex needs n >= 1");
    if (t <= Rat(0))
        throw Error(ErrorCode::InvalidParameter, "simplex needs t > 0");
    std::vector<Rat> flat(static_cast<std::size_t>(n) * n, t);
    for (int i = 0; i < n; ++i)
        flat[static_cast<std::size_t>(i) * n + i] = 0;
    return validate_flat(n, std::move(flat));
}

struct Gap {
    Rat inf; ///< |AB| = min over cross pairs
    Rat sup; ///< |AB|' = max over cross pairs
};

inline void require_subset_of(const FiniteMetricSpace& space, const Subset& s) {
    if (s.ambient_size() != space.size())
        throw Error(ErrorCode::InvalidParameter, "subset " + s.to_string() + " belongs to a space of size " +
                                                     std::to_string(s.ambient_size()) + ", not " +
                                                     std::to_string(space.size()));
}

inline Gap subset_gap(const FiniteMetricSpace& space, const Subset& a, const Subset& b) {
    require_subset_of(space, a);
    require_subset_of(space, b);
    std::optional<Gap> gap;
    for (int i : a.indices())
        for (int j : b.indices()) {
            const Rat& v = space.d(i, j);
            if (!gap)
                gap = Gap{v, v};
            gap->inf = std::min(gap->inf, v);
            gap->sup = std::max(gap->sup, v);
        }
    return *gap;
}

/// True iff the graph joining points at distance <= delta is connected; this
/// is the same as every bipartition having cross gap <= delta.
inline bool is_delta_connected(const FiniteMetricSpace& space, const Rat& delta) {
    if (delta < Rat(0))
        throw Error(ErrorCode::InvalidParameter, "delta must be nonnegative");
    int n = space.size();
    std::vector<bool> seen(n, false);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = true;
    int reached = 1;
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop();
        for (int v = 0; v < n; ++v)
            if (!seen[v] && space.d(u, v) <= delta) {
                seen[v] = true;
                ++reached;
                frontier.push(v);
            }
    }
    return reached == n;
}

/// Replaces d by its all-pairs shortest-path closure in place.
inline void shortest_path_closure(int n, std::vector<Rat>& d) {
    auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat via = d[at(i, k)] + d[at(k, j)];
                if (via < d[at(i, j)])
                    d[at(i, j)] = via;
            }
}

/// Deterministic random metric: symmetric integer entries uniform in
/// [1, max_entry], then shortest-path repair. eps >= 1 for n >= 2.
inline FiniteMetricSpace random_space(int n, std::uint64_t seed, std::int64_t max_entry = 10) {
    if (n <= 0)
        throw Error(ErrorCode::InvalidParameter, "random_space needs n >= 1");
    if (max_entry <= 0)
        throw Error(ErrorCode::InvalidParameter, "max_entry must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> draw(1, max_entry);
    std::vector<Rat> d(static_cast<std::size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat v(draw(rng));
            d[static_cast<std::size_t>(i) * n + j] = v;
            d[static_cast<std::size_t>(j) * n + i] = v;
        }
    shortest_path_closure(n, d);
    return validate_flat(n, std::move(d));
}

/// Every distance multiplied by factor > 0.
inline FiniteMetricSpace scaled(const FiniteMetricSpace& space, const Rat& factor) {
    if (factor <= Rat(0))
        throw Error(ErrorCode::InvalidParameter, "scale factor must be positive");
    int n = space.size();
    std::vector<Rat> flat(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            flat[static_cast<std::size_t>(i) * n + j] = space.d(i, j) * factor;
    return validate_flat(n, std::move(flat), {.allow_pseudometric = space.pseudometric()});
}

/// Restriction of the metric to the points of a subset, in ascending index order.
inline FiniteMetricSpace restrict_to(const FiniteMetricSpace& space, const Subset& s) {
    require_subset_of(space, s);
    auto idx = s.indices();
    int k = static_cast<int>(idx.size());
    std::vector<Rat> flat(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            flat[static_cast<std::size_t>(i) * k + j] = space.d(idx[i], idx[j]);
    return validate_flat(k, std::move(flat), {.allow_pseudometric = true});
}

} // namespace mslab

#endif // MSLAB_METRIC_SPACE_HPP
