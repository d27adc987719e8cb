// Brute-force reference computations used only by the tests. None of these
// share code paths with the library beyond the FiniteMetricSpace accessor.
#ifndef MSLAB_TESTS_ORACLES_HPP
#define MSLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include <mslab/metric_space.hpp>
#include <mslab/rational.hpp>

namespace oracle {

using mslab::FiniteMetricSpace;
using mslab::Rat;

inline Rat absdiff(const Rat& a, const Rat& b) { return a > b ? a - b : b - a; }

/// sup_{a in A} inf_{b in B} d(a,b), maxed with the reverse direction.
inline Rat hausdorff(const FiniteMetricSpace& z, const std::vector<int>& a, const std::vector<int>& b) {
    auto directed = [&z](const std::vector<int>& from, const std::vector<int>& to) {
        std::optional<Rat> sup;
        for (int p : from) {
            std::optional<Rat> inf;
            for (int q : to)
                if (!inf || z.d(p, q) < *inf)
                    inf = z.d(p, q);
            if (!sup || *inf > *sup)
                sup = *inf;
        }
        return *sup;
    };
    return std::max(directed(a, b), directed(b, a));
}

inline std::vector<int> bits_to_indices(std::uint64_t bits) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if ((bits >> i) & 1U)
            out.push_back(i);
    return out;
}

inline Rat relation_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               const std::vector<std::pair<int, int>>& rel) {
    Rat worst(0);
    for (const auto& [a, b] : rel)
        for (const auto& [a2, b2] : rel)
            worst = std::max(worst, absdiff(x.d(a, a2), y.d(b, b2)));
    return worst;
}

/// min over all correspondences (every subset of X x Y with both projections
/// surjective) of dis(R), halved. Exponential in |X| * |Y|.
inline Rat gh_by_relations(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    int n = x.size();
    int m = y.size();
    int cells = n * m;
    if (cells > 20)
        throw std::invalid_argument("relation oracle limited to 20 cells");
    std::optional<Rat> best;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
        std::vector<std::pair<int, int>> rel;
        std::vector<bool> hx(n, false), hy(m, false);
        for (int c = 0; c < cells; ++c)
            if ((mask >> c) & 1U) {
                rel.emplace_back(c / m, c % m);
                hx[c / m] = true;
                hy[c % m] = true;
            }
        if (std::find(hx.begin(), hx.end(), false) != hx.end() || std::find(hy.begin(), hy.end(), false) != hy.end())
            continue;
        Rat dis = relation_distortion(x, y, rel);
        if (!best || dis < *best)
            best = dis;
    }
    return *best / Rat(2);
}

/// min over all pairs of maps f: X -> Y, g: Y -> X of dis(graph f U graph g^T), halved.
inline Rat gh_by_function_pairs(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    int n = x.size();
    int m = y.size();
    double combos = std::pow(double(m), n) * std::pow(double(n), m);
    if (combos > 5e6)
        throw std::invalid_argument("function-pair oracle too large");
    std::vector<int> f(n, 0), g(m, 0);
    std::optional<Rat> best;
    while (true) {
        std::vector<std::pair<int, int>> rel;
        for (int i = 0; i < n; ++i)
            rel.emplace_back(i, f[i]);
        for (int j = 0; j < m; ++j)
            rel.emplace_back(g[j], j);
        Rat dis = relation_distortion(x, y, rel);
        if (!best || dis < *best)
            best = dis;
        // odometer over (f, g)
        int k = 0;
        for (; k < n + m; ++k) {
            int& digit = k < n ? f[k] : g[k - n];
            int base = k < n ? m : n;
            if (++digit < base)
                break;
            digit = 0;
        }
        if (k == n + m)
            break;
    }
    return *best / Rat(2);
}

inline bool isometric(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    if (x.size() != y.size())
        return false;
    std::vector<int> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < x.size() && ok; ++i)
            for (int j = 0; j < x.size() && ok; ++j)
                ok = x.d(i, j) == y.d(perm[i], perm[j]);
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline bool satisfies_triangle(const FiniteMetricSpace& s) {
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j)
            for (int k = 0; k < s.size(); ++k)
                if (s.d(i, j) > s.d(i, k) + s.d(k, j))
                    return false;
    return true;
}

} // namespace oracle

#endif // MSLAB_TESTS_ORACLES_HPP
