#ifndef MSLAB_EXPERIMENTS_HPP
#define MSLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "closed_form.hpp"
#include "errors.hpp"
#include "gh_solver.hpp"
#include "hyperspace.hpp"
#include "metric_space.hpp"
#include "rational.hpp"

namespace mslab {

/// All nonzero distances distinct and every triangle inequality strict.
inline bool is_general_position(const FiniteMetricSpace& space) {
    int n = space.size();
    std::vector<Rat> seen;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (space.d(i, j) != Rat(0))
                seen.push_back(space.d(i, j));
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j || j == k || i == k)
                    continue;
                if (!(space.d(i, j) < space.d(i, k) + space.d(k, j)))
                    return false;
            }
    return true;
}

/// Random space in general position: integer entries in [1, max_entry] are
/// jittered by (k + 1) / (P + 1) for the k-th of P pairs, repaired by
/// shortest paths, and resampled until general position or retry_cap.
inline FiniteMetricSpace random_general_position_space(int n, std::uint64_t seed, std::int64_t max_entry = 10,
                                                        int retry_cap = 200) {
    if (n <= 0 || max_entry <= 0)
        throw Error(ErrorCode::InvalidParameter, "need n >= 1 and max_entry >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> draw(1, max_entry);
    std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
    for (int attempt = 0; attempt < retry_cap; ++attempt) {
        std::vector<Rat> d(static_cast<std::size_t>(n) * n, Rat(0));
        std::int64_t k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++k) {
                Rat v = Rat(draw(rng)) + Rat(k + 1, pairs + 1);
                d[static_cast<std::size_t>(i) * n + j] = v;
                d[static_cast<std::size_t>(j) * n + i] = v;
            }
        shortest_path_closure(n, d);
        auto space = validate_flat(n, std::move(d));
        if (is_general_position(space))
            return space;
    }
    throw Error(ErrorCode::InsufficientSamples,
                "no general-position sample within " + std::to_string(retry_cap) + " attempts");
}

enum class RowStatus {
    exact,        ///< both distances solved exactly
    upper_bound,  ///< hyperspace solve hit the budget, but its upper bound is <= d_xy
    inconclusive, ///< a budget was exhausted and nothing can be concluded
};

inline const char* to_string(RowStatus s) {
    switch (s) {
    case RowStatus::exact: return "exact";
    case RowStatus::upper_bound: return "upper_bound";
    case RowStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct SweepRow {
    int pair_id = 0;
    std::uint64_t seed = 0;
    int n_x = 0;
    int n_y = 0;
    Rat d_xy;
    Rat d_hxhy;
    Rat gap; ///< d_xy - d_hxhy
    RowStatus status = RowStatus::exact;
    FiniteMetricSpace x;
    FiniteMetricSpace y;
    Correspondence witness_xy;
    Correspondence witness_h;
};

struct SweepSummary {
    Rat min_gap;
    Rat max_gap;
    int violations = 0;
    int inconclusive = 0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    SweepSummary summary;
    /// Row with the largest gap (isometry probe), if any.
    std::optional<int> largest_gap_row;
};

/// Solves d_GH(X, Y) and d_GH(H(X), H(Y)) and records the exact gap.
inline SweepRow nonexpansion_row(int pair_id, std::uint64_t seed, const FiniteMetricSpace& x,
                                 const FiniteMetricSpace& y, std::uint64_t node_budget = kDefaultNodeBudget) {
    auto base = gh_exact(x, y, node_budget);
    auto hx = build_hyperspace(x);
    auto hy = build_hyperspace(y);
    auto lifted = gh_exact(hx.metric, hy.metric, node_budget);
    RowStatus status = RowStatus::exact;
    if (base.status != GhStatus::exact)
        status = RowStatus::inconclusive;
    else if (lifted.status != GhStatus::exact)
        status = lifted.distance <= base.distance ? RowStatus::upper_bound : RowStatus::inconclusive;
    return SweepRow{pair_id,         seed,   x.size(), y.size(), base.distance, lifted.distance,
                    base.distance - lifted.distance, status, x, y, base.witness, lifted.witness};
}

inline SweepSummary summarize(const std::vector<SweepRow>& rows) {
    SweepSummary s;
    bool first = true;
    for (const auto& row : rows) {
        if (row.status == RowStatus::inconclusive) {
            ++s.inconclusive;
            continue;
        }
        if (row.gap < Rat(0))
            ++s.violations;
        if (first || row.gap < s.min_gap)
            s.min_gap = row.gap;
        if (first || row.gap > s.max_gap)
            s.max_gap = row.gap;
        first = false;
    }
    return s;
}

struct SweepOptions {
    int count = 300;
    int max_n = 3;
    std::uint64_t seed = 1;
    std::int64_t max_entry = 10;
    std::uint64_t node_budget = kDefaultNodeBudget;
};

/// Row i uses seed + i to draw the sizes (uniform in [1, max_n]) and the two spaces.
inline SweepReport nonexpansion_sweep(const SweepOptions& opt) {
    if (opt.count < 0)
        throw Error(ErrorCode::InvalidParameter, "count must be nonnegative");
    if (opt.max_n < 1 || opt.max_n > 3)
        throw Error(ErrorCode::InvalidParameter, "max_n must be in [1, 3]");
    SweepReport report;
    for (int i = 0; i < opt.count; ++i) {
        std::uint64_t row_seed = opt.seed + static_cast<std::uint64_t>(i);
        std::mt19937_64 rng(row_seed);
        std::uniform_int_distribution<int> size(1, opt.max_n);
        int nx = size(rng);
        int ny = size(rng);
        auto x = random_space(nx, rng(), opt.max_entry);
        auto y = random_space(ny, rng(), opt.max_entry);
        report.rows.push_back(nonexpansion_row(i, row_seed, x, y, opt.node_budget));
    }
    report.summary = summarize(report.rows);
    return report;
}

/// Gap statistics over the general-position pairs among `pairs`; other pairs
/// are dropped. Makes no claim about whether gaps vanish.
inline SweepReport isometry_probe_pairs(const std::vector<std::pair<FiniteMetricSpace, FiniteMetricSpace>>& pairs,
                                        std::uint64_t seed = 0, std::uint64_t node_budget = kDefaultNodeBudget) {
    SweepReport report;
    int id = 0;
    for (const auto& [x, y] : pairs) {
        if (x.size() > 3 || y.size() > 3)
            throw Error(ErrorCode::InvalidParameter, "probe spaces must have at most 3 points");
        if (!is_general_position(x) || !is_general_position(y))
            continue;
        report.rows.push_back(nonexpansion_row(id++, seed, x, y, node_budget));
    }
    if (report.rows.empty())
        throw Error(ErrorCode::InsufficientSamples, "no general-position pairs to probe");
    report.summary = summarize(report.rows);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        if (row.status == RowStatus::inconclusive)
            continue;
        if (!report.largest_gap_row || row.gap > report.rows[*report.largest_gap_row].gap)
            report.largest_gap_row = static_cast<int>(i);
    }
    return report;
}

/// Samples `count` general-position pairs of n-point spaces; pair i uses seed + i.
inline SweepReport isometry_probe(int count, int n, std::uint64_t seed, std::int64_t max_entry = 10,
                                  std::uint64_t node_budget = kDefaultNodeBudget) {
    if (n < 1 || n > 3)
        throw Error(ErrorCode::InvalidParameter, "n must be in [1, 3]");
    std::vector<std::pair<FiniteMetricSpace, FiniteMetricSpace>> pairs;
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < count; ++i) {
        std::uint64_t row_seed = seed + static_cast<std::uint64_t>(i);
        std::mt19937_64 rng(row_seed);
        auto x = random_general_position_space(n, rng(), max_entry);
        auto y = random_general_position_space(n, rng(), max_entry);
        pairs.emplace_back(std::move(x), std::move(y));
        seeds.push_back(row_seed);
    }
    auto report = isometry_probe_pairs(pairs, seed, node_budget);
    // Every sampled pair is in general position, so row i came from pair i.
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        report.rows[i].seed = seeds[i];
    return report;
}

struct SimplexTableRow {
    Rat t;
    int p;
    Rat s;
    int q;
    Rat base;   ///< d_GH(t Delta_p, s Delta_q)
    Rat lifted; ///< same formula at sizes 2^p - 1, 2^q - 1
};

struct FiniteTableRow {
    int space_id;
    int space_size;
    Rat t;
    int n;
    Rat base;   ///< closed form for d_GH(t Delta_n, M)
    Rat lifted; ///< closed form for d_GH(t Delta_{2^n - 1}, H(M)) on the actual hyperspace
};

struct SpotCheckRow {
    Rat t;
    int space_id;
    int space_size;
    Rat base;   ///< ghExact(t Delta_2, M)
    Rat lifted; ///< ghExact(H(t Delta_2), H(M))
};

struct SimplexTable {
    std::vector<SimplexTableRow> simplex_rows;
    std::vector<FiniteTableRow> finite_rows;
    std::vector<SpotCheckRow> spot_rows;
    std::vector<FiniteMetricSpace> spaces;

    bool all_agree() const {
        for (const auto& r : simplex_rows)
            if (r.base != r.lifted)
                return false;
        for (const auto& r : finite_rows)
            if (r.base != r.lifted)
                return false;
        for (const auto& r : spot_rows)
            if (r.base != r.lifted)
                return false;
        return true;
    }
};

/// Preservation of simplex distances under H. The finite-M part uses random
/// spaces of 1..min(p_max, 4) points drawn from `seed`.
inline SimplexTable simplex_preservation_table(int p_max, const std::vector<Rat>& t_set, std::uint64_t seed = 1,
                                               std::uint64_t node_budget = kDefaultNodeBudget) {
    if (p_max < 1 || p_max > 5)
        throw Error(ErrorCode::InvalidParameter, "p_max must be in [1, 5]");
    if (t_set.empty())
        throw Error(ErrorCode::InvalidParameter, "t_set is empty");
    for (const auto& t : t_set)
        if (t <= Rat(0))
            throw Error(ErrorCode::InvalidParameter, "scales must be positive");
    SimplexTable table;
    for (const auto& t : t_set)
        for (int p = 1; p <= p_max; ++p)
            for (const auto& s : t_set)
                for (int q = 1; q <= p_max; ++q)
                    table.simplex_rows.push_back({t, p, s, q, gh_simplex_simplex(t, p, s, q),
                                                  gh_simplex_simplex(t, (1 << p) - 1, s, (1 << q) - 1)});

    std::mt19937_64 rng(seed);
    int max_size = std::min(p_max, 4);
    for (int size = 1; size <= max_size; ++size)
        table.spaces.push_back(random_space(size, rng(), 6));

    for (std::size_t id = 0; id < table.spaces.size(); ++id) {
        const auto& m = table.spaces[id];
        auto hm = build_hyperspace(m);
        for (const auto& t : t_set)
            for (int n = m.size(); n <= p_max; ++n) {
                if (n == m.size() && m.size() < 2)
                    continue;
                table.finite_rows.push_back({static_cast<int>(id), m.size(), t, n, gh_simplex_vs_finite(t, n, m),
                                             gh_simplex_vs_finite(t, (1 << n) - 1, hm.metric)});
            }
        if (m.size() <= 2) {
            for (const auto& t : t_set) {
                auto simplex2 = simplex(2, t);
                auto base = gh_exact(simplex2, m, node_budget);
                auto lifted = gh_exact(build_hyperspace(simplex2).metric, hm.metric, node_budget);
                table.spot_rows.push_back({t, static_cast<int>(id), m.size(), base.distance, lifted.distance});
            }
        }
    }
    return table;
}

} // namespace mslab

#endif // MSLAB_EXPERIMENTS_HPP
