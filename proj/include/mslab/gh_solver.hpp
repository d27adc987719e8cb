#ifndef MSLAB_GH_SOLVER_HPP
#define MSLAB_GH_SOLVER_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "correspondence.hpp"
#include "errors.hpp"
#include "hyperspace.hpp"
#include "metric_space.hpp"
#include "rational.hpp"

namespace mslab {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Largest side the solver accepts: domains are 64-bit masks.
inline constexpr int kMaxSolverSide = 64;

enum class GhStatus { exact, budget_exceeded };

inline const char* to_string(GhStatus s) { return s == GhStatus::exact ? "exact" : "budget_exceeded"; }

struct GhResult {
    /// d_GH when status is exact, otherwise an upper bound.
    Rat distance;
    /// distortion(witness) == 2 * distance.
    Correspondence witness;
    std::uint64_t nodes_explored = 0;
    GhStatus status = GhStatus::exact;
};

namespace detail {

/// Decides, for a threshold c taken from the sorted candidate list, whether
/// some correspondence has distortion <= c.
///
/// Only correspondences of the form graph(f) U graph(g)^T with f: X -> Y and
/// g: Y -> X are searched. That loses nothing: every correspondence R contains
/// one (pick f(x) in R(x) and g(y) in R^-1(y)), and a sub-relation never has
/// larger distortion than R.
///
/// Variables 0..n-1 are f(x), variables n..n+m-1 are g(y). Each variable's
/// domain is a bitmask over the other side; assigning a variable fixes one
/// pair of the relation and forward checking removes every value of every
/// unassigned variable whose pair would exceed c against it.
class FeasibilitySearch {
public:
    enum class Outcome { feasible, infeasible, aborted };

    FeasibilitySearch(const FiniteMetricSpace& x, const FiniteMetricSpace& y)
        : x_(x), y_(y), n_(x.size()), m_(y.size()) {
        for (int a = 0; a < n_; ++a)
            for (int a2 = 0; a2 < n_; ++a2)
                for (int b = 0; b < m_; ++b)
                    for (int b2 = 0; b2 < m_; ++b2)
                        candidates_.push_back(abs_diff(x.d(a, a2), y.d(b, b2)));
        std::sort(candidates_.begin(), candidates_.end());
        candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
        rank_.resize(static_cast<std::size_t>(n_) * n_ * m_ * m_);
        for (int a = 0; a < n_; ++a)
            for (int a2 = 0; a2 < n_; ++a2)
                for (int b = 0; b < m_; ++b)
                    for (int b2 = 0; b2 < m_; ++b2)
                        rank_[quad(a, a2, b, b2)] = static_cast<std::uint32_t>(
                            std::lower_bound(candidates_.begin(), candidates_.end(), abs_diff(x.d(a, a2), y.d(b, b2))) -
                            candidates_.begin());
    }

    const std::vector<Rat>& candidates() const noexcept { return candidates_; }
    int variable_count() const noexcept { return n_ + m_; }

    IndexPair pair_of(int var, int value) const { return var < n_ ? IndexPair{var, value} : IndexPair{value, var - n_}; }

    /// Candidate index of the distortion of a relation.
    std::size_t distortion_rank(const std::vector<IndexPair>& pairs) const {
        std::uint32_t worst = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j)
                worst = std::max(worst, rank_[quad(pairs[i].first, pairs[j].first, pairs[i].second, pairs[j].second)]);
        return worst;
    }

    /// Eccentricity order: f-variables by decreasing max row value of X, then
    /// g-variables likewise for Y; ties by index.
    std::vector<int> eccentricity_order() const {
        auto by_ecc = [](const FiniteMetricSpace& s, int offset) {
            std::vector<std::pair<Rat, int>> keyed;
            for (int i = 0; i < s.size(); ++i) {
                Rat ecc(0);
                for (int j = 0; j < s.size(); ++j)
                    ecc = std::max(ecc, s.d(i, j));
                keyed.emplace_back(ecc, i);
            }
            std::stable_sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
            std::vector<int> vars;
            for (const auto& [ecc, i] : keyed)
                vars.push_back(offset + i);
            return vars;
        };
        std::vector<int> order = by_ecc(x_, 0);
        auto rest = by_ecc(y_, n_);
        order.insert(order.end(), rest.begin(), rest.end());
        return order;
    }

    /// f(0), ..., f(n-1), g(0), ..., g(m-1). Combined with ascending values the
    /// first solution found is the lexicographically smallest (f, g).
    std::vector<int> natural_order() const {
        std::vector<int> order(static_cast<std::size_t>(n_ + m_));
        std::iota(order.begin(), order.end(), 0);
        return order;
    }

    Outcome run(std::size_t c_index, const std::vector<int>& order, std::uint64_t& nodes, std::uint64_t budget,
                std::vector<IndexPair>& solution) {
        prepare(c_index);
        order_ = order;
        nodes_ = &nodes;
        budget_ = budget;
        aborted_ = false;
        int vars = variable_count();
        levels_.assign(static_cast<std::size_t>(vars) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(vars)));
        for (int v = 0; v < vars; ++v)
            levels_[0][v] = Subset::low_bits(v < n_ ? m_ : n_);
        assigned_.assign(static_cast<std::size_t>(vars), IndexPair{-1, -1});
        bool found = dfs(0);
        if (found) {
            solution = assigned_;
            return Outcome::feasible;
        }
        return aborted_ ? Outcome::aborted : Outcome::infeasible;
    }

private:
    std::size_t quad(int a, int a2, int b, int b2) const {
        return ((static_cast<std::size_t>(a) * n_ + a2) * m_ + b) * m_ + b2;
    }

    /// allowed_[(a*m + b) * (n+m) + u] = values of variable u compatible with pair (a, b).
    void prepare(std::size_t c_index) {
        int vars = variable_count();
        allowed_.assign(static_cast<std::size_t>(n_) * m_ * vars, 0);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < m_; ++b) {
                std::uint64_t* row = allowed_.data() + (static_cast<std::size_t>(a) * m_ + b) * vars;
                for (int x2 = 0; x2 < n_; ++x2)
                    for (int y2 = 0; y2 < m_; ++y2)
                        if (rank_[quad(a, x2, b, y2)] <= c_index) {
                            row[x2] |= std::uint64_t{1} << y2;      // f(x2) = y2
                            row[n_ + y2] |= std::uint64_t{1} << x2; // g(y2) = x2
                        }
            }
    }

    bool dfs(std::size_t depth) {
        int vars = variable_count();
        if (depth == static_cast<std::size_t>(vars))
            return true;
        int v = order_[depth];
        const auto& here = levels_[depth];
        auto& next = levels_[depth + 1];
        for (std::uint64_t dom = here[v]; dom != 0; dom &= dom - 1) {
            if (++*nodes_ > budget_) {
                aborted_ = true;
                return false;
            }
            int value = std::countr_zero(dom);
            IndexPair p = pair_of(v, value);
            const std::uint64_t* allow = allowed_.data() + (static_cast<std::size_t>(p.first) * m_ + p.second) * vars;
            next = here;
            next[v] = std::uint64_t{1} << value;
            bool wiped = false;
            for (std::size_t k = depth + 1; k < order_.size(); ++k) {
                int u = order_[k];
                next[u] &= allow[u];
                if (next[u] == 0) {
                    wiped = true;
                    break;
                }
            }
            if (wiped)
                continue;
            assigned_[v] = p;
            if (dfs(depth + 1))
                return true;
            if (aborted_)
                return false;
        }
        return false;
    }

    const FiniteMetricSpace& x_;
    const FiniteMetricSpace& y_;
    int n_;
    int m_;
    std::vector<Rat> candidates_;
    std::vector<std::uint32_t> rank_;
    std::vector<std::uint64_t> allowed_;
    std::vector<int> order_;
    std::vector<std::vector<std::uint64_t>> levels_;
    std::vector<IndexPair> assigned_;
    std::uint64_t* nodes_ = nullptr;
    std::uint64_t budget_ = 0;
    bool aborted_ = false;
};

} // namespace detail

/// Exact Gromov-Hausdorff distance, d_GH = min over correspondences of dis(R) / 2.
///
/// The optimal distortion is one of the values |d_X(x,x') - d_Y(y,y')|, so the
/// solver binary-searches that sorted candidate list for the least feasible
/// threshold, starting from the bracket [|diam X - diam Y|, dis(R0)] with R0
/// a trivial correspondence. When node_budget is exhausted the best
/// correspondence found so far is returned with status budget_exceeded.
inline GhResult gh_exact(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                         std::uint64_t node_budget = kDefaultNodeBudget) {
    int n = x.size();
    int m = y.size();
    if (n > kMaxSolverSide || m > kMaxSolverSide || std::uint64_t(n) * n * m * m > (std::uint64_t{1} << 26))
        throw Error(ErrorCode::SizeCapExceeded, "spaces too large for the exact solver");

    detail::FeasibilitySearch search(x, y);
    const auto& cands = search.candidates();

    // R0 = {(x, 0)} U {(0, y)}.
    std::vector<IndexPair> best;
    for (int i = 0; i < n; ++i)
        best.emplace_back(i, 0);
    for (int j = 0; j < m; ++j)
        best.emplace_back(0, j);
    std::size_t hi = search.distortion_rank(best);

    Rat lower = abs_diff(diameter(x), diameter(y));
    std::size_t lo = static_cast<std::size_t>(std::lower_bound(cands.begin(), cands.end(), lower) - cands.begin());
    lo = std::min(lo, hi);

    std::uint64_t nodes = 0;
    GhStatus status = GhStatus::exact;
    auto order = search.eccentricity_order();
    std::vector<IndexPair> found;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto outcome = search.run(mid, order, nodes, node_budget, found);
        if (outcome == detail::FeasibilitySearch::Outcome::aborted) {
            status = GhStatus::budget_exceeded;
            break;
        }
        if (outcome == detail::FeasibilitySearch::Outcome::feasible) {
            best = found;
            hi = search.distortion_rank(found);
        } else {
            lo = mid + 1;
        }
    }

    if (status == GhStatus::exact) {
        // Re-extract the witness in natural order so it is the lexicographically
        // smallest (f, g) at the optimum.
        auto outcome = search.run(hi, search.natural_order(), nodes, node_budget, found);
        if (outcome == detail::FeasibilitySearch::Outcome::feasible)
            best = found;
    }

    return GhResult{half(cands[hi]), Correspondence::make(n, m, best), nodes, status};
}

struct GhBounds {
    Rat lower; ///< |diam X - diam Y| / 2
    Rat upper; ///< max{diam X, diam Y} / 2
};

inline GhBounds gh_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    Rat dx = diameter(x);
    Rat dy = diameter(y);
    return {half(abs_diff(dx, dy)), half(std::max(dx, dy))};
}

/// The correspondence {(A, R(A))} U {(R^-1(B), B)} between H(X) and H(Y), in
/// hyperspace member indices (member i <-> bitmask i + 1). Its distortion never
/// exceeds dis(R).
inline Correspondence induced_correspondence(const Correspondence& r, const FiniteMetricSpace& x,
                                             const FiniteMetricSpace& y, int cap = kDefaultHyperspaceCap) {
    if (r.x_size() != x.size() || r.y_size() != y.size())
        throw Error(ErrorCode::InvalidCorrespondence, "correspondence sizes do not match the spaces");
    int n = x.size();
    int m = y.size();
    if (n > cap || m > cap || n > 20 || m > 20)
        throw Error(ErrorCode::SizeCapExceeded, "hyperspace cap exceeded");
    std::vector<std::uint64_t> forward(n, 0), backward(m, 0);
    for (auto [a, b] : r.pairs()) {
        forward[a] |= std::uint64_t{1} << b;
        backward[b] |= std::uint64_t{1} << a;
    }
    auto image = [](std::uint64_t mask, const std::vector<std::uint64_t>& rel) {
        std::uint64_t out = 0;
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1)
            out |= rel[std::countr_zero(rest)];
        return out;
    };
    std::vector<IndexPair> pairs;
    int hx = (1 << n) - 1;
    int hy = (1 << m) - 1;
    for (int a = 1; a <= hx; ++a)
        pairs.emplace_back(a - 1, static_cast<int>(image(std::uint64_t(a), forward)) - 1);
    for (int b = 1; b <= hy; ++b)
        pairs.emplace_back(static_cast<int>(image(std::uint64_t(b), backward)) - 1, b - 1);
    return Correspondence::make(hx, hy, std::move(pairs));
}

} // namespace mslab

#endif // MSLAB_GH_SOLVER_HPP
