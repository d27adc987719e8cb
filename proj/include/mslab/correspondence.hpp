#ifndef MSLAB_CORRESPONDENCE_HPP
#define MSLAB_CORRESPONDENCE_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "metric_space.hpp"
#include "rational.hpp"

namespace mslab {

using IndexPair = std::pair<int, int>;

/// A relation between {0..x_size-1} and {0..y_size-1} whose projections onto
/// both sides are surjective. Pairs are kept sorted and deduplicated.
class Correspondence {
public:
    static Correspondence make(int x_size, int y_size, std::vector<IndexPair> pairs) {
        if (x_size <= 0 || y_size <= 0)
            throw Error(ErrorCode::InvalidCorrespondence, "both sides must be nonempty");
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        std::vector<bool> hit_x(x_size, false), hit_y(y_size, false);
        for (auto [x, y] : pairs) {
            if (x < 0 || x >= x_size || y < 0 || y >= y_size)
                throw Error(ErrorCode::InvalidCorrespondence,
                            "pair (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
            hit_x[x] = true;
            hit_y[y] = true;
        }
        for (int x = 0; x < x_size; ++x)
            if (!hit_x[x])
                throw Error(ErrorCode::InvalidCorrespondence, "x-side point " + std::to_string(x) + " is uncovered");
        for (int y = 0; y < y_size; ++y)
            if (!hit_y[y])
                throw Error(ErrorCode::InvalidCorrespondence, "y-side point " + std::to_string(y) + " is uncovered");
        return Correspondence(x_size, y_size, std::move(pairs));
    }

    static Correspondence identity(int n) {
        std::vector<IndexPair> pairs;
        for (int i = 0; i < n; ++i)
            pairs.emplace_back(i, i);
        return make(n, n, std::move(pairs));
    }

    static Correspondence full(int x_size, int y_size) {
        std::vector<IndexPair> pairs;
        for (int x = 0; x < x_size; ++x)
            for (int y = 0; y < y_size; ++y)
                pairs.emplace_back(x, y);
        return make(x_size, y_size, std::move(pairs));
    }

    int x_size() const noexcept { return x_size_; }
    int y_size() const noexcept { return y_size_; }
    const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }

    /// Swaps the roles of the two sides.
    Correspondence transposed() const {
        std::vector<IndexPair> flipped;
        flipped.reserve(pairs_.size());
        for (auto [x, y] : pairs_)
            flipped.emplace_back(y, x);
        return make(y_size_, x_size_, std::move(flipped));
    }

    friend bool operator==(const Correspondence&, const Correspondence&) = default;

private:
    Correspondence(int x_size, int y_size, std::vector<IndexPair> pairs)
        : x_size_(x_size), y_size_(y_size), pairs_(std::move(pairs)) {}

    int x_size_;
    int y_size_;
    std::vector<IndexPair> pairs_;
};

/// Largest |d_X(x,x') - d_Y(y,y')| over pairs (x,y), (x',y') of the relation.
/// Works for any relation; the correspondence sizes must match the spaces.
inline Rat distortion(const Correspondence& r, const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
    if (r.x_size() != x.size() || r.y_size() != y.size())
        throw Error(ErrorCode::InvalidCorrespondence, "correspondence sizes do not match the spaces");
    const auto& p = r.pairs();
    Rat worst(0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            Rat diff = abs_diff(x.d(p[i].first, p[j].first), y.d(p[i].second, p[j].second));
            if (diff > worst)
                worst = diff;
        }
    return worst;
}

} // namespace mslab

#endif // MSLAB_CORRESPONDENCE_HPP
