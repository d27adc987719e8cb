#ifndef MSLAB_CLOSED_FORM_HPP
#define MSLAB_CLOSED_FORM_HPP

#include <algorithm>

#include "errors.hpp"
#include "metric_space.hpp"
#include "rational.hpp"

namespace mslab {

/// d_GH(t*Delta_p, s*Delta_q):
///   |t - s| / 2           if p = q
///   max{t, s - t} / 2     if p > q
///   max{s, t - s} / 2     if p < q
inline Rat gh_simplex_simplex(const Rat& t, int p, const Rat& s, int q) {
    if (t <= Rat(0) || s <= Rat(0))
        throw Error(ErrorCode::InvalidParameter, "simplex scales must be positive");
    if (p < 1 || q < 1)
        throw Error(ErrorCode::InvalidParameter, "simplex sizes must be >= 1");
    // A one-point simplex has no distances, so its scale is irrelevant.
    if (p == 1 && q == 1)
        return Rat(0);
    if (p == 1)
        return half(s);
    if (q == 1)
        return half(t);
    if (p == q)
        return half(abs_diff(t, s));
    if (p > q)
        return half(std::max(t, s - t));
    return half(std::max(s, t - s));
}

/// d_GH(t*Delta_m, M) for m >= #M:
///   max{t, diam M - t} / 2           if m > #M
///   max{t - eps(M), diam M - t} / 2  if m = #M (needs #M >= 2)
inline Rat gh_simplex_vs_finite(const Rat& t, int m, const FiniteMetricSpace& space) {
    if (t <= Rat(0))
        throw Error(ErrorCode::InvalidParameter, "t must be positive");
    if (m < 1)
        throw Error(ErrorCode::InvalidParameter, "m must be >= 1");
    int size = space.size();
    if (m < size)
        throw Error(ErrorCode::UnsupportedCase, "no closed form for m < #M");
    auto [diam, eps] = diam_eps(space);
    if (m > size)
        return half(std::max(t, diam - t));
    if (!eps)
        throw Error(ErrorCode::InvalidParameter, "m = #M needs #M >= 2");
    return half(std::max(t - *eps, diam - t));
}

/// d_GH({pt}, Y) = diam Y / 2.
inline Rat gh_one_point(const FiniteMetricSpace& y) { return half(diameter(y)); }

struct DeltaBounds {
    Rat lower; ///< (t - delta) / 2
    Rat upper; ///< t / 2
};

/// Two-sided bound on d_GH(t*Delta_p, X) for a delta-connected X with diam X <= t.
/// In any correspondence either two simplex vertices share a point of X, or
/// their preimages split X and delta-connectivity puts two of them within delta.
/// Needs p >= 2: a one-point simplex sits at distance diam X / 2 from X.
inline DeltaBounds gh_simplex_vs_delta_connected(const Rat& t, int p, const FiniteMetricSpace& x, const Rat& delta) {
    if (t <= Rat(0))
        throw Error(ErrorCode::InvalidParameter, "t must be positive");
    if (p < 2)
        throw Error(ErrorCode::InvalidParameter, "p must be >= 2");
    if (delta < Rat(0))
        throw Error(ErrorCode::InvalidParameter, "delta must be nonnegative");
    if (!is_delta_connected(x, delta))
        throw Error(ErrorCode::NotDeltaConnected, "space is not delta-connected for delta = " + to_string(delta));
    if (diameter(x) > t)
        throw Error(ErrorCode::DiameterExceedsT, "diam X exceeds t");
    Rat lower = half(t - delta);
    if (lower < Rat(0))
        lower = Rat(0);
    return {lower, half(t)};
}

} // namespace mslab

#endif // MSLAB_CLOSED_FORM_HPP
