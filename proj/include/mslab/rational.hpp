#ifndef MSLAB_RATIONAL_HPP
#define MSLAB_RATIONAL_HPP

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "errors.hpp"

namespace mslab {

/// Exact rational scalar. boost::rational keeps the value reduced with a
/// positive denominator, which is the canonical form required everywhere.
using Rat = boost::rational<std::int64_t>;

// Compare against Rat(0), not a bare int literal: boost 1.74's mixed-type
// operator==(rational<long>, int) recurses without end.

inline Rat abs_diff(const Rat& a, const Rat& b) { return a < b ? b - a : a - b; }

inline Rat half(const Rat& a) { return a / Rat(2); }

namespace detail {

inline std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    if (text.empty())
        throw Error(ErrorCode::ParseError, "empty integer in '" + std::string(whole) + "'");
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+')
        throw Error(ErrorCode::ParseError, "leading '+' in '" + std::string(whole) + "'");
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(whole) + "'");
    return value;
}

} // namespace detail

/// Accepts "n" or "p/q" with q > 0 and gcd(|p|, q) = 1. Non-reduced input
/// such as "2/4" is rejected so that reading and writing round-trips exactly.
inline Rat parse_rat(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rat(detail::parse_int(text, text));
    std::int64_t num = detail::parse_int(text.substr(0, slash), text);
    std::int64_t den = detail::parse_int(text.substr(slash + 1), text);
    if (den <= 0)
        throw Error(ErrorCode::ParseError, "denominator must be positive: '" + std::string(text) + "'");
    if (std::gcd(num < 0 ? -num : num, den) != 1)
        throw Error(ErrorCode::ParseError, "not in lowest terms: '" + std::string(text) + "'");
    return Rat(num, den);
}

/// Always "p/q", including integers ("3/1", "0/1").
inline std::string to_string(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// "n" for integers, "p/q" otherwise.
inline std::string to_compact_string(const Rat& r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return to_string(r);
}

} // namespace mslab

#endif // MSLAB_RATIONAL_HPP
