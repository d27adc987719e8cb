#ifndef MSLAB_SUBSET_HPP
#define MSLAB_SUBSET_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mslab {

/// Largest ambient size a bitmask subset can address.
inline constexpr int kMaxSubsetAmbient = 63;

/// Nonempty subset of the point indices {0, ..., ambient_size - 1}, stored as a bitmask.
class Subset {
public:
    static Subset from_bits(std::uint64_t bits, int ambient_size) {
        check_ambient(ambient_size);
        if (bits == 0)
            throw Error(ErrorCode::EmptySubset, "subset bitmask is zero");
        if (ambient_size < 64 && (bits >> ambient_size) != 0)
            throw Error(ErrorCode::InvalidParameter,
                        "bitmask " + std::to_string(bits) + " exceeds ambient size " + std::to_string(ambient_size));
        return Subset(bits, ambient_size);
    }

    static Subset from_indices(std::span<const int> indices, int ambient_size) {
        check_ambient(ambient_size);
        std::uint64_t bits = 0;
        for (int i : indices) {
            if (i < 0 || i >= ambient_size)
                throw Error(ErrorCode::InvalidParameter, "index " + std::to_string(i) + " out of range");
            bits |= std::uint64_t{1} << i;
        }
        return from_bits(bits, ambient_size);
    }

    static Subset from_indices(std::initializer_list<int> indices, int ambient_size) {
        return from_indices(std::span<const int>(indices.begin(), indices.size()), ambient_size);
    }

    static Subset full(int ambient_size) {
        check_ambient(ambient_size);
        if (ambient_size == 0)
            throw Error(ErrorCode::EmptySubset, "ambient space is empty");
        return Subset(low_bits(ambient_size), ambient_size);
    }

    std::uint64_t bits() const noexcept { return bits_; }
    int ambient_size() const noexcept { return ambient_size_; }
    int size() const noexcept { return std::popcount(bits_); }
    bool contains(int i) const noexcept { return i >= 0 && i < 64 && ((bits_ >> i) & 1U) != 0; }
    bool is_subset_of(const Subset& other) const noexcept { return (bits_ & ~other.bits_) == 0; }

    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1)
            out.push_back(std::countr_zero(rest));
        return out;
    }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int i : indices()) {
            if (!first)
                out += ",";
            out += std::to_string(i);
            first = false;
        }
        return out + "}";
    }

    friend bool operator==(const Subset&, const Subset&) = default;

    static std::uint64_t low_bits(int n) noexcept {
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }

private:
    Subset(std::uint64_t bits, int ambient_size) : bits_(bits), ambient_size_(ambient_size) {}

    static void check_ambient(int ambient_size) {
        if (ambient_size < 0 || ambient_size > kMaxSubsetAmbient)
            throw Error(ErrorCode::SizeCapExceeded,
                        "subsets support at most " + std::to_string(kMaxSubsetAmbient) + " ambient points");
    }

    std::uint64_t bits_;
    int ambient_size_;
};

/// Calls fn(sub) for every nonempty submask of mask, in ascending numeric order.
template <typename Fn>
void for_each_nonempty_submask(std::uint64_t mask, Fn&& fn) {
    // Ascending enumeration: sub = (sub - mask) & mask steps through submasks upward.
    std::uint64_t sub = 0;
    do {
        sub = (sub - mask) & mask;
        if (sub != 0)
            fn(sub);
    } while (sub != 0 && sub != mask);
}

} // namespace mslab

#endif // MSLAB_SUBSET_HPP
