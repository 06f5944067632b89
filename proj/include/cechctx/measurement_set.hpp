#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cechctx {

using MeasurementId = std::size_t;

inline constexpr std::size_t kMaxMeasurements = 64;

/// A subset of the measurement set X, as a bitmask over global measurement
/// indices. Iteration always yields members in global order.
class MeasurementSet {
public:
    constexpr MeasurementSet() = default;
    constexpr explicit MeasurementSet(std::uint64_t bits) : bits_(bits) {}

    static MeasurementSet of(const std::vector<MeasurementId>& ids) {
        MeasurementSet s;
        for (auto id : ids) s.insert(id);
        return s;
    }

    static constexpr MeasurementSet first_n(std::size_t n) {
        return MeasurementSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
    }

    constexpr void insert(MeasurementId id) { bits_ |= std::uint64_t{1} << id; }
    constexpr bool contains(MeasurementId id) const { return (bits_ >> id) & 1U; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr bool is_subset_of(MeasurementSet other) const { return (bits_ & ~other.bits_) == 0; }

    /// Position of `id` among the members (rank in global order). `id` must be a member.
    constexpr std::size_t rank(MeasurementId id) const {
        return static_cast<std::size_t>(std::popcount(bits_ & ((std::uint64_t{1} << id) - 1)));
    }

    std::vector<MeasurementId> members() const {
        std::vector<MeasurementId> out;
        out.reserve(size());
        for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<MeasurementId>(std::countr_zero(b)));
        return out;
    }

    friend constexpr MeasurementSet operator&(MeasurementSet a, MeasurementSet b) { return MeasurementSet(a.bits_ & b.bits_); }
    friend constexpr MeasurementSet operator|(MeasurementSet a, MeasurementSet b) { return MeasurementSet(a.bits_ | b.bits_); }
    friend constexpr bool operator==(MeasurementSet, MeasurementSet) = default;
    friend constexpr auto operator<=>(MeasurementSet, MeasurementSet) = default;

private:
    std::uint64_t bits_ = 0;
};

}  // namespace cechctx
