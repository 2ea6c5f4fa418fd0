#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geoden {

enum class Serotype : std::uint8_t { DENV1 = 0, DENV2 = 1, DENV3 = 2, DENV4 = 3 };

inline constexpr std::array<Serotype, 4> kAllSerotypes = {
    Serotype::DENV1, Serotype::DENV2, Serotype::DENV3, Serotype::DENV4};

constexpr int index_of(Serotype s) { return static_cast<int>(s); }

std::string_view to_string(Serotype s);

/// Accepts "DENV1".."DENV4", "d1".."d4" or "1".."4", case-insensitive.
std::optional<Serotype> parse_serotype(std::string_view text);

/// Subset of {DENV1..DENV4}. Bit i is set iff DENV(i+1) is present.
class SerotypeSet {
public:
    constexpr SerotypeSet() = default;
    constexpr SerotypeSet(std::initializer_list<Serotype> members) {
        for (auto s : members) mask_ |= bit(s);
    }

    static constexpr SerotypeSet from_mask(std::uint8_t mask) {
        SerotypeSet set;
        set.mask_ = static_cast<std::uint8_t>(mask & 0x0F);
        return set;
    }
    static constexpr SerotypeSet all() { return from_mask(0x0F); }

    constexpr std::uint8_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool contains(Serotype s) const { return (mask_ & bit(s)) != 0; }
    constexpr bool contains_all(SerotypeSet other) const { return (mask_ & other.mask_) == other.mask_; }
    constexpr bool intersects(SerotypeSet other) const { return (mask_ & other.mask_) != 0; }
    constexpr int size() const {
        return ((mask_ >> 0) & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1) + ((mask_ >> 3) & 1);
    }

    constexpr SerotypeSet operator&(SerotypeSet other) const { return from_mask(mask_ & other.mask_); }
    constexpr SerotypeSet operator|(SerotypeSet other) const { return from_mask(mask_ | other.mask_); }
    SerotypeSet& insert(Serotype s) {
        mask_ |= bit(s);
        return *this;
    }

    /// Members in canonical order DENV1 < DENV2 < DENV3 < DENV4.
    std::vector<Serotype> members() const;

    constexpr bool operator==(const SerotypeSet&) const = default;

private:
    static constexpr std::uint8_t bit(Serotype s) { return static_cast<std::uint8_t>(1u << index_of(s)); }
    std::uint8_t mask_ = 0;
};

constexpr int encode_serotype_set(SerotypeSet set) { return set.mask(); }
constexpr SerotypeSet decode_serotype_set(int mask) { return SerotypeSet::from_mask(static_cast<std::uint8_t>(mask)); }

/// All 15 non-empty subsets ordered by (cardinality, mask).
const std::vector<SerotypeSet>& enumerate_combinations();

/// "DENV1+DENV3"; "none" for the empty set.
std::string to_string(SerotypeSet set);

/// Parses a comma separated serotype list ("d1,d2", "DENV3"). Empty text is the empty set.
std::optional<SerotypeSet> parse_serotype_list(std::string_view text);

}  // namespace geoden
