#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "geoden/selection.hpp"

namespace geoden {

using CountryId = std::uint16_t;

struct CountryInfo {
    std::string code;  // ISO 3166-1 alpha-3
    std::string name;
    std::vector<std::string> aliases;
    int continent = 0;     // index into RegionTree::continents()
    int subcontinent = 0;  // index into RegionTree::subcontinents()
};

struct RegionNode {
    std::string name;
    std::vector<CountryId> countries;
};

/// Continent -> subcontinent -> country gazetteer. Every country sits under
/// exactly one subcontinent and one continent.
class RegionTree {
public:
    /// Parses the gazetteer document:
    /// {"continents":[{"name":..,"subcontinents":[{"name":..,"countries":[{"code","name","aliases"}]}]}]}
    /// Throws IngestError on schema violations or duplicate codes.
    static RegionTree from_json(std::string_view text);

    /// Gazetteer compiled into the library.
    static const RegionTree& bundled();

    std::size_t country_count() const { return countries_.size(); }
    const CountryInfo& country(CountryId id) const { return countries_.at(id); }
    const std::vector<RegionNode>& continents() const { return continents_; }
    const std::vector<RegionNode>& subcontinents() const { return subcontinents_; }

    std::optional<CountryId> find_code(std::string_view code) const;

    /// Case and diacritic-insensitive lookup over codes, names and aliases.
    std::optional<CountryId> normalize_country(std::string_view raw) const;

    /// A continent, subcontinent or single country addressed by name (or code).
    std::optional<Region> preset(std::string_view name) const;

    /// One region per continent, shades cycling through the ramp.
    std::vector<Region> default_regions() const;

    /// Country codes of a node, sorted.
    std::vector<std::string> codes_of(const RegionNode& node) const;

private:
    std::vector<CountryInfo> countries_;
    std::vector<RegionNode> continents_;
    std::vector<RegionNode> subcontinents_;
    std::unordered_map<std::string, CountryId> by_code_;
    std::unordered_map<std::string, CountryId> by_key_;
};

/// Lowercases, strips Latin diacritics and collapses punctuation/whitespace
/// runs to a single space: "Côte d'Ivoire" -> "cote d ivoire".
std::string fold_key(std::string_view text);

/// Bundled-gazetteer convenience: "viet nam" -> "VNM".
std::optional<std::string> normalize_country(std::string_view raw);

}  // namespace geoden
