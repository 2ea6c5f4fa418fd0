#pragma once

#include <cstdint>
#include <string_view>

#include "geoden/region_tree.hpp"
#include "geoden/serotype.hpp"

namespace geoden {

using ReportId = std::uint32_t;

enum class Source : std::uint8_t { core, supplement };

std::string_view to_string(Source source);

/// One geocoded, dated observation of at least one serotype.
struct Report {
    ReportId id = 0;
    double latitude = 0.0;
    double longitude = 0.0;
    CountryId country = 0;
    int year = 0;
    SerotypeSet serotypes;
    Source source = Source::core;

    int serotype_count() const { return serotypes.size(); }
};

struct GeoPoint {
    double latitude = 0.0;
    double longitude = 0.0;

    bool operator==(const GeoPoint&) const = default;
};

}  // namespace geoden
