#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "geoden/serotype.hpp"

namespace geoden {

/// Inclusive year range a dataset covers. Loaded from snapshot metadata.
struct DatasetSpan {
    int year_min = 1943;
    int year_max = 2020;

    int length() const { return year_max - year_min + 1; }
    bool contains(int year) const { return year >= year_min && year <= year_max; }
};

/// End-anchored window: [current_year - interval_length + 1, current_year],
/// clamped to the dataset span.
struct YearWindow {
    int current_year = 0;
    int interval_length = 1;
    int first_year = 0;
    int last_year = 0;

    bool contains(int year) const { return year >= first_year && year <= last_year; }
    int year_count() const { return last_year - first_year + 1; }
    std::vector<int> years() const;

    bool operator==(const YearWindow&) const = default;
};

/// Throws ValidationError when current_year is outside the span or
/// interval_length < 1. Intervals longer than the span are clamped.
YearWindow resolve_window(int current_year, int interval_length, DatasetSpan span = {});

/// Window covering the whole span.
YearWindow full_window(DatasetSpan span = {});

/// Four-step black to white ramp used to tell region centroids apart.
inline constexpr std::array<std::string_view, 4> kShadeRamp = {"#000000", "#555555", "#aaaaaa", "#ffffff"};

struct Region {
    std::string name;
    std::vector<std::string> countries;  // sorted, unique ISO 3166-1 alpha-3 codes
    bool visible = true;
    int shade = 0;

    bool operator==(const Region&) const = default;
};

/// Validates and canonicalizes (sorts, de-duplicates) the country list.
Region make_region(std::string name, std::vector<std::string> countries, int shade = 0, bool visible = true);

struct SelectionContext {
    std::vector<Region> regions;
    YearWindow window;
    SerotypeSet serotypes;
};

}  // namespace geoden
