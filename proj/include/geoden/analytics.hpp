#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geoden/report.hpp"
#include "geoden/selection.hpp"
#include "geoden/serotype.hpp"
#include "geoden/snapshot.hpp"

namespace geoden {

/// Ids (ascending) of the reports matching a selection, plus the active
/// serotype filter they were selected under.
struct ReportSlice {
    const Snapshot* snapshot = nullptr;
    std::vector<ReportId> ids;
    SerotypeSet active;

    std::size_t size() const { return ids.size(); }
    bool empty() const { return ids.empty(); }
};

/// Per-country membership flags for one region, resolved against a snapshot's
/// gazetteer. Throws ValidationError("unknown_country") for codes it lacks.
std::vector<std::uint8_t> region_mask(const Snapshot& snapshot, const Region& region);

/// Reports whose country is in some visible region, whose year lies in the
/// window and whose serotypes intersect the active set.
ReportSlice filter(const Snapshot& snapshot, const SelectionContext& context);

/// Same predicates for a single region, visible or not.
ReportSlice filter_region(const Snapshot& snapshot, const Region& region, const YearWindow& window,
                          SerotypeSet active);

/// Arithmetic mean of latitudes and longitudes, summed in ascending id order.
/// Plain degree averaging: not meaningful across the antimeridian.
std::optional<GeoPoint> centroid(const ReportSlice& slice);

/// Centroid of the reports containing each active serotype; serotypes with no
/// reports are omitted.
std::map<Serotype, GeoPoint> serotype_centroids(const ReportSlice& slice);

struct TrajectoryVertex {
    int year = 0;
    GeoPoint point;
    std::size_t count = 0;

    bool operator==(const TrajectoryVertex&) const = default;
};

struct Trajectory {
    std::string region;
    std::optional<Serotype> serotype;  // none = all active serotypes
    std::vector<TrajectoryVertex> vertices;
};

/// One vertex per window year with at least one matching report, chronological.
/// With a serotype given, only reports containing it count, and only when it is active.
Trajectory trajectory(const Snapshot& snapshot, const Region& region, const YearWindow& window, SerotypeSet active,
                      std::optional<Serotype> serotype = std::nullopt);

struct CooccurrenceEntry {
    SerotypeSet combination;
    std::size_t exact_count = 0;     // reports whose set equals the combination
    std::size_t superset_count = 0;  // reports whose set contains it
    double proportion = 0.0;         // exact_count / slice size
    double superset_proportion = 0.0;
};

struct CooccurrenceResult {
    std::size_t slice_size = 0;
    std::vector<CooccurrenceEntry> entries;
};

/// Throws ValidationError for an empty combination.
CooccurrenceResult cooccurrence(const ReportSlice& slice, std::span<const SerotypeSet> combinations);

struct TimelineRow {
    std::string region;
    Serotype serotype = Serotype::DENV1;
    std::vector<std::uint32_t> counts;  // one per window year
};

struct TimelineTotals {
    std::string region;
    std::vector<std::uint32_t> counts;  // distinct reports per year
};

/// Dense region x serotype x year report counts. A multi-serotype report
/// counts once in every row of a serotype it contains.
struct TimelineMatrix {
    std::vector<int> years;
    std::vector<Serotype> serotypes;     // canonical order
    std::vector<TimelineRow> rows;       // region-major, serotypes in canonical order
    std::vector<TimelineTotals> totals;  // one per region

    std::uint32_t cell(std::size_t region_index, Serotype s, int year) const;
};

/// Throws ValidationError without at least one region and one serotype.
TimelineMatrix timeline(const Snapshot& snapshot, std::span<const Region> regions, SerotypeSet serotypes,
                        const YearWindow& window);

/// Glyph radius in pixels by number of drawn sections (1..4). Ordinal, not proportional.
struct GlyphSizeTable {
    std::array<double, 4> radius_px = {6.0, 8.0, 10.0, 12.0};

    /// Throws ValidationError unless radii are positive and strictly increasing.
    void validate() const;
};

struct GlyphSpec {
    GeoPoint center;
    std::vector<Serotype> sections;  // report serotypes within the active set, canonical order
    double section_angle = 0.0;      // degrees
    double radius = 0.0;
};

/// Throws ValidationError when the report shares no serotype with the active set.
GlyphSpec glyph_spec(const Report& report, SerotypeSet active, const GlyphSizeTable& sizes = {});

}  // namespace geoden
