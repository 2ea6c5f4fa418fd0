#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "geoden/analytics.hpp"
#include "geoden/error.hpp"
#include "geoden/selection.hpp"
#include "geoden/snapshot.hpp"

namespace geoden {

enum class QueryKind { reports, centroids, trajectories, cooccurrence, timeline };

std::optional<QueryKind> parse_query_kind(std::string_view name);
std::string_view to_string(QueryKind kind);

enum class CentroidMode { all, per_serotype, both };

/// Which trajectories to draw per region: all active serotypes pooled, one per
/// active serotype, or a single serotype.
struct TrajectorySelection {
    enum class Kind { pooled, each, single } kind = Kind::pooled;
    Serotype serotype = Serotype::DENV1;  // for single
};

/// A validated query body. Regions keep their visibility; only visible ones are queried.
struct QueryRequest {
    std::vector<Region> regions;
    YearWindow window;
    SerotypeSet serotypes = SerotypeSet::all();
    std::vector<SerotypeSet> combinations;
    CentroidMode centroid_mode = CentroidMode::both;
    TrajectorySelection trajectory;
    GlyphSizeTable glyph_sizes;

    SelectionContext context() const { return {regions, window, serotypes}; }
    std::vector<Region> visible_regions() const;
};

/// Resolves names of stored custom regions; consulted before the gazetteer presets.
using RegionLookup = std::function<std::optional<Region>(std::string_view)>;

/// Validates a JSON query body against a snapshot. Throws ValidationError
/// carrying the offending field path. Schema:
///   regions:      [ "Asia" | {"name", "countries"?, "visible"?, "shade"?} ]  (default: continents)
///   window:       {"current_year", "interval_length"}                        (default: full span)
///   serotypes:    ["DENV1", "d2", ...]                                         (default: all)
///   combinations: "all" | [["DENV1","DENV2"], "DENV3", ...]                    (default: all 15)
///   centroid_mode: "all" | "per_serotype" | "both"
///   trajectory_serotype: "all" | "each" | "DENV1".."DENV4"
///   glyph_sizes:  [r1, r2, r3, r4]
QueryRequest parse_query_request(const nlohmann::json& body, const Snapshot& snapshot,
                                 const RegionLookup& custom = {});

/// 422 for references to unknown countries or regions, 400 for everything else.
int http_status(const ValidationError& error);

nlohmann::json error_body(std::string_view code, std::string_view field, std::string_view message);

nlohmann::json window_json(const YearWindow& window);
nlohmann::json meta_payload(const Snapshot& snapshot);

nlohmann::json reports_payload(const Snapshot& snapshot, const QueryRequest& request);
nlohmann::json centroids_payload(const Snapshot& snapshot, const QueryRequest& request);
nlohmann::json trajectories_payload(const Snapshot& snapshot, const QueryRequest& request);
nlohmann::json cooccurrence_payload(const Snapshot& snapshot, const QueryRequest& request);
nlohmann::json timeline_payload(const Snapshot& snapshot, const QueryRequest& request);

nlohmann::json run_query(QueryKind kind, const Snapshot& snapshot, const QueryRequest& request);

/// Spreadsheet form of a payload: one row per entity (per entity and year for
/// timelines and trajectories). Deterministic for a given payload.
std::string payload_to_csv(QueryKind kind, const nlohmann::json& payload);

struct BoundingBox {
    double min_lng = 0.0;
    double min_lat = 0.0;
    double max_lng = 0.0;
    double max_lat = 0.0;
};

/// "minLng,minLat,maxLng,maxLat". Throws ValidationError(field "bbox").
BoundingBox parse_bbox(std::string_view text);

/// Class indices (null for nodata/outside) sampled at output cell centres, rows north to south.
nlohmann::json suitability_payload(const SuitabilityGrid& grid, const BoundingBox& bbox, double resolution);

}  // namespace geoden
