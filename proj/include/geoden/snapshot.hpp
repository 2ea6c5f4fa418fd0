#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geoden/region_tree.hpp"
#include "geoden/report.hpp"
#include "geoden/selection.hpp"
#include "geoden/suitability.hpp"

namespace geoden {

struct SnapshotMeta {
    int year_min = 0;  // dataset span, from metadata
    int year_max = 0;
    std::size_t report_count = 0;
    std::size_t core_count = 0;
    std::size_t supplement_count = 0;
    std::optional<int> first_report_year;  // observed
    std::optional<int> last_report_year;
};

/// Immutable, indexed view over one loaded dataset. Report ids equal their
/// position in reports(); both indexes list ids in ascending order.
class Snapshot {
public:
    Snapshot(std::vector<Report> reports, RegionTree tree, std::optional<SuitabilityGrid> grid, DatasetSpan span);

    std::span<const Report> reports() const { return reports_; }
    const Report& report(ReportId id) const { return reports_.at(id); }
    const RegionTree& regions() const { return tree_; }
    const SnapshotMeta& meta() const { return meta_; }
    DatasetSpan span() const { return span_; }
    const SuitabilityGrid* grid() const { return grid_ ? &*grid_ : nullptr; }

    /// Ids of reports in `year`; empty outside the span.
    std::span<const ReportId> ids_in_year(int year) const;
    std::span<const ReportId> ids_in_country(CountryId country) const;

    std::map<int, std::vector<ReportId>> by_year() const;
    std::map<std::string, std::vector<ReportId>> by_country() const;

    const std::string& country_code(const Report& r) const { return tree_.country(r.country).code; }

private:
    std::vector<Report> reports_;
    RegionTree tree_;
    std::optional<SuitabilityGrid> grid_;
    DatasetSpan span_;
    SnapshotMeta meta_;
    std::vector<std::vector<ReportId>> year_index_;     // offset by span_.year_min
    std::vector<std::vector<ReportId>> country_index_;  // by CountryId
};

/// Renumbers ids to positions and builds the indexes.
/// Throws IngestError for an empty report list or reports outside the span.
std::shared_ptr<const Snapshot> build_snapshot(std::vector<Report> reports, RegionTree tree,
                                               std::optional<SuitabilityGrid> grid = std::nullopt,
                                               DatasetSpan span = {});

}  // namespace geoden
