#include "geoden/snapshot.hpp"

#include <algorithm>

#include "geoden/error.hpp"

namespace geoden {

Snapshot::Snapshot(std::vector<Report> reports, RegionTree tree, std::optional<SuitabilityGrid> grid,
                   DatasetSpan span)
    : reports_(std::move(reports)), tree_(std::move(tree)), grid_(std::move(grid)), span_(span) {
    year_index_.resize(static_cast<std::size_t>(span_.length()));
    country_index_.resize(tree_.country_count());
    meta_.year_min = span_.year_min;
    meta_.year_max = span_.year_max;
    meta_.report_count = reports_.size();
    for (std::size_t i = 0; i < reports_.size(); ++i) {
        auto& r = reports_[i];
        r.id = static_cast<ReportId>(i);
        if (!span_.contains(r.year)) {
            throw IngestError("report " + std::to_string(i) + " year " + std::to_string(r.year) + " outside span");
        }
        if (r.country >= tree_.country_count()) {
            throw IngestError("report " + std::to_string(i) + " has unknown country id");
        }
        if (r.serotypes.empty()) throw IngestError("report " + std::to_string(i) + " has no serotype");
        year_index_[static_cast<std::size_t>(r.year - span_.year_min)].push_back(r.id);
        country_index_[r.country].push_back(r.id);
        (r.source == Source::core ? meta_.core_count : meta_.supplement_count) += 1;
        meta_.first_report_year = std::min(meta_.first_report_year.value_or(r.year), r.year);
        meta_.last_report_year = std::max(meta_.last_report_year.value_or(r.year), r.year);
    }
}

std::span<const ReportId> Snapshot::ids_in_year(int year) const {
    if (!span_.contains(year)) return {};
    return year_index_[static_cast<std::size_t>(year - span_.year_min)];
}

std::span<const ReportId> Snapshot::ids_in_country(CountryId country) const {
    if (country >= country_index_.size()) return {};
    return country_index_[country];
}

std::map<int, std::vector<ReportId>> Snapshot::by_year() const {
    std::map<int, std::vector<ReportId>> out;
    for (int y = span_.year_min; y <= span_.year_max; ++y) {
        const auto ids = ids_in_year(y);
        if (!ids.empty()) out.emplace(y, std::vector<ReportId>(ids.begin(), ids.end()));
    }
    return out;
}

std::map<std::string, std::vector<ReportId>> Snapshot::by_country() const {
    std::map<std::string, std::vector<ReportId>> out;
    for (std::size_t c = 0; c < country_index_.size(); ++c) {
        if (!country_index_[c].empty()) out.emplace(tree_.country(static_cast<CountryId>(c)).code, country_index_[c]);
    }
    return out;
}

std::string_view to_string(Source source) { return source == Source::core ? "core" : "supplement"; }

std::shared_ptr<const Snapshot> build_snapshot(std::vector<Report> reports, RegionTree tree,
                                               std::optional<SuitabilityGrid> grid, DatasetSpan span) {
    if (reports.empty()) throw IngestError("snapshot: no reports to explore");
    return std::make_shared<const Snapshot>(std::move(reports), std::move(tree), std::move(grid), span);
}

}  // namespace geoden
