#include "naive.hpp"

#include <algorithm>

namespace geoden::reference {

bool in_region(const Snapshot& snapshot, const Report& report, const Region& region) {
    const std::string& code = snapshot.country_code(report);
    return std::find(region.countries.begin(), region.countries.end(), code) != region.countries.end();
}

std::vector<ReportId> naive_filter(const Snapshot& snapshot, const SelectionContext& context) {
    std::vector<ReportId> ids;
    for (const Report& r : snapshot.reports()) {
        bool region_ok = false;
        for (const auto& region : context.regions) {
            if (region.visible && in_region(snapshot, r, region)) region_ok = true;
        }
        const bool year_ok = r.year >= context.window.first_year && r.year <= context.window.last_year;
        bool serotype_ok = false;
        for (auto s : kAllSerotypes) {
            if (r.serotypes.contains(s) && context.serotypes.contains(s)) serotype_ok = true;
        }
        if (region_ok && year_ok && serotype_ok) ids.push_back(r.id);
    }
    return ids;
}

std::optional<GeoPoint> naive_centroid(const Snapshot& snapshot, const std::vector<ReportId>& ids) {
    if (ids.empty()) return std::nullopt;
    double lat = 0.0;
    double lng = 0.0;
    for (auto id : ids) {
        lat += snapshot.reports()[id].latitude;
        lng += snapshot.reports()[id].longitude;
    }
    return GeoPoint{lat / static_cast<double>(ids.size()), lng / static_cast<double>(ids.size())};
}

std::map<Serotype, GeoPoint> naive_serotype_centroids(const Snapshot& snapshot, const std::vector<ReportId>& ids,
                                                      SerotypeSet active) {
    std::map<Serotype, GeoPoint> out;
    for (auto s : kAllSerotypes) {
        if (!active.contains(s)) continue;
        std::vector<ReportId> sub;
        for (auto id : ids) {
            if (snapshot.reports()[id].serotypes.contains(s)) sub.push_back(id);
        }
        if (auto c = naive_centroid(snapshot, sub)) out.emplace(s, *c);
    }
    return out;
}

std::vector<TrajectoryVertex> naive_trajectory(const Snapshot& snapshot, const Region& region,
                                               const YearWindow& window, SerotypeSet active,
                                               std::optional<Serotype> serotype) {
    std::vector<TrajectoryVertex> out;
    Region visible = region;
    visible.visible = true;
    for (int y = window.first_year; y <= window.last_year; ++y) {
        const SelectionContext year_only{{visible}, YearWindow{y, 1, y, y}, active};
        auto ids = naive_filter(snapshot, year_only);
        if (serotype) {
            std::vector<ReportId> sub;
            if (active.contains(*serotype)) {
                for (auto id : ids) {
                    if (snapshot.reports()[id].serotypes.contains(*serotype)) sub.push_back(id);
                }
            }
            ids = std::move(sub);
        }
        if (auto c = naive_centroid(snapshot, ids)) out.push_back({y, *c, ids.size()});
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> naive_cooccurrence(const Snapshot& snapshot,
                                                                    const std::vector<ReportId>& ids,
                                                                    const std::vector<SerotypeSet>& combinations) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& combo : combinations) {
        std::size_t exact = 0;
        std::size_t superset = 0;
        for (auto id : ids) {
            const auto members = snapshot.reports()[id].serotypes.members();
            const auto wanted = combo.members();
            const bool contains_all = std::includes(members.begin(), members.end(), wanted.begin(), wanted.end());
            if (contains_all) ++superset;
            if (contains_all && members.size() == wanted.size()) ++exact;
        }
        out.emplace_back(exact, superset);
    }
    return out;
}

NaiveTimeline naive_timeline(const Snapshot& snapshot, const std::vector<Region>& regions, SerotypeSet serotypes,
                             const YearWindow& window) {
    NaiveTimeline out;
    const auto members = serotypes.members();
    for (const auto& region : regions) {
        std::vector<std::vector<std::uint32_t>> rows;
        for (auto s : members) {
            std::vector<std::uint32_t> counts;
            for (int y = window.first_year; y <= window.last_year; ++y) {
                std::uint32_t n = 0;
                for (const Report& r : snapshot.reports()) {
                    if (r.year == y && r.serotypes.contains(s) && in_region(snapshot, r, region)) ++n;
                }
                counts.push_back(n);
            }
            rows.push_back(std::move(counts));
        }
        out.push_back(std::move(rows));
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> naive_timeline_totals(const Snapshot& snapshot,
                                                              const std::vector<Region>& regions,
                                                              SerotypeSet serotypes, const YearWindow& window) {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& region : regions) {
        std::vector<std::uint32_t> counts;
        for (int y = window.first_year; y <= window.last_year; ++y) {
            std::uint32_t n = 0;
            for (const Report& r : snapshot.reports()) {
                if (r.year == y && r.serotypes.intersects(serotypes) && in_region(snapshot, r, region)) ++n;
            }
            counts.push_back(n);
        }
        out.push_back(std::move(counts));
    }
    return out;
}

}  // namespace geoden::reference
