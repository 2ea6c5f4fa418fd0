#include "geoden/analytics.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "geoden/error.hpp"

namespace geoden {

namespace {

// Below this many reports the loops run serially; thread start-up dominates.
constexpr std::size_t kParallelThreshold = 1 << 14;

struct Sum {
    double lat = 0.0;
    double lng = 0.0;
    std::size_t n = 0;

    void add(const Report& r) {
        lat += r.latitude;
        lng += r.longitude;
        ++n;
    }
    std::optional<GeoPoint> mean() const {
        if (n == 0) return std::nullopt;
        return GeoPoint{lat / static_cast<double>(n), lng / static_cast<double>(n)};
    }
};

bool in_mask(const std::vector<std::uint8_t>& mask, CountryId c) { return c < mask.size() && mask[c] != 0; }

}  // namespace

std::vector<std::uint8_t> region_mask(const Snapshot& snapshot, const Region& region) {
    std::vector<std::uint8_t> mask(snapshot.regions().country_count(), 0);
    for (std::size_t i = 0; i < region.countries.size(); ++i) {
        const auto id = snapshot.regions().find_code(region.countries[i]);
        if (!id) {
            throw ValidationError("unknown_country", "countries[" + std::to_string(i) + "]",
                                  "region '" + region.name + "': unknown country code '" + region.countries[i] + "'");
        }
        mask[*id] = 1;
    }
    return mask;
}

namespace {

ReportSlice filter_by_mask(const Snapshot& snapshot, const std::vector<std::uint8_t>& mask, const YearWindow& window,
                           SerotypeSet active) {
    ReportSlice slice{&snapshot, {}, active};
    if (active.empty()) return slice;
    const auto reports = snapshot.reports();
    const auto n = static_cast<std::ptrdiff_t>(reports.size());
    std::vector<std::uint8_t> keep(reports.size(), 0);
#pragma omp parallel for schedule(static) if (reports.size() > kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const Report& r = reports[static_cast<std::size_t>(i)];
        keep[static_cast<std::size_t>(i)] =
            window.contains(r.year) && r.serotypes.intersects(active) && in_mask(mask, r.country);
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) slice.ids.push_back(static_cast<ReportId>(i));
    }
    return slice;
}

}  // namespace

ReportSlice filter(const Snapshot& snapshot, const SelectionContext& context) {
    std::vector<std::uint8_t> mask(snapshot.regions().country_count(), 0);
    for (const auto& region : context.regions) {
        if (!region.visible) continue;
        const auto m = region_mask(snapshot, region);
        for (std::size_t c = 0; c < m.size(); ++c) mask[c] |= m[c];
    }
    return filter_by_mask(snapshot, mask, context.window, context.serotypes);
}

ReportSlice filter_region(const Snapshot& snapshot, const Region& region, const YearWindow& window,
                          SerotypeSet active) {
    return filter_by_mask(snapshot, region_mask(snapshot, region), window, active);
}

std::optional<GeoPoint> centroid(const ReportSlice& slice) {
    Sum sum;
    for (auto id : slice.ids) sum.add(slice.snapshot->report(id));
    return sum.mean();
}

std::map<Serotype, GeoPoint> serotype_centroids(const ReportSlice& slice) {
    std::array<Sum, 4> sums{};
    if (slice.snapshot != nullptr) {
        const auto reports = slice.snapshot->reports();
        // One serotype per iteration; each sum stays in ascending id order.
#pragma omp parallel for schedule(static, 1) if (slice.size() > kParallelThreshold)
        for (int s = 0; s < 4; ++s) {
            const auto serotype = static_cast<Serotype>(s);
            if (!slice.active.contains(serotype)) continue;
            for (auto id : slice.ids) {
                const Report& r = reports[id];
                if (r.serotypes.contains(serotype)) sums[static_cast<std::size_t>(s)].add(r);
            }
        }
    }
    std::map<Serotype, GeoPoint> out;
    for (auto s : kAllSerotypes) {
        if (auto p = sums[static_cast<std::size_t>(index_of(s))].mean()) out.emplace(s, *p);
    }
    return out;
}

Trajectory trajectory(const Snapshot& snapshot, const Region& region, const YearWindow& window, SerotypeSet active,
                      std::optional<Serotype> serotype) {
    Trajectory out{region.name, serotype, {}};
    const auto mask = region_mask(snapshot, region);
    const SerotypeSet wanted = serotype ? (active & SerotypeSet{*serotype}) : active;
    if (wanted.empty()) return out;

    const int years = window.year_count();
    std::vector<Sum> per_year(static_cast<std::size_t>(years));
    const auto reports = snapshot.reports();
#pragma omp parallel for schedule(dynamic, 4) if (reports.size() > kParallelThreshold)
    for (int k = 0; k < years; ++k) {
        Sum& sum = per_year[static_cast<std::size_t>(k)];
        for (auto id : snapshot.ids_in_year(window.first_year + k)) {
            const Report& r = reports[id];
            if (!in_mask(mask, r.country)) continue;
            if (serotype ? r.serotypes.contains(*serotype) : r.serotypes.intersects(active)) sum.add(r);
        }
    }
    for (int k = 0; k < years; ++k) {
        const Sum& sum = per_year[static_cast<std::size_t>(k)];
        if (auto p = sum.mean()) out.vertices.push_back({window.first_year + k, *p, sum.n});
    }
    return out;
}

CooccurrenceResult cooccurrence(const ReportSlice& slice, std::span<const SerotypeSet> combinations) {
    for (std::size_t i = 0; i < combinations.size(); ++i) {
        if (combinations[i].empty()) {
            throw ValidationError("empty_combination", "combinations[" + std::to_string(i) + "]",
                                  "serotype combination must not be empty");
        }
    }
    // Histogram over the 16 masks in one pass; exact and superset counts both derive from it.
    std::size_t hist[16] = {};
    if (slice.snapshot != nullptr) {
        const auto reports = slice.snapshot->reports();
        const auto n = static_cast<std::ptrdiff_t>(slice.ids.size());
#pragma omp parallel for schedule(static) reduction(+ : hist[:16]) if (slice.size() > kParallelThreshold)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            ++hist[reports[slice.ids[static_cast<std::size_t>(i)]].serotypes.mask()];
        }
    }
    CooccurrenceResult result;
    result.slice_size = slice.size();
    const double denom = slice.empty() ? 1.0 : static_cast<double>(slice.size());
    for (auto combo : combinations) {
        CooccurrenceEntry e;
        e.combination = combo;
        e.exact_count = hist[combo.mask()];
        for (int m = 1; m < 16; ++m) {
            if (decode_serotype_set(m).contains_all(combo)) e.superset_count += hist[m];
        }
        e.proportion = slice.empty() ? 0.0 : static_cast<double>(e.exact_count) / denom;
        e.superset_proportion = slice.empty() ? 0.0 : static_cast<double>(e.superset_count) / denom;
        result.entries.push_back(e);
    }
    return result;
}

std::uint32_t TimelineMatrix::cell(std::size_t region_index, Serotype s, int year) const {
    if (years.empty() || year < years.front() || year > years.back()) return 0;
    const auto pos = std::find(serotypes.begin(), serotypes.end(), s);
    if (pos == serotypes.end()) return 0;
    const auto row = region_index * serotypes.size() + static_cast<std::size_t>(pos - serotypes.begin());
    return rows.at(row).counts[static_cast<std::size_t>(year - years.front())];
}

TimelineMatrix timeline(const Snapshot& snapshot, std::span<const Region> regions, SerotypeSet serotypes,
                        const YearWindow& window) {
    if (regions.empty()) throw ValidationError("invalid", "regions", "timeline needs at least one region");
    if (serotypes.empty()) throw ValidationError("invalid", "serotypes", "timeline needs at least one serotype");

    TimelineMatrix m;
    m.years = window.years();
    m.serotypes = serotypes.members();
    const auto& members = m.serotypes;
    const std::size_t n_years = m.years.size();
    std::vector<std::vector<std::uint8_t>> masks;
    masks.reserve(regions.size());
    for (const auto& region : regions) {
        masks.push_back(region_mask(snapshot, region));
        m.totals.push_back({region.name, std::vector<std::uint32_t>(n_years, 0)});
        for (auto s : members) m.rows.push_back({region.name, s, std::vector<std::uint32_t>(n_years, 0)});
    }

    // Columns are independent, so each year is filled by exactly one thread.
    const auto reports = snapshot.reports();
    const auto cols = static_cast<std::ptrdiff_t>(n_years);
#pragma omp parallel for schedule(dynamic, 4) if (reports.size() > kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < cols; ++k) {
        const auto col = static_cast<std::size_t>(k);
        for (auto id : snapshot.ids_in_year(m.years[col])) {
            const Report& r = reports[id];
            if (!r.serotypes.intersects(serotypes)) continue;
            for (std::size_t g = 0; g < masks.size(); ++g) {
                if (!in_mask(masks[g], r.country)) continue;
                ++m.totals[g].counts[col];
                for (std::size_t j = 0; j < members.size(); ++j) {
                    if (r.serotypes.contains(members[j])) ++m.rows[g * members.size() + j].counts[col];
                }
            }
        }
    }
    return m;
}

void GlyphSizeTable::validate() const {
    for (std::size_t i = 0; i < radius_px.size(); ++i) {
        if (!(radius_px[i] > 0.0) || (i > 0 && !(radius_px[i] > radius_px[i - 1]))) {
            throw ValidationError("invalid", "glyph_sizes", "glyph radii must be positive and strictly increasing");
        }
    }
}

GlyphSpec glyph_spec(const Report& report, SerotypeSet active, const GlyphSizeTable& sizes) {
    const SerotypeSet shown = report.serotypes & active;
    if (shown.empty()) {
        throw ValidationError("filtered_out", "serotypes",
                              "report " + std::to_string(report.id) + " has no active serotype");
    }
    GlyphSpec g;
    g.center = {report.latitude, report.longitude};
    g.sections = shown.members();
    g.section_angle = 360.0 / static_cast<double>(g.sections.size());
    g.radius = sizes.radius_px[g.sections.size() - 1];
    return g;
}

}  // namespace geoden
