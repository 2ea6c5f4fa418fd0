#include "equivalence.hpp"

#include <sstream>

#include "naive.hpp"

namespace geoden::reference {

namespace {

std::string describe(const SelectionContext& c) {
    std::ostringstream out;
    out << "window " << c.window.first_year << ".." << c.window.last_year << " serotypes " << to_string(c.serotypes)
        << " regions";
    for (const auto& r : c.regions) out << " [" << r.name << (r.visible ? "" : " hidden") << "]";
    return out.str();
}

}  // namespace

std::vector<std::string> compare_with_reference(const Snapshot& snapshot, const SelectionContext& context) {
    std::vector<std::string> errors;
    auto fail = [&](const std::string& what) { errors.push_back(what + " | " + describe(context)); };

    const auto slice = filter(snapshot, context);
    const auto ids = naive_filter(snapshot, context);
    if (slice.ids != ids) fail("filter");

    if (centroid(slice) != naive_centroid(snapshot, ids)) fail("centroid");
    if (serotype_centroids(slice) != naive_serotype_centroids(snapshot, ids, context.serotypes)) {
        fail("serotype_centroids");
    }

    const auto combos = enumerate_combinations();
    const auto co = cooccurrence(slice, combos);
    const auto naive_co = naive_cooccurrence(snapshot, ids, combos);
    for (std::size_t i = 0; i < combos.size(); ++i) {
        if (co.entries[i].exact_count != naive_co[i].first || co.entries[i].superset_count != naive_co[i].second) {
            fail("cooccurrence " + std::string(to_string(combos[i])));
        }
    }

    std::vector<Region> visible;
    for (const auto& r : context.regions) {
        if (r.visible) visible.push_back(r);
    }
    for (const auto& region : visible) {
        if (trajectory(snapshot, region, context.window, context.serotypes).vertices !=
            naive_trajectory(snapshot, region, context.window, context.serotypes, std::nullopt)) {
            fail("trajectory " + region.name);
        }
        for (auto s : kAllSerotypes) {
            if (trajectory(snapshot, region, context.window, context.serotypes, s).vertices !=
                naive_trajectory(snapshot, region, context.window, context.serotypes, s)) {
                fail("trajectory " + region.name + " " + std::string(to_string(s)));
            }
        }
    }

    if (!visible.empty() && !context.serotypes.empty()) {
        const auto m = timeline(snapshot, visible, context.serotypes, context.window);
        const auto cells = naive_timeline(snapshot, visible, context.serotypes, context.window);
        const auto totals = naive_timeline_totals(snapshot, visible, context.serotypes, context.window);
        const auto members = context.serotypes.members();
        for (std::size_t g = 0; g < visible.size(); ++g) {
            for (std::size_t k = 0; k < members.size(); ++k) {
                if (m.rows[g * members.size() + k].counts != cells[g][k]) {
                    fail("timeline " + visible[g].name + " " + std::string(to_string(members[k])));
                }
            }
            if (m.totals[g].counts != totals[g]) fail("timeline totals " + visible[g].name);
        }
    }
    return errors;
}

std::size_t check_trajectory_vertices(const Snapshot& snapshot, const SelectionContext& context,
                                      std::vector<std::string>& errors) {
    std::size_t checked = 0;
    for (const auto& region : context.regions) {
        if (!region.visible) continue;
        for (const auto& v : trajectory(snapshot, region, context.window, context.serotypes).vertices) {
            // independent: naive full scan restricted to the single year
            Region r = region;
            const SelectionContext year_only{{r}, YearWindow{v.year, 1, v.year, v.year}, context.serotypes};
            const auto ids = naive_filter(snapshot, year_only);
            const auto expected = naive_centroid(snapshot, ids);
            ++checked;
            if (!expected || *expected != v.point || ids.size() != v.count) {
                errors.push_back("vertex " + region.name + " " + std::to_string(v.year) + " | " + describe(context));
            }
        }
    }
    return checked;
}

}  // namespace geoden::reference
