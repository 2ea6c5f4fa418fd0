#include "synthetic.hpp"

#include <algorithm>

namespace geoden::testing {

const std::vector<std::string>& synthetic_country_pool() {
    static const std::vector<std::string> pool = {
        "JPN", "CHN", "TWN", "PHL", "VNM", "THA", "MMR", "KHM", "IDN", "MYS", "SGP", "IND", "LKA", "BGD",
        "PAK", "SAU", "YEM", "NGA", "SEN", "GHA", "CIV", "BFA", "KEN", "TZA", "SDN", "EGY", "ZAF", "MDG",
        "BRA", "COL", "VEN", "PER", "ARG", "MEX", "CUB", "PRI", "USA", "NIC", "AUS", "FJI", "PYF", "PNG",
        "FRA", "ITA"};
    return pool;
}

std::shared_ptr<const Snapshot> synthetic_snapshot(std::mt19937_64& rng, std::size_t report_count, DatasetSpan span) {
    const auto& tree = RegionTree::bundled();
    const auto& pool = synthetic_country_pool();
    std::uniform_int_distribution<std::size_t> pick_country(0, pool.size() - 1);
    std::uniform_int_distribution<int> pick_year(span.year_min, span.year_max);
    std::uniform_int_distribution<int> pick_mask(1, 15);
    std::uniform_real_distribution<double> pick_lat(-45.0, 45.0);
    std::uniform_real_distribution<double> pick_lng(-180.0, 180.0);
    std::bernoulli_distribution supplement(0.1);

    std::vector<Report> reports;
    reports.reserve(report_count);
    for (std::size_t i = 0; i < report_count; ++i) {
        Report r;
        r.id = static_cast<ReportId>(i);
        r.latitude = pick_lat(rng);
        r.longitude = pick_lng(rng);
        r.country = *tree.find_code(pool[pick_country(rng)]);
        r.year = pick_year(rng);
        r.serotypes = SerotypeSet::from_mask(static_cast<std::uint8_t>(pick_mask(rng)));
        r.source = supplement(rng) ? Source::supplement : Source::core;
        reports.push_back(r);
    }
    return build_snapshot(std::move(reports), tree, std::nullopt, span);
}

SelectionContext random_context(std::mt19937_64& rng, const Snapshot& snapshot) {
    const auto& tree = snapshot.regions();
    const auto span = snapshot.span();
    const auto& pool = synthetic_country_pool();
    SelectionContext ctx;

    std::uniform_int_distribution<int> region_count(1, 4);
    std::uniform_int_distribution<int> kind(0, 2);
    std::bernoulli_distribution hidden(0.15);
    const int n = region_count(rng);
    for (int i = 0; i < n; ++i) {
        Region r;
        switch (kind(rng)) {
            case 0: {
                std::uniform_int_distribution<std::size_t> pick(0, tree.continents().size() - 1);
                const auto& node = tree.continents()[pick(rng)];
                r = make_region(node.name, tree.codes_of(node));
                break;
            }
            case 1: {
                std::uniform_int_distribution<std::size_t> pick(0, tree.subcontinents().size() - 1);
                const auto& node = tree.subcontinents()[pick(rng)];
                r = make_region(node.name, tree.codes_of(node));
                break;
            }
            default: {
                std::uniform_int_distribution<std::size_t> how_many(1, 8);
                std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                std::vector<std::string> codes;
                const auto k = how_many(rng);
                for (std::size_t j = 0; j < k; ++j) codes.push_back(pool[pick(rng)]);
                r = make_region("custom", std::move(codes));
                break;
            }
        }
        r.name += " #" + std::to_string(i);
        r.visible = !hidden(rng);
        r.shade = i % 4;
        ctx.regions.push_back(std::move(r));
    }
    std::uniform_int_distribution<int> current(span.year_min, span.year_max);
    std::uniform_int_distribution<int> interval(1, span.length() + 5);
    ctx.window = resolve_window(current(rng), interval(rng), span);
    std::uniform_int_distribution<int> mask(0, 15);
    ctx.serotypes = SerotypeSet::from_mask(static_cast<std::uint8_t>(mask(rng)));
    return ctx;
}

}  // namespace geoden::testing
