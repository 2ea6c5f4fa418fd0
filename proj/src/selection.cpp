#include "geoden/selection.hpp"

#include <algorithm>

#include "geoden/error.hpp"

namespace geoden {

std::vector<int> YearWindow::years() const {
    std::vector<int> out;
    for (int y = first_year; y <= last_year; ++y) out.push_back(y);
    return out;
}

YearWindow resolve_window(int current_year, int interval_length, DatasetSpan span) {
    if (!span.contains(current_year)) {
        throw ValidationError("out_of_range", "window.current_year",
                              "current_year " + std::to_string(current_year) + " outside [" +
                                  std::to_string(span.year_min) + ", " + std::to_string(span.year_max) + "]");
    }
    if (interval_length < 1) {
        throw ValidationError("out_of_range", "window.interval_length",
                              "interval_length must be >= 1, got " + std::to_string(interval_length));
    }
    YearWindow w;
    w.current_year = current_year;
    w.interval_length = std::min(interval_length, span.length());
    w.last_year = current_year;
    w.first_year = std::max(span.year_min, current_year - w.interval_length + 1);
    return w;
}

YearWindow full_window(DatasetSpan span) { return resolve_window(span.year_max, span.length(), span); }

Region make_region(std::string name, std::vector<std::string> countries, int shade, bool visible) {
    if (name.empty()) throw ValidationError("invalid", "name", "region name must not be empty");
    if (countries.empty()) {
        throw ValidationError("invalid", "countries", "region '" + name + "' has no countries");
    }
    if (shade < 0 || shade >= static_cast<int>(kShadeRamp.size())) {
        throw ValidationError("out_of_range", "shade", "shade must be in [0, 3]");
    }
    std::sort(countries.begin(), countries.end());
    countries.erase(std::unique(countries.begin(), countries.end()), countries.end());
    return Region{std::move(name), std::move(countries), visible, shade};
}

}  // namespace geoden
