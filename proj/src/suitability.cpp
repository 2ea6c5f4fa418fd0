#include "geoden/suitability.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "geoden/error.hpp"

namespace geoden {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_double(const std::string& token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

std::optional<double> SuitabilityGrid::cell(int row, int col) const {
    if (row < 0 || row >= n_rows || col < 0 || col >= n_cols) return std::nullopt;
    const double v = values[static_cast<std::size_t>(row) * static_cast<std::size_t>(n_cols) + static_cast<std::size_t>(col)];
    if (v == nodata) return std::nullopt;
    return v;
}

SuitabilityGrid load_suitability_grid(std::istream& in, GridScale scale, std::vector<std::string>* warnings) {
    if (!in) throw IngestError("suitability grid: unreadable stream");

    std::map<std::string, std::string> header;
    std::string pending;  // first data token, when the header has no NODATA line
    std::string token;
    while (in >> token) {
        const std::string key = lower(token);
        static const std::array<std::string_view, 8> known = {"ncols",     "nrows",     "xllcorner",    "yllcorner",
                                                              "xllcenter", "yllcenter", "cellsize", "nodata_value"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            pending = token;
            break;
        }
        std::string value;
        if (!(in >> value)) throw IngestError("suitability grid: header key '" + token + "' has no value");
        if (!header.emplace(key, value).second) throw IngestError("suitability grid: duplicate header key " + token);
    }

    auto number = [&](const std::string& key) {
        double v = 0.0;
        if (!parse_double(header.at(key), v)) {
            throw IngestError("suitability grid: header " + key + " is not a number: " + header.at(key));
        }
        return v;
    };
    for (const char* key : {"ncols", "nrows", "cellsize"}) {
        if (!header.contains(key)) throw IngestError(std::string("suitability grid: missing header ") + key);
    }
    const bool corner = header.contains("xllcorner") && header.contains("yllcorner");
    const bool center = header.contains("xllcenter") && header.contains("yllcenter");
    if (corner == center) {
        throw IngestError("suitability grid: need exactly one of xllcorner/yllcorner or xllcenter/yllcenter");
    }

    SuitabilityGrid grid;
    const double cols = number("ncols");
    const double rows = number("nrows");
    if (cols < 1 || rows < 1 || cols != std::floor(cols) || rows != std::floor(rows) || cols * rows > 1e9) {
        throw IngestError("suitability grid: ncols/nrows must be positive integers");
    }
    grid.n_cols = static_cast<int>(cols);
    grid.n_rows = static_cast<int>(rows);
    grid.cell_size = number("cellsize");
    if (!(grid.cell_size > 0)) throw IngestError("suitability grid: cellsize must be positive");
    if (corner) {
        grid.xll = number("xllcorner");
        grid.yll = number("yllcorner");
    } else {
        grid.xll = number("xllcenter") - grid.cell_size / 2;
        grid.yll = number("yllcenter") - grid.cell_size / 2;
    }
    if (header.contains("nodata_value")) grid.nodata = number("nodata_value");

    const std::size_t expected = static_cast<std::size_t>(grid.n_rows) * static_cast<std::size_t>(grid.n_cols);
    grid.values.reserve(expected);
    auto consume = [&](const std::string& text) {
        double v = 0.0;
        const std::size_t i = grid.values.size();
        if (i >= expected) {
            throw IngestError("suitability grid: more than nrows*ncols = " + std::to_string(expected) + " values");
        }
        if (!parse_double(text, v)) {
            throw IngestError("suitability grid: non-numeric value '" + text + "' at row " +
                              std::to_string(i / grid.n_cols) + ", col " + std::to_string(i % grid.n_cols));
        }
        grid.values.push_back(v);
    };
    if (!pending.empty()) consume(pending);
    while (in >> token) consume(token);
    if (grid.values.size() != expected) {
        throw IngestError("suitability grid: expected " + std::to_string(expected) + " values, found " +
                          std::to_string(grid.values.size()));
    }

    double max_value = -1.0;
    for (double v : grid.values) {
        if (v != grid.nodata) max_value = std::max(max_value, v);
    }
    bool as_fraction = scale == GridScale::fraction;
    if (scale == GridScale::automatic) {
        if (max_value > 1.0 && max_value < 2.0) {
            throw IngestError("suitability grid: ambiguous scale (maximum " + std::to_string(max_value) +
                              " is neither a fraction nor a plausible percent maximum); set the scale explicitly");
        }
        as_fraction = max_value >= 0.0 && max_value <= 1.0;
    }
    const double upper = as_fraction ? 1.0 : 100.0;
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
        const double v = grid.values[i];
        if (v == grid.nodata) continue;
        if (v < 0.0 || v > upper) {
            std::ostringstream msg;
            msg << "suitability grid: value " << v << " at row " << i / grid.n_cols << ", col " << i % grid.n_cols
                << " outside [0, " << upper << "]";
            throw IngestError(msg.str());
        }
    }
    if (as_fraction) {
        for (double& v : grid.values) {
            if (v != grid.nodata) v *= 100.0;
        }
        if (warnings) warnings->push_back("suitability grid: values read as fractions and scaled x100");
    }
    return grid;
}

std::optional<double> suitability_at(const SuitabilityGrid& grid, GeoPoint point) {
    const double col_f = std::floor((point.longitude - grid.xll) / grid.cell_size);
    const double row_from_south = std::floor((point.latitude - grid.yll) / grid.cell_size);
    if (col_f < 0 || col_f >= grid.n_cols || row_from_south < 0 || row_from_south >= grid.n_rows) return std::nullopt;
    const int row = grid.n_rows - 1 - static_cast<int>(row_from_south);
    return grid.cell(row, static_cast<int>(col_f));
}

std::optional<int> classify_suitability(std::optional<double> percent) {
    if (!percent) return std::nullopt;
    const double v = *percent;
    if (!(v >= 0.0 && v <= 100.0)) {
        throw ValidationError("out_of_range", "suitability", "suitability " + std::to_string(v) + " outside [0, 100]");
    }
    if (v == 0.0) return 0;
    if (v <= 25.0) return 1;
    if (v <= 50.0) return 2;
    if (v <= 75.0) return 3;
    return 4;
}

}  // namespace geoden
