#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "geoden/report.hpp"

namespace geoden {

/// Regular lat/lng raster of dengue environmental suitability in percent.
/// Row 0 is the northernmost row, as in ESRI ASCII grids.
struct SuitabilityGrid {
    double xll = 0.0;  // longitude of the lower-left corner
    double yll = 0.0;  // latitude of the lower-left corner
    double cell_size = 1.0;
    int n_rows = 0;
    int n_cols = 0;
    double nodata = -9999.0;
    std::vector<double> values;  // row-major, n_rows * n_cols

    double x_max() const { return xll + cell_size * n_cols; }
    double y_max() const { return yll + cell_size * n_rows; }

    /// Percent at (row, col), none for nodata.
    std::optional<double> cell(int row, int col) const;
};

enum class GridScale { automatic, percent, fraction };

/// Parses an ESRI ASCII grid. Throws IngestError on header/shape problems and
/// on values outside the accepted range. In automatic mode a grid whose
/// maximum is <= 1 is read as fractions and scaled x100 (a warning is
/// appended); a maximum strictly between 1 and 2 is rejected as ambiguous.
SuitabilityGrid load_suitability_grid(std::istream& in, GridScale scale = GridScale::automatic,
                                      std::vector<std::string>* warnings = nullptr);

/// Nearest-cell lookup. Cell extents are half-open [x, x + cell_size) in
/// longitude and [y, y + cell_size) in latitude. None outside the grid or on nodata.
std::optional<double> suitability_at(const SuitabilityGrid& grid, GeoPoint point);

/// 0 for exactly 0%, then (0,25] -> 1, (25,50] -> 2, (50,75] -> 3, (75,100] -> 4.
/// Throws ValidationError for values outside [0, 100].
std::optional<int> classify_suitability(std::optional<double> percent);

}  // namespace geoden
