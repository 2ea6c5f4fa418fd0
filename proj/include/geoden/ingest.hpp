#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geoden/report.hpp"
#include "geoden/selection.hpp"
#include "geoden/suitability.hpp"

namespace geoden {

class Snapshot;

struct RowIssue {
    std::size_t row = 0;  // 1-based data row number (header excluded)
    std::string message;
};

struct IngestDiagnostics {
    std::size_t accepted = 0;
    std::vector<RowIssue> rejected;
    std::vector<RowIssue> warnings;

    std::size_t total_rows() const { return accepted + rejected.size(); }
};

struct ParsedReports {
    std::vector<Report> reports;
    IngestDiagnostics diagnostics;
};

/// Expected header of a reports CSV.
inline constexpr std::string_view kReportsHeader = "latitude,longitude,country,year,denv1,denv2,denv3,denv4";

/// Parses a reports CSV. Bad rows are rejected into the diagnostics and
/// parsing continues; an unreadable stream or malformed header throws
/// IngestError. Report ids are assigned in row order starting at `first_id`.
ParsedReports parse_reports(std::istream& in, Source source, const RegionTree& tree = RegionTree::bundled(),
                            DatasetSpan span = {}, ReportId first_id = 0);

/// Everything a data directory produced, including per-file diagnostics.
struct DataDirLoad {
    std::shared_ptr<const Snapshot> snapshot;
    IngestDiagnostics core;
    std::optional<IngestDiagnostics> supplement;
    std::vector<std::string> warnings;
};

/// Loads <dir>/reports_core.csv (required), reports_supplement.csv,
/// gazetteer.json, suitability.asc and meta.json (all optional).
/// Throws IngestError when the directory or the core file is missing.
DataDirLoad load_data_dir(const std::filesystem::path& dir);

/// Optional {"year_min": .., "year_max": ..} document.
DatasetSpan parse_span_meta(std::string_view json_text);

}  // namespace geoden
