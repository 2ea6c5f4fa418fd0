#include "geoden/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "geoden/error.hpp"
#include "geoden/snapshot.hpp"

namespace geoden {

namespace {

/// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
std::optional<std::vector<std::string>> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else {
            field += c;
        }
    }
    if (quoted) return std::nullopt;
    fields.push_back(std::move(field));
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return !text.empty() && ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool parse_int(std::string_view text, int& out) {
    text = trim(text);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return !text.empty() && ec == std::errc() && ptr == text.data() + text.size();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

ParsedReports parse_reports(std::istream& in, Source source, const RegionTree& tree, DatasetSpan span,
                            ReportId first_id) {
    if (!in) throw IngestError("reports: unreadable stream");
    ParsedReports out;
    std::string line;
    if (!std::getline(in, line)) throw IngestError("reports: empty input, header row required");
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        const auto header = split_csv(line);
        std::string joined;
        if (header) {
            for (const auto& h : *header) {
                if (!joined.empty()) joined += ',';
                std::string col(trim(h));
                for (auto& c : col) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                joined += col;
            }
        }
        if (joined != kReportsHeader) {
            throw IngestError("reports: malformed header '" + line + "', expected '" + std::string(kReportsHeader) + "'");
        }
    }

    std::size_t row = 0;
    ReportId next_id = first_id;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++row;
        auto reject = [&](std::string reason) { out.diagnostics.rejected.push_back({row, std::move(reason)}); };

        const auto fields = split_csv(line);
        if (!fields) {
            reject("unterminated quoted field");
            continue;
        }
        if (fields->size() != 8) {
            reject("expected 8 fields, found " + std::to_string(fields->size()));
            continue;
        }
        const auto& f = *fields;
        Report r;
        if (!parse_double(f[0], r.latitude) || r.latitude < -90.0 || r.latitude > 90.0) {
            reject("latitude '" + f[0] + "' not a number in [-90, 90]");
            continue;
        }
        if (!parse_double(f[1], r.longitude) || r.longitude < -180.0 || r.longitude > 180.0) {
            reject("longitude '" + f[1] + "' not a number in [-180, 180]");
            continue;
        }
        const auto country = tree.normalize_country(f[2]);
        if (!country) {
            reject("unresolvable country '" + f[2] + "'");
            continue;
        }
        r.country = *country;
        if (!parse_int(f[3], r.year)) {
            reject("year '" + f[3] + "' is not an integer");
            continue;
        }
        if (!span.contains(r.year)) {
            reject("year " + std::to_string(r.year) + " outside [" + std::to_string(span.year_min) + ", " +
                   std::to_string(span.year_max) + "]");
            continue;
        }
        bool flags_ok = true;
        for (int i = 0; i < 4; ++i) {
            const auto flag = trim(f[4 + i]);
            if (flag == "1") {
                r.serotypes.insert(static_cast<Serotype>(i));
            } else if (flag != "0") {
                reject("denv" + std::to_string(i + 1) + " flag '" + f[4 + i] + "' must be 0 or 1");
                flags_ok = false;
                break;
            }
        }
        if (!flags_ok) continue;
        if (r.serotypes.empty()) {
            reject("no serotype reported");
            continue;
        }
        if (fold_key(f[2]) != fold_key(tree.country(r.country).name) && trim(f[2]) != tree.country(r.country).code) {
            out.diagnostics.warnings.push_back(
                {row, "country '" + f[2] + "' resolved to " + tree.country(r.country).code + " via alias"});
        }
        r.source = source;
        r.id = next_id++;
        out.reports.push_back(r);
        ++out.diagnostics.accepted;
    }
    if (in.bad()) throw IngestError("reports: read error");
    return out;
}

DatasetSpan parse_span_meta(std::string_view json_text) {
    DatasetSpan span;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestError(std::string("meta.json: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw IngestError("meta.json: object expected");
    try {
        if (doc.contains("year_min")) span.year_min = doc["year_min"].get<int>();
        if (doc.contains("year_max")) span.year_max = doc["year_max"].get<int>();
    } catch (const nlohmann::json::exception&) {
        throw IngestError("meta.json: year_min/year_max must be integers");
    }
    if (span.year_min > span.year_max) throw IngestError("meta.json: year_min > year_max");
    return span;
}

DataDirLoad load_data_dir(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IngestError("data directory not found: " + dir.string());
    const fs::path core_path = dir / "reports_core.csv";
    if (!fs::exists(core_path)) throw IngestError("missing " + core_path.string());

    DataDirLoad load;
    DatasetSpan span;
    if (fs::exists(dir / "meta.json")) span = parse_span_meta(read_file(dir / "meta.json"));

    RegionTree tree = fs::exists(dir / "gazetteer.json") ? RegionTree::from_json(read_file(dir / "gazetteer.json"))
                                                         : RegionTree::bundled();

    std::vector<Report> reports;
    {
        std::ifstream in(core_path, std::ios::binary);
        auto parsed = parse_reports(in, Source::core, tree, span, 0);
        reports = std::move(parsed.reports);
        load.core = std::move(parsed.diagnostics);
    }
    if (const auto supp = dir / "reports_supplement.csv"; fs::exists(supp)) {
        std::ifstream in(supp, std::ios::binary);
        auto parsed = parse_reports(in, Source::supplement, tree, span, static_cast<ReportId>(reports.size()));
        reports.insert(reports.end(), parsed.reports.begin(), parsed.reports.end());
        load.supplement = std::move(parsed.diagnostics);
    }
    std::optional<SuitabilityGrid> grid;
    if (const auto asc = dir / "suitability.asc"; fs::exists(asc)) {
        std::ifstream in(asc, std::ios::binary);
        grid = load_suitability_grid(in, GridScale::automatic, &load.warnings);
    }
    load.snapshot = build_snapshot(std::move(reports), std::move(tree), std::move(grid), span);
    return load;
}

}  // namespace geoden
