// geoden: validate report files, run queries to JSON/CSV, or serve the JSON API.
//
// Exit codes: 0 success, 1 rejected rows (validate), 2 usage/fatal errors.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "geoden/ingest.hpp"
#include "geoden/query.hpp"
#include "geoden/region_store.hpp"
#include "geoden/service.hpp"
#include "geoden/snapshot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitRejects = 1;
constexpr int kExitFatal = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path resolve_data_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("GEODEN_DATA_DIR"); env != nullptr && *env != '\0') return env;
    throw UsageError("--data-dir not given and GEODEN_DATA_DIR not set");
}

void print_diagnostics(std::ostream& out, const std::string& label, const geoden::IngestDiagnostics& d) {
    out << label << ": accepted " << d.accepted << ", rejected " << d.rejected.size() << '\n';
    for (const auto& r : d.rejected) out << "  reject row " << r.row << ": " << r.message << '\n';
}

int run_validate(const std::string& reports, const std::string& supplement, const std::string& grid,
                 const std::string& gazetteer, bool verbose) {
    const geoden::RegionTree tree =
        gazetteer.empty() ? geoden::RegionTree::bundled() : geoden::RegionTree::from_json(slurp(gazetteer));
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    auto check = [&](const std::string& path, geoden::Source source, const std::string& label) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw geoden::IngestError("cannot open " + path);
        const auto parsed = geoden::parse_reports(in, source, tree);
        print_diagnostics(std::cout, label, parsed.diagnostics);
        if (verbose) {
            for (const auto& w : parsed.diagnostics.warnings) std::cout << "  warn row " << w.row << ": " << w.message << '\n';
        }
        accepted += parsed.diagnostics.accepted;
        rejected += parsed.diagnostics.rejected.size();
    };
    check(reports, geoden::Source::core, reports);
    if (!supplement.empty()) check(supplement, geoden::Source::supplement, supplement);
    if (!grid.empty()) {
        std::ifstream in(grid, std::ios::binary);
        if (!in) throw geoden::IngestError("cannot open " + grid);
        std::vector<std::string> warnings;
        const auto g = geoden::load_suitability_grid(in, geoden::GridScale::automatic, &warnings);
        std::cout << grid << ": grid " << g.n_rows << "x" << g.n_cols << ", cell size " << g.cell_size << '\n';
        for (const auto& w : warnings) std::cout << "  warn: " << w << '\n';
    }
    std::cout << "accepted " << accepted << ", rejected " << rejected << '\n';
    return rejected == 0 ? 0 : kExitRejects;
}

struct QueryFlags {
    std::string kind;
    std::string data_dir;
    std::string years;
    int current_year = 0;
    int interval = 0;
    std::string regions;
    std::string regions_file;
    std::string serotypes = "d1,d2,d3,d4";
    std::string combos = "all";
    std::string centroid_mode = "both";
    std::string trajectory_serotype = "all";
    std::string format = "json";
    std::string out;
};

json regions_from_flag(const std::string& flag) {
    if (flag.empty()) return "default";
    if (flag.starts_with("@")) {
        json doc;
        try {
            doc = json::parse(slurp(flag.substr(1)));
        } catch (const json::parse_error& e) {
            throw UsageError("--regions " + flag + ": " + e.what());
        }
        if (doc.is_object()) {
            json list = json::array();
            for (const auto& [name, countries] : doc.items()) list.push_back({{"name", name}, {"countries", countries}});
            return list;
        }
        return doc;
    }
    json list = json::array();
    std::stringstream ss(flag);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (!name.empty()) list.push_back(name);
    }
    return list;
}

json build_request(const QueryFlags& f, const geoden::Snapshot& snapshot) {
    json body;
    body["regions"] = regions_from_flag(f.regions);
    const auto span = snapshot.span();
    if (!f.years.empty()) {
        const auto colon = f.years.find(':');
        int first = 0;
        int last = 0;
        try {
            if (colon == std::string::npos) {
                first = last = std::stoi(f.years);
            } else {
                first = std::stoi(f.years.substr(0, colon));
                last = std::stoi(f.years.substr(colon + 1));
            }
        } catch (const std::exception&) {
            throw UsageError("--years must be A:B, got '" + f.years + "'");
        }
        if (first > last) throw UsageError("--years start after end");
        body["window"] = {{"current_year", last}, {"interval_length", last - first + 1}};
    } else if (f.current_year != 0 || f.interval != 0) {
        body["window"] = {{"current_year", f.current_year != 0 ? f.current_year : span.year_max},
                          {"interval_length", f.interval != 0 ? f.interval : span.length()}};
    }
    const auto serotypes = geoden::parse_serotype_list(f.serotypes);
    if (!serotypes) throw UsageError("--serotypes: unknown serotype in '" + f.serotypes + "'");
    body["serotypes"] = json::array();
    for (auto s : serotypes->members()) body["serotypes"].push_back(std::string(geoden::to_string(s)));
    if (f.combos == "all") {
        body["combinations"] = "all";
    } else {
        body["combinations"] = json::array();
        std::stringstream ss(f.combos);
        std::string combo;
        while (std::getline(ss, combo, ',')) body["combinations"].push_back(combo);
    }
    body["centroid_mode"] = f.centroid_mode;
    body["trajectory_serotype"] = f.trajectory_serotype;
    return body;
}

int run_query(const QueryFlags& f) {
    const auto kind = geoden::parse_query_kind(f.kind);
    if (!kind) throw UsageError("unknown query '" + f.kind + "'");
    if (f.format != "json" && f.format != "csv") throw UsageError("--format must be json or csv");
    const auto load = geoden::load_data_dir(resolve_data_dir(f.data_dir));
    std::optional<geoden::RegionStore> store;
    if (!f.regions_file.empty()) store.emplace(fs::path(f.regions_file));

    const json body = build_request(f, *load.snapshot);
    geoden::QueryRequest request;
    try {
        request = geoden::parse_query_request(body, *load.snapshot, [&](std::string_view name) {
            return store ? store->find(name) : std::nullopt;
        });
    } catch (const geoden::ValidationError& e) {
        std::string flag = "--" + e.field().substr(0, e.field().find_first_of(".["));
        if (flag == "--window") flag = "--years";
        throw UsageError(flag + ": " + e.what());
    }
    const json payload = geoden::run_query(*kind, *load.snapshot, request);
    const std::string text = f.format == "json" ? payload.dump(2) + "\n" : geoden::payload_to_csv(*kind, payload);
    if (f.out.empty() || f.out == "-") {
        std::cout << text;
    } else {
        std::ofstream out(f.out, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot write " + f.out);
        out << text;
    }
    return 0;
}

geoden::HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
    if (g_server != nullptr) g_server->stop();
}

int run_serve(const std::string& host, int port, const std::string& data_dir, const std::string& static_dir,
              const std::string& regions_file) {
    const auto dir = resolve_data_dir(data_dir);
    if (!fs::is_directory(dir)) throw UsageError("data directory not found: " + dir.string());
    if (!static_dir.empty() && !fs::is_directory(static_dir)) throw UsageError("static directory not found: " + static_dir);
    const auto load = geoden::load_data_dir(dir);
    auto store = std::make_shared<geoden::RegionStore>(regions_file.empty() ? std::optional<fs::path>()
                                                                            : std::optional<fs::path>(regions_file));
    geoden::Service service(store);
    service.set_snapshot(load.snapshot);

    geoden::HttpServer server(service, static_dir.empty() ? std::optional<fs::path>() : std::optional<fs::path>(static_dir));
    const int bound = server.bind(host, port);
    if (bound <= 0) {
        std::cerr << "geoden: cannot bind " << host << ":" << port << '\n';
        return kExitFatal;
    }
    std::cout << "geoden: " << load.snapshot->meta().report_count << " reports loaded" << '\n';
    std::cout << "listening on http://" << host << ":" << bound << std::endl;
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen();
    g_server = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GeoDEN dengue serotype report explorer"};
    app.require_subcommand(1);

    std::string reports, supplement, grid, gazetteer;
    bool verbose = false;
    auto* validate = app.add_subcommand("validate", "Parse and validate report files");
    validate->add_option("--reports", reports, "Core reports CSV")->required();
    validate->add_option("--supplement", supplement, "Supplementary reports CSV");
    validate->add_option("--grid", grid, "Suitability ESRI ASCII grid");
    validate->add_option("--gazetteer", gazetteer, "Gazetteer JSON (default: bundled)");
    validate->add_flag("-v,--verbose", verbose, "Also print warnings");

    QueryFlags qf;
    auto* query = app.add_subcommand("query", "Run a query and write JSON or CSV");
    query->add_option("kind", qf.kind, "reports|centroids|trajectories|cooccurrence|timeline")->required();
    query->add_option("--data-dir", qf.data_dir, "Data directory (default: $GEODEN_DATA_DIR)");
    query->add_option("--years", qf.years, "Inclusive year range A:B");
    query->add_option("--current-year", qf.current_year, "Window end year");
    query->add_option("--interval", qf.interval, "Window length in years");
    query->add_option("--regions", qf.regions, "Comma-separated region names or @file.json");
    query->add_option("--regions-file", qf.regions_file, "Stored custom regions document");
    query->add_option("--serotypes", qf.serotypes, "Active serotypes, e.g. d1,d2");
    query->add_option("--combos", qf.combos, "all, or combinations like d1+d2,d3");
    query->add_option("--centroid-mode", qf.centroid_mode, "all|per_serotype|both");
    query->add_option("--trajectory-serotype", qf.trajectory_serotype, "all|each|DENV1..DENV4");
    query->add_option("--format", qf.format, "json|csv");
    query->add_option("--out", qf.out, "Output path (default: stdout)");

    std::string host = "127.0.0.1", data_dir, static_dir, regions_file;
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Run the JSON API");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port (0 = ephemeral)");
    serve->add_option("--data-dir", data_dir, "Data directory (default: $GEODEN_DATA_DIR)");
    serve->add_option("--static-dir", static_dir, "Web UI assets to serve at /");
    serve->add_option("--regions-file", regions_file, "Custom region store JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitFatal;
    }

    try {
        if (*validate) return run_validate(reports, supplement, grid, gazetteer, verbose);
        if (*query) return run_query(qf);
        if (*serve) return run_serve(host, port, data_dir, static_dir, regions_file);
    } catch (const UsageError& e) {
        std::cerr << "geoden: " << e.what() << '\n';
        return kExitFatal;
    } catch (const geoden::Error& e) {
        std::cerr << "geoden: " << e.what() << '\n';
        return kExitFatal;
    }
    return kExitFatal;
}
