#include "geoden/service.hpp"

#include <charconv>

#include "httplib.h"
#include "json.hpp"

#include "geoden/query.hpp"

namespace geoden {

using nlohmann::json;

namespace {

ApiResponse json_response(int status, const json& body) { return {status, body.dump(), "application/json"}; }

ApiResponse error(int status, std::string_view code, std::string_view field, std::string_view message) {
    return json_response(status, error_body(code, field, message));
}

ApiResponse not_ready() { return error(503, "not_ready", "", "no snapshot loaded"); }

std::optional<std::uint64_t> parse_version(const json& v) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    return std::nullopt;
}

json region_json(const Region& r) {
    return json{{"name", r.name}, {"countries", r.countries}, {"visible", r.visible}, {"shade", r.shade}};
}

}  // namespace

Service::Service(std::shared_ptr<RegionStore> store) : store_(std::move(store)) {}

void Service::set_snapshot(std::shared_ptr<const Snapshot> snapshot) {
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(snapshot);
}

std::shared_ptr<const Snapshot> Service::snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return snapshot_;
}

ApiResponse Service::handle(const ApiRequest& request) const {
    const auto& path = request.path;
    if (path == "/api/meta") {
        if (request.method != "GET") return error(405, "method_not_allowed", "", "use GET");
        const auto snap = snapshot();
        if (!snap) return not_ready();
        return json_response(200, meta_payload(*snap));
    }
    if (path.starts_with("/api/query/")) {
        if (request.method != "POST") return error(405, "method_not_allowed", "", "use POST");
        return query(path.substr(std::string_view("/api/query/").size()), request.body);
    }
    if (path == "/api/regions") {
        if (request.method == "GET") return get_regions();
        if (request.method == "PUT") return put_regions(request);
        return error(405, "method_not_allowed", "", "use GET or PUT");
    }
    if (path == "/api/suitability") {
        if (request.method != "GET") return error(405, "method_not_allowed", "", "use GET");
        return suitability(request);
    }
    return error(404, "not_found", "", "no route for " + path);
}

ApiResponse Service::query(const std::string& kind_name, const std::string& body) const {
    const auto kind = parse_query_kind(kind_name);
    if (!kind) return error(404, "not_found", "", "unknown query '" + kind_name + "'");
    const auto snap = snapshot();
    if (!snap) return not_ready();
    json parsed;
    try {
        parsed = body.empty() ? json::object() : json::parse(body);
    } catch (const json::parse_error& e) {
        return error(400, "malformed_json", "", e.what());
    }
    try {
        const auto request = parse_query_request(parsed, *snap, [this](std::string_view name) { return store_->find(name); });
        return json_response(200, run_query(*kind, *snap, request));
    } catch (const ValidationError& e) {
        return error(http_status(e), e.code(), e.field(), e.what());
    }
}

ApiResponse Service::get_regions() const {
    const auto state = store_->get();
    json regions = json::array();
    for (const auto& r : state.regions) regions.push_back(region_json(r));
    return json_response(200, json{{"version", state.version}, {"regions", regions}});
}

ApiResponse Service::put_regions(const ApiRequest& request) const {
    json body;
    try {
        body = json::parse(request.body);
    } catch (const json::parse_error& e) {
        return error(400, "malformed_json", "", e.what());
    }
    if (!body.is_object()) return error(400, "invalid", "", "body must be a JSON object");

    std::optional<std::uint64_t> base;
    if (request.if_match) {
        std::uint64_t v = 0;
        const auto& text = *request.if_match;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            return error(400, "invalid", "If-Match", "If-Match must be a version number");
        }
        base = v;
    }
    // Either {"base_version": n, "regions": ...} or a bare {"name": [codes]} map.
    json regions = body;
    if (body.contains("regions")) {
        regions = body["regions"];
        if (body.contains("base_version")) {
            base = parse_version(body["base_version"]);
            if (!base) return error(400, "invalid", "base_version", "base_version must be a non-negative integer");
        }
    }

    const auto snap = snapshot();
    const RegionTree& tree = snap ? snap->regions() : RegionTree::bundled();
    std::vector<json> items;
    if (regions.is_object()) {
        for (const auto& [name, countries] : regions.items()) items.push_back(json{{"name", name}, {"countries", countries}});
    } else if (regions.is_array()) {
        items.assign(regions.begin(), regions.end());
    } else {
        return error(400, "invalid", "regions", "regions must be an object or an array");
    }

    std::vector<Region> parsed;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& item = items[i];
        const std::string field = "regions[" + std::to_string(i) + "]";
        if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
            return error(400, "invalid", field + ".name", "region name required");
        }
        if (!item.contains("countries") || !item["countries"].is_array() || item["countries"].empty()) {
            return error(400, "invalid", field + ".countries", "countries must be a non-empty array");
        }
        std::vector<std::string> codes;
        for (std::size_t j = 0; j < item["countries"].size(); ++j) {
            const auto& c = item["countries"][j];
            const std::string cfield = field + ".countries[" + std::to_string(j) + "]";
            const auto id = c.is_string() ? tree.normalize_country(c.get<std::string>()) : std::nullopt;
            if (!id) return error(422, "unknown_country", cfield, "unknown country " + c.dump());
            codes.push_back(tree.country(*id).code);
        }
        const int shade = item.contains("shade") && item["shade"].is_number_integer() ? item["shade"].get<int>()
                                                                                       : static_cast<int>(i % 4);
        const bool visible = item.contains("visible") && item["visible"].is_boolean() ? item["visible"].get<bool>() : true;
        try {
            parsed.push_back(make_region(item["name"].get<std::string>(), std::move(codes), shade, visible));
        } catch (const ValidationError& e) {
            return error(400, e.code(), field + "." + e.field(), e.what());
        }
    }
    try {
        store_->put(std::move(parsed), base);
    } catch (const VersionConflict& e) {
        auto body_json = error_body("version_conflict", "base_version", e.what());
        body_json["version"] = e.actual();
        return json_response(409, body_json);
    } catch (const ValidationError& e) {
        return error(400, e.code(), e.field(), e.what());
    } catch (const Error& e) {
        return error(500, "storage_error", "", e.what());
    }
    return get_regions();
}

ApiResponse Service::suitability(const ApiRequest& request) const {
    const auto snap = snapshot();
    if (!snap) return not_ready();
    const auto* grid = snap->grid();
    if (grid == nullptr) return error(404, "no_grid", "", "no suitability grid loaded");
    try {
        BoundingBox bbox{grid->xll, grid->yll, grid->x_max(), grid->y_max()};
        if (auto it = request.params.find("bbox"); it != request.params.end()) bbox = parse_bbox(it->second);
        double res = grid->cell_size;
        if (auto it = request.params.find("res"); it != request.params.end()) {
            const auto& text = it->second;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), res);
            if (ec != std::errc() || ptr != text.data() + text.size()) {
                return error(400, "invalid", "res", "res must be a number");
            }
        }
        return json_response(200, suitability_payload(*grid, bbox, res));
    } catch (const ValidationError& e) {
        return error(http_status(e), e.code(), e.field(), e.what());
    }
}

HttpServer::HttpServer(Service& service, std::optional<std::filesystem::path> static_dir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
        ApiRequest api{req.method, req.path, {}, req.body, std::nullopt};
        for (const auto& [k, v] : req.params) api.params.emplace(k, v);
        if (req.has_header("If-Match")) api.if_match = req.get_header_value("If-Match");
        const auto out = service_.handle(api);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    server_->Get(R"(/api/.*)", route);
    server_->Post(R"(/api/.*)", route);
    server_->Put(R"(/api/.*)", route);
    if (static_dir) server_->set_mount_point("/", static_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return server_->listen_after_bind(); }

void HttpServer::stop() {
    if (server_ && server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace geoden
