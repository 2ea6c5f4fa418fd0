#include "geoden/query.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace geoden {

using nlohmann::json;

namespace {

std::string at(std::string_view base, std::size_t i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

[[noreturn]] void invalid(const std::string& field, const std::string& message) {
    throw ValidationError("invalid", field, message);
}

int require_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) invalid(field, field + " must be an integer");
    return v.get<int>();
}

Serotype require_serotype(const json& v, const std::string& field) {
    if (!v.is_string()) invalid(field, field + " must be a serotype name");
    const auto s = parse_serotype(v.get<std::string>());
    if (!s) throw ValidationError("unknown_serotype", field, "unknown serotype '" + v.get<std::string>() + "'");
    return *s;
}

SerotypeSet parse_combination(const json& v, const std::string& field) {
    SerotypeSet set;
    if (v.is_string()) {
        const auto parsed = parse_serotype_list(v.get<std::string>());
        if (!parsed) throw ValidationError("unknown_serotype", field, "bad combination '" + v.get<std::string>() + "'");
        set = *parsed;
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) set.insert(require_serotype(v[i], at(field, i)));
    } else {
        invalid(field, "combination must be a string or an array of serotypes");
    }
    if (set.empty()) throw ValidationError("empty_combination", field, "serotype combination must not be empty");
    return set;
}

Region parse_region(const json& item, std::size_t index, const Snapshot& snapshot, const RegionLookup& custom) {
    const std::string field = at("regions", index);
    auto lookup = [&](const std::string& name) -> Region {
        if (custom) {
            if (auto r = custom(name)) return *r;
        }
        if (auto r = snapshot.regions().preset(name)) return *r;
        throw ValidationError("unknown_region", field, "unknown region '" + name + "'");
    };
    if (item.is_string()) {
        Region r = lookup(item.get<std::string>());
        r.shade = static_cast<int>(index % kShadeRamp.size());
        return r;
    }
    if (!item.is_object()) invalid(field, "region must be a name or an object");
    for (const auto& [key, _] : item.items()) {
        if (key != "name" && key != "countries" && key != "visible" && key != "shade") {
            throw ValidationError("unknown_field", field + "." + key, "unknown region field '" + key + "'");
        }
    }
    if (!item.contains("name") || !item["name"].is_string() || item["name"].get<std::string>().empty()) {
        invalid(field + ".name", "region name required");
    }
    const std::string name = item["name"].get<std::string>();
    int shade = static_cast<int>(index % kShadeRamp.size());
    if (item.contains("shade")) {
        shade = require_int(item["shade"], field + ".shade");
        if (shade < 0 || shade > 3) invalid(field + ".shade", "shade must be in [0, 3]");
    }
    bool visible = true;
    if (item.contains("visible")) {
        if (!item["visible"].is_boolean()) invalid(field + ".visible", "visible must be a boolean");
        visible = item["visible"].get<bool>();
    }
    if (!item.contains("countries")) {
        Region r = lookup(name);
        r.shade = shade;
        r.visible = visible;
        return r;
    }
    const auto& countries = item["countries"];
    if (!countries.is_array() || countries.empty()) {
        invalid(field + ".countries", "countries must be a non-empty array");
    }
    std::vector<std::string> codes;
    for (std::size_t j = 0; j < countries.size(); ++j) {
        const std::string cfield = field + ".countries" + "[" + std::to_string(j) + "]";
        if (!countries[j].is_string()) invalid(cfield, "country must be a string");
        const auto id = snapshot.regions().normalize_country(countries[j].get<std::string>());
        if (!id) {
            throw ValidationError("unknown_country", cfield,
                                  "unknown country '" + countries[j].get<std::string>() + "'");
        }
        codes.push_back(snapshot.regions().country(*id).code);
    }
    return make_region(name, std::move(codes), shade, visible);
}

json point_json(GeoPoint p) { return json{{"latitude", p.latitude}, {"longitude", p.longitude}}; }

json serotype_list(SerotypeSet set) {
    json out = json::array();
    for (auto s : set.members()) out.push_back(std::string(to_string(s)));
    return out;
}

std::string csv_field(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    return v.dump();
}

void csv_row(std::ostringstream& out, std::initializer_list<json> fields) {
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out << ',';
        out << csv_field(f);
        first = false;
    }
    out << '\n';
}

}  // namespace

std::optional<QueryKind> parse_query_kind(std::string_view name) {
    if (name == "reports") return QueryKind::reports;
    if (name == "centroids") return QueryKind::centroids;
    if (name == "trajectories") return QueryKind::trajectories;
    if (name == "cooccurrence") return QueryKind::cooccurrence;
    if (name == "timeline") return QueryKind::timeline;
    return std::nullopt;
}

std::string_view to_string(QueryKind kind) {
    switch (kind) {
        case QueryKind::reports: return "reports";
        case QueryKind::centroids: return "centroids";
        case QueryKind::trajectories: return "trajectories";
        case QueryKind::cooccurrence: return "cooccurrence";
        case QueryKind::timeline: return "timeline";
    }
    return "unknown";
}

std::vector<Region> QueryRequest::visible_regions() const {
    std::vector<Region> out;
    for (const auto& r : regions) {
        if (r.visible) out.push_back(r);
    }
    return out;
}

QueryRequest parse_query_request(const json& body, const Snapshot& snapshot, const RegionLookup& custom) {
    if (!body.is_object()) invalid("", "request body must be a JSON object");
    static const std::set<std::string> known = {"regions", "window", "serotypes", "combinations",
                                                "centroid_mode", "trajectory_serotype", "glyph_sizes"};
    for (const auto& [key, _] : body.items()) {
        if (!known.contains(key)) throw ValidationError("unknown_field", key, "unknown request field '" + key + "'");
    }

    QueryRequest req;
    const auto span = snapshot.span();

    if (!body.contains("regions") || (body["regions"].is_string() && body["regions"] == "default")) {
        req.regions = snapshot.regions().default_regions();
    } else {
        const auto& regions = body["regions"];
        if (!regions.is_array()) invalid("regions", "regions must be an array or \"default\"");
        std::set<std::string> names;
        for (std::size_t i = 0; i < regions.size(); ++i) {
            Region r = parse_region(regions[i], i, snapshot, custom);
            if (!names.insert(r.name).second) {
                throw ValidationError("duplicate_region", at("regions", i), "duplicate region name '" + r.name + "'");
            }
            req.regions.push_back(std::move(r));
        }
    }

    if (body.contains("window")) {
        const auto& w = body["window"];
        if (!w.is_object()) invalid("window", "window must be an object");
        for (const auto& [key, _] : w.items()) {
            if (key != "current_year" && key != "interval_length") {
                throw ValidationError("unknown_field", "window." + key, "unknown window field '" + key + "'");
            }
        }
        const int current = w.contains("current_year") ? require_int(w["current_year"], "window.current_year")
                                                       : span.year_max;
        const int interval = w.contains("interval_length")
                                 ? require_int(w["interval_length"], "window.interval_length")
                                 : span.length();
        req.window = resolve_window(current, interval, span);
    } else {
        req.window = full_window(span);
    }

    if (body.contains("serotypes")) {
        const auto& s = body["serotypes"];
        if (!s.is_array()) invalid("serotypes", "serotypes must be an array");
        req.serotypes = {};
        for (std::size_t i = 0; i < s.size(); ++i) req.serotypes.insert(require_serotype(s[i], at("serotypes", i)));
    }

    if (!body.contains("combinations") || (body["combinations"].is_string() && body["combinations"] == "all")) {
        req.combinations = enumerate_combinations();
    } else {
        const auto& c = body["combinations"];
        if (!c.is_array()) invalid("combinations", "combinations must be an array or \"all\"");
        for (std::size_t i = 0; i < c.size(); ++i) req.combinations.push_back(parse_combination(c[i], at("combinations", i)));
    }

    if (body.contains("centroid_mode")) {
        const auto& m = body["centroid_mode"];
        if (m == "all") {
            req.centroid_mode = CentroidMode::all;
        } else if (m == "per_serotype") {
            req.centroid_mode = CentroidMode::per_serotype;
        } else if (m == "both") {
            req.centroid_mode = CentroidMode::both;
        } else {
            invalid("centroid_mode", "centroid_mode must be all, per_serotype or both");
        }
    }

    if (body.contains("trajectory_serotype")) {
        const auto& t = body["trajectory_serotype"];
        if (t == "all") {
            req.trajectory.kind = TrajectorySelection::Kind::pooled;
        } else if (t == "each") {
            req.trajectory.kind = TrajectorySelection::Kind::each;
        } else {
            req.trajectory.kind = TrajectorySelection::Kind::single;
            req.trajectory.serotype = require_serotype(t, "trajectory_serotype");
        }
    }

    if (body.contains("glyph_sizes")) {
        const auto& g = body["glyph_sizes"];
        if (!g.is_array() || g.size() != 4) invalid("glyph_sizes", "glyph_sizes must be an array of 4 numbers");
        for (std::size_t i = 0; i < 4; ++i) {
            if (!g[i].is_number()) invalid(at("glyph_sizes", i), "glyph size must be a number");
            req.glyph_sizes.radius_px[i] = g[i].get<double>();
        }
        req.glyph_sizes.validate();
    }
    return req;
}

int http_status(const ValidationError& error) {
    return error.code() == "unknown_country" || error.code() == "unknown_region" ? 422 : 400;
}

json error_body(std::string_view code, std::string_view field, std::string_view message) {
    return json{{"code", code}, {"field", field}, {"message", message}};
}

json window_json(const YearWindow& w) {
    return json{{"current_year", w.current_year},
                {"interval_length", w.interval_length},
                {"first_year", w.first_year},
                {"last_year", w.last_year}};
}

json meta_payload(const Snapshot& snapshot) {
    const auto& m = snapshot.meta();
    json serotypes = json::array();
    for (auto s : kAllSerotypes) serotypes.push_back(std::string(to_string(s)));
    return json{{"report_count", m.report_count},
                {"year_min", m.year_min},
                {"year_max", m.year_max},
                {"first_report_year", m.first_report_year ? json(*m.first_report_year) : json(nullptr)},
                {"last_report_year", m.last_report_year ? json(*m.last_report_year) : json(nullptr)},
                {"source_counts", {{"core", m.core_count}, {"supplement", m.supplement_count}}},
                {"serotypes", serotypes},
                {"has_suitability", snapshot.grid() != nullptr}};
}

json reports_payload(const Snapshot& snapshot, const QueryRequest& request) {
    const auto slice = filter(snapshot, request.context());
    json reports = json::array();
    for (auto id : slice.ids) {
        const Report& r = snapshot.report(id);
        const auto glyph = glyph_spec(r, request.serotypes, request.glyph_sizes);
        json sections = json::array();
        for (auto s : glyph.sections) sections.push_back(std::string(to_string(s)));
        reports.push_back(json{{"id", r.id},
                               {"latitude", r.latitude},
                               {"longitude", r.longitude},
                               {"country", snapshot.country_code(r)},
                               {"country_name", snapshot.regions().country(r.country).name},
                               {"year", r.year},
                               {"serotypes", serotype_list(r.serotypes)},
                               {"serotype_count", r.serotype_count()},
                               {"source", to_string(r.source)},
                               {"glyph",
                                {{"sections", sections},
                                 {"section_angle", glyph.section_angle},
                                 {"radius", glyph.radius}}}});
    }
    return json{{"window", window_json(request.window)}, {"count", slice.size()}, {"reports", reports}};
}

json centroids_payload(const Snapshot& snapshot, const QueryRequest& request) {
    json regions = json::array();
    for (const auto& region : request.visible_regions()) {
        const auto slice = filter_region(snapshot, region, request.window, request.serotypes);
        json entry{{"name", region.name}, {"shade", region.shade}, {"count", slice.size()}};
        if (request.centroid_mode != CentroidMode::per_serotype) {
            const auto c = centroid(slice);
            entry["centroid"] = c ? point_json(*c) : json(nullptr);
        }
        if (request.centroid_mode != CentroidMode::all) {
            json per = json::array();
            const auto centroids = serotype_centroids(slice);
            for (const auto& [s, p] : centroids) {
                std::size_t count = 0;
                for (auto id : slice.ids) count += snapshot.report(id).serotypes.contains(s) ? 1 : 0;
                json item = point_json(p);
                item["serotype"] = to_string(s);
                item["count"] = count;
                per.push_back(item);
            }
            entry["serotypes"] = per;
        }
        regions.push_back(entry);
    }
    const char* mode = request.centroid_mode == CentroidMode::all            ? "all"
                       : request.centroid_mode == CentroidMode::per_serotype ? "per_serotype"
                                                                             : "both";
    return json{{"window", window_json(request.window)}, {"mode", mode}, {"regions", regions}};
}

json trajectories_payload(const Snapshot& snapshot, const QueryRequest& request) {
    json out = json::array();
    auto emit = [&](const Region& region, std::optional<Serotype> s) {
        const auto t = trajectory(snapshot, region, request.window, request.serotypes, s);
        json vertices = json::array();
        for (const auto& v : t.vertices) {
            vertices.push_back(json{{"year", v.year},
                                    {"latitude", v.point.latitude},
                                    {"longitude", v.point.longitude},
                                    {"count", v.count}});
        }
        out.push_back(json{{"region", region.name},
                           {"shade", region.shade},
                           {"serotype", s ? std::string(to_string(*s)) : std::string("all")},
                           {"vertices", vertices}});
    };
    for (const auto& region : request.visible_regions()) {
        switch (request.trajectory.kind) {
            case TrajectorySelection::Kind::pooled: emit(region, std::nullopt); break;
            case TrajectorySelection::Kind::single: emit(region, request.trajectory.serotype); break;
            case TrajectorySelection::Kind::each:
                for (auto s : request.serotypes.members()) emit(region, s);
                break;
        }
    }
    return json{{"window", window_json(request.window)}, {"trajectories", out}};
}

json cooccurrence_payload(const Snapshot& snapshot, const QueryRequest& request) {
    const auto slice = filter(snapshot, request.context());
    const auto result = cooccurrence(slice, request.combinations);
    json combos = json::array();
    for (const auto& e : result.entries) {
        combos.push_back(json{{"serotypes", serotype_list(e.combination)},
                              {"label", to_string(e.combination)},
                              {"mask", encode_serotype_set(e.combination)},
                              {"exact_count", e.exact_count},
                              {"superset_count", e.superset_count},
                              {"proportion", e.proportion},
                              {"superset_proportion", e.superset_proportion}});
    }
    return json{{"window", window_json(request.window)}, {"slice_size", result.slice_size}, {"combinations", combos}};
}

json timeline_payload(const Snapshot& snapshot, const QueryRequest& request) {
    const auto regions = request.visible_regions();
    json out{{"window", window_json(request.window)}, {"years", request.window.years()},
             {"serotypes", serotype_list(request.serotypes)}, {"rows", json::array()}, {"totals", json::array()}};
    if (regions.empty() || request.serotypes.empty()) return out;
    const auto m = timeline(snapshot, regions, request.serotypes, request.window);
    for (const auto& row : m.rows) {
        out["rows"].push_back(json{{"region", row.region}, {"serotype", to_string(row.serotype)}, {"counts", row.counts}});
    }
    for (const auto& t : m.totals) out["totals"].push_back(json{{"region", t.region}, {"counts", t.counts}});
    return out;
}

json run_query(QueryKind kind, const Snapshot& snapshot, const QueryRequest& request) {
    switch (kind) {
        case QueryKind::reports: return reports_payload(snapshot, request);
        case QueryKind::centroids: return centroids_payload(snapshot, request);
        case QueryKind::trajectories: return trajectories_payload(snapshot, request);
        case QueryKind::cooccurrence: return cooccurrence_payload(snapshot, request);
        case QueryKind::timeline: return timeline_payload(snapshot, request);
    }
    return json();
}

std::string payload_to_csv(QueryKind kind, const json& payload) {
    std::ostringstream out;
    switch (kind) {
        case QueryKind::reports:
            out << "id,latitude,longitude,country,year,denv1,denv2,denv3,denv4,source,radius\n";
            for (const auto& r : payload["reports"]) {
                std::array<int, 4> flags{};
                for (const auto& s : r["serotypes"]) {
                    flags[static_cast<std::size_t>(index_of(*parse_serotype(s.get<std::string>())))] = 1;
                }
                csv_row(out, {r["id"], r["latitude"], r["longitude"], r["country"], r["year"], flags[0], flags[1],
                              flags[2], flags[3], r["source"], r["glyph"]["radius"]});
            }
            break;
        case QueryKind::centroids:
            out << "region,serotype,latitude,longitude,count\n";
            for (const auto& r : payload["regions"]) {
                if (r.contains("centroid") && !r["centroid"].is_null()) {
                    csv_row(out, {r["name"], "all", r["centroid"]["latitude"], r["centroid"]["longitude"], r["count"]});
                }
                if (r.contains("serotypes")) {
                    for (const auto& s : r["serotypes"]) {
                        csv_row(out, {r["name"], s["serotype"], s["latitude"], s["longitude"], s["count"]});
                    }
                }
            }
            break;
        case QueryKind::trajectories:
            out << "region,serotype,year,latitude,longitude,count\n";
            for (const auto& t : payload["trajectories"]) {
                for (const auto& v : t["vertices"]) {
                    csv_row(out, {t["region"], t["serotype"], v["year"], v["latitude"], v["longitude"], v["count"]});
                }
            }
            break;
        case QueryKind::cooccurrence:
            out << "combination,mask,exact_count,superset_count,proportion,superset_proportion\n";
            for (const auto& c : payload["combinations"]) {
                csv_row(out, {c["label"], c["mask"], c["exact_count"], c["superset_count"], c["proportion"],
                              c["superset_proportion"]});
            }
            break;
        case QueryKind::timeline: {
            out << "region,serotype,year,count\n";
            const auto& years = payload["years"];
            for (const auto& t : payload["totals"]) {
                for (std::size_t k = 0; k < years.size(); ++k) csv_row(out, {t["region"], "all", years[k], t["counts"][k]});
            }
            for (const auto& row : payload["rows"]) {
                for (std::size_t k = 0; k < years.size(); ++k) {
                    csv_row(out, {row["region"], row["serotype"], years[k], row["counts"][k]});
                }
            }
            break;
        }
    }
    return out.str();
}

BoundingBox parse_bbox(std::string_view text) {
    std::array<double, 4> v{};
    std::size_t n = 0;
    while (true) {
        const auto comma = text.find(',');
        auto token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        if (n >= 4) invalid("bbox", "bbox must have exactly 4 numbers");
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v[n]);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v[n])) {
            invalid("bbox", "bbox component '" + std::string(token) + "' is not a number");
        }
        ++n;
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (n != 4) invalid("bbox", "bbox must be minLng,minLat,maxLng,maxLat");
    BoundingBox b{v[0], v[1], v[2], v[3]};
    if (!(b.min_lng < b.max_lng) || !(b.min_lat < b.max_lat)) invalid("bbox", "bbox minimums must be below maximums");
    return b;
}

json suitability_payload(const SuitabilityGrid& grid, const BoundingBox& bbox, double resolution) {
    if (!(resolution > 0.0) || !std::isfinite(resolution)) invalid("res", "res must be a positive number");
    // Tolerate representation error when the bbox is an exact multiple of res.
    const auto cells = [&](double extent) {
        return static_cast<long long>(std::ceil(extent / resolution - 1e-9));
    };
    const long long rows = cells(bbox.max_lat - bbox.min_lat);
    const long long cols = cells(bbox.max_lng - bbox.min_lng);
    if (rows < 1 || cols < 1 || rows * cols > 4'000'000) invalid("res", "requested window has too many cells");
    json classes = json::array();
    for (long long i = 0; i < rows; ++i) {
        json row = json::array();
        const double lat = bbox.max_lat - (static_cast<double>(i) + 0.5) * resolution;
        for (long long j = 0; j < cols; ++j) {
            const double lng = bbox.min_lng + (static_cast<double>(j) + 0.5) * resolution;
            const auto cls = classify_suitability(suitability_at(grid, {lat, lng}));
            row.push_back(cls ? json(*cls) : json(nullptr));
        }
        classes.push_back(std::move(row));
    }
    return json{{"bbox", {bbox.min_lng, bbox.min_lat, bbox.max_lng, bbox.max_lat}},
                {"res", resolution},
                {"rows", rows},
                {"cols", cols},
                {"classes", classes}};
}

}  // namespace geoden
