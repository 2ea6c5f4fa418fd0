#include "geoden/region_store.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace geoden {

using nlohmann::json;

RegionStore::RegionStore(std::optional<std::filesystem::path> file) : file_(std::move(file)) {
    if (!file_ || !std::filesystem::exists(*file_)) return;
    std::ifstream in(*file_);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        const auto doc = json::parse(buf.str());
        state_.version = doc.at("version").get<std::uint64_t>();
        for (const auto& r : doc.at("regions")) {
            state_.regions.push_back(make_region(r.at("name").get<std::string>(),
                                                 r.at("countries").get<std::vector<std::string>>(),
                                                 r.value("shade", 0), r.value("visible", true)));
        }
    } catch (const json::exception& e) {
        throw IngestError("region store " + file_->string() + ": " + e.what());
    } catch (const ValidationError& e) {
        throw IngestError("region store " + file_->string() + ": " + e.what());
    }
}

RegionStore::State RegionStore::get() const {
    std::lock_guard lock(mutex_);
    return state_;
}

RegionStore::State RegionStore::put(std::vector<Region> regions, std::optional<std::uint64_t> base_version) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (!names.insert(regions[i].name).second) {
            throw ValidationError("duplicate_region", "regions[" + std::to_string(i) + "]",
                                  "duplicate region name '" + regions[i].name + "'");
        }
    }
    std::lock_guard lock(mutex_);
    if (base_version && *base_version != state_.version) throw VersionConflict(*base_version, state_.version);
    State next{state_.version + 1, std::move(regions)};
    persist(next);
    state_ = std::move(next);
    return state_;
}

std::optional<Region> RegionStore::find(std::string_view name) const {
    std::lock_guard lock(mutex_);
    for (const auto& r : state_.regions) {
        if (r.name == name) return r;
    }
    return std::nullopt;
}

void RegionStore::persist(const State& state) const {
    if (!file_) return;
    json doc{{"version", state.version}, {"regions", json::array()}};
    for (const auto& r : state.regions) {
        doc["regions"].push_back(
            json{{"name", r.name}, {"countries", r.countries}, {"visible", r.visible}, {"shade", r.shade}});
    }
    const auto tmp = std::filesystem::path(file_->string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << doc.dump(2) << '\n';
        out.flush();
        if (!out) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, *file_);
}

}  // namespace geoden
