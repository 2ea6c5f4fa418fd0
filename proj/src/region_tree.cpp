#include "geoden/region_tree.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

#include "geoden/error.hpp"

namespace geoden {

extern const char* const kBundledGazetteer;

namespace {

// Base letters for U+00C0..U+017F. '*' marks symbols that are not letters.
constexpr std::string_view kLatin1Fold =
    "AAAAAAACEEEEIIIIDNOOOOO*OUUUUYTs"
    "aaaaaaaceeeeiiiidnooooo*ouuuuyty";
constexpr std::string_view kLatinExtAFold =
    "AaAaAaCcCcCcCcDdDdEeEeEeEeEeGgGgGgGgHhHhIiIiIiIiIiJjJjKkkLlLlLlLlLlNnNnNnnNnOoOoOoOoRrRrRrSsSsSsSsTtTtTtUuUuUuUuUuUuWwYyYZzZzZzs";
static_assert(kLatin1Fold.size() == 64);
static_assert(kLatinExtAFold.size() == 128);

char fold_codepoint(unsigned cp) {
    if (cp >= 0xC0 && cp < 0x100) return kLatin1Fold[cp - 0xC0];
    if (cp >= 0x100 && cp < 0x180) return kLatinExtAFold[cp - 0x100];
    return '*';
}

}  // namespace

std::string fold_key(std::string_view text) {
    std::string out;
    bool pending_space = false;
    auto emit = [&](char c) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            if (pending_space && !out.empty()) out += ' ';
            pending_space = false;
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            pending_space = true;
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            emit(static_cast<char>(c));
        } else if ((c & 0xE0) == 0xC0 && i + 1 < text.size()) {
            const unsigned cp = ((c & 0x1Fu) << 6) | (static_cast<unsigned char>(text[i + 1]) & 0x3Fu);
            emit(fold_codepoint(cp));
            ++i;
        } else {
            // Outside the Latin ranges: drop continuation bytes, keep a separator.
            pending_space = true;
            while (i + 1 < text.size() && (static_cast<unsigned char>(text[i + 1]) & 0xC0) == 0x80) ++i;
        }
    }
    return out;
}

RegionTree RegionTree::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IngestError(std::string("gazetteer: invalid JSON: ") + e.what());
    }
    RegionTree tree;
    auto require_string = [](const nlohmann::json& obj, const char* key, const std::string& where) {
        if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string() || obj[key].get<std::string>().empty()) {
            throw IngestError("gazetteer: " + where + " is missing string field '" + key + "'");
        }
        return obj[key].get<std::string>();
    };
    if (!doc.is_object() || !doc.contains("continents") || !doc["continents"].is_array()) {
        throw IngestError("gazetteer: top-level 'continents' array required");
    }
    for (const auto& cont : doc["continents"]) {
        RegionNode continent{require_string(cont, "name", "continent"), {}};
        const int cont_index = static_cast<int>(tree.continents_.size());
        if (!cont.contains("subcontinents") || !cont["subcontinents"].is_array()) {
            throw IngestError("gazetteer: continent '" + continent.name + "' has no subcontinents array");
        }
        for (const auto& sub : cont["subcontinents"]) {
            RegionNode subcontinent{require_string(sub, "name", "subcontinent of " + continent.name), {}};
            const int sub_index = static_cast<int>(tree.subcontinents_.size());
            if (!sub.contains("countries") || !sub["countries"].is_array() || sub["countries"].empty()) {
                throw IngestError("gazetteer: subcontinent '" + subcontinent.name + "' has no countries");
            }
            for (const auto& entry : sub["countries"]) {
                CountryInfo info;
                info.code = require_string(entry, "code", "country in " + subcontinent.name);
                info.name = require_string(entry, "name", "country " + info.code);
                if (entry.contains("aliases")) {
                    for (const auto& alias : entry["aliases"]) info.aliases.push_back(alias.get<std::string>());
                }
                info.continent = cont_index;
                info.subcontinent = sub_index;
                if (tree.by_code_.contains(info.code)) {
                    throw IngestError("gazetteer: country code " + info.code + " listed twice");
                }
                if (tree.countries_.size() >= 0xFFFF) throw IngestError("gazetteer: too many countries");
                const auto id = static_cast<CountryId>(tree.countries_.size());
                tree.by_code_.emplace(info.code, id);
                tree.by_key_.emplace(fold_key(info.code), id);
                tree.by_key_.emplace(fold_key(info.name), id);
                for (const auto& alias : info.aliases) tree.by_key_.emplace(fold_key(alias), id);
                subcontinent.countries.push_back(id);
                continent.countries.push_back(id);
                tree.countries_.push_back(std::move(info));
            }
            tree.subcontinents_.push_back(std::move(subcontinent));
        }
        if (continent.countries.empty()) {
            throw IngestError("gazetteer: continent '" + continent.name + "' has no countries");
        }
        tree.continents_.push_back(std::move(continent));
    }
    return tree;
}

const RegionTree& RegionTree::bundled() {
    static const RegionTree tree = from_json(kBundledGazetteer);
    return tree;
}

std::optional<CountryId> RegionTree::find_code(std::string_view code) const {
    const auto it = by_code_.find(std::string(code));
    if (it == by_code_.end()) return std::nullopt;
    return it->second;
}

std::optional<CountryId> RegionTree::normalize_country(std::string_view raw) const {
    if (auto exact = find_code(raw)) return exact;
    const auto key = fold_key(raw);
    if (key.empty()) return std::nullopt;
    const auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> RegionTree::codes_of(const RegionNode& node) const {
    std::vector<std::string> codes;
    codes.reserve(node.countries.size());
    for (auto id : node.countries) codes.push_back(countries_[id].code);
    std::sort(codes.begin(), codes.end());
    return codes;
}

std::optional<Region> RegionTree::preset(std::string_view name) const {
    const auto key = fold_key(name);
    for (const auto* level : {&continents_, &subcontinents_}) {
        for (const auto& node : *level) {
            if (fold_key(node.name) == key) return make_region(node.name, codes_of(node));
        }
    }
    if (auto id = normalize_country(name)) {
        const auto& info = countries_[*id];
        return make_region(info.name, {info.code});
    }
    return std::nullopt;
}

std::vector<Region> RegionTree::default_regions() const {
    std::vector<Region> regions;
    for (std::size_t i = 0; i < continents_.size(); ++i) {
        regions.push_back(make_region(continents_[i].name, codes_of(continents_[i]),
                                      static_cast<int>(i % kShadeRamp.size())));
    }
    return regions;
}

std::optional<std::string> normalize_country(std::string_view raw) {
    const auto& tree = RegionTree::bundled();
    if (auto id = tree.normalize_country(raw)) return tree.country(*id).code;
    return std::nullopt;
}

}  // namespace geoden
