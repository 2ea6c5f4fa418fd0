#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string_view>
#include <vector>

#include "geoden/error.hpp"
#include "geoden/selection.hpp"

namespace geoden {

class VersionConflict : public Error {
public:
    VersionConflict(std::uint64_t expected, std::uint64_t actual)
        : Error("region store version is " + std::to_string(actual) + ", request was based on " +
                std::to_string(expected)),
          actual_(actual) {}
    std::uint64_t actual() const { return actual_; }

private:
    std::uint64_t actual_;
};

/// Named custom regions, optionally persisted as a JSON document:
/// {"version": N, "regions": [{"name", "countries", "visible", "shade"}]}.
/// Writes are serialized and replace the file atomically (temp file + rename).
class RegionStore {
public:
    struct State {
        std::uint64_t version = 0;
        std::vector<Region> regions;
    };

    /// In-memory store when `file` is empty. Loads an existing file; throws
    /// IngestError when it cannot be parsed.
    explicit RegionStore(std::optional<std::filesystem::path> file = std::nullopt);

    State get() const;

    /// Replaces the whole set. With a base version, throws VersionConflict
    /// unless it equals the current version. Throws ValidationError for
    /// duplicate names. Returns the new state (version + 1).
    State put(std::vector<Region> regions, std::optional<std::uint64_t> base_version);

    std::optional<Region> find(std::string_view name) const;

private:
    void persist(const State& state) const;

    std::optional<std::filesystem::path> file_;
    mutable std::mutex mutex_;
    State state_;
};

}  // namespace geoden
