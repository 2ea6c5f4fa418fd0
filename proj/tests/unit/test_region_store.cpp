#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "geoden/region_store.hpp"

using namespace geoden;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("geoden_store_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + name);
    fs::create_directories(dir);
    const auto path = dir / "regions.json";
    fs::remove(path);
    return path;
}

std::vector<Region> west_africa() {
    return {make_region("West Africa E", {"NGA", "BEN", "TGO", "GHA"}),
            make_region("West Africa W", {"SEN", "GMB", "GIN", "SLE", "LBR", "CIV"}, 1)};
}

}  // namespace

TEST(RegionStore, PutBumpsVersion) {
    RegionStore store;
    EXPECT_EQ(store.get().version, 0u);
    const auto s = store.put(west_africa(), 0);
    EXPECT_EQ(s.version, 1u);
    EXPECT_EQ(store.get().regions.size(), 2u);
    ASSERT_TRUE(store.find("West Africa W"));
    EXPECT_EQ(store.find("West Africa W")->countries.size(), 6u);
    EXPECT_FALSE(store.find("Nowhere"));
}

TEST(RegionStore, ConflictOnStaleBase) {
    RegionStore store;
    store.put(west_africa(), 0);
    EXPECT_THROW(store.put(west_africa(), 0), VersionConflict);
    EXPECT_EQ(store.put(west_africa(), std::nullopt).version, 2u);
}

TEST(RegionStore, DuplicateNamesRejected) {
    RegionStore store;
    auto regions = west_africa();
    regions[1].name = regions[0].name;
    EXPECT_THROW(store.put(regions, std::nullopt), ValidationError);
    EXPECT_EQ(store.get().version, 0u);
}

TEST(RegionStore, SurvivesRestart) {
    const auto path = temp_file("restart");
    {
        RegionStore store(path);
        store.put(west_africa(), 0);
    }
    RegionStore reopened(path);
    const auto state = reopened.get();
    EXPECT_EQ(state.version, 1u);
    ASSERT_EQ(state.regions.size(), 2u);
    EXPECT_EQ(state.regions[0].name, "West Africa E");
    EXPECT_EQ(state.regions[1].shade, 1);
    for (const auto& entry : fs::directory_iterator(path.parent_path())) {
        EXPECT_EQ(entry.path().filename(), "regions.json") << "stray temp file";
    }
}

TEST(RegionStore, CorruptFileRejected) {
    const auto path = temp_file("corrupt");
    std::ofstream(path) << "{not json";
    EXPECT_THROW(RegionStore{path}, IngestError);
}

TEST(RegionStore, ConcurrentPutsSameBase) {
    for (int round = 0; round < 20; ++round) {
        RegionStore store;
        std::atomic<int> ok{0};
        std::atomic<int> conflicts{0};
        std::vector<std::thread> threads;
        for (int t = 0; t < 2; ++t) {
            threads.emplace_back([&] {
                try {
                    store.put(west_africa(), 0);
                    ++ok;
                } catch (const VersionConflict&) {
                    ++conflicts;
                }
            });
        }
        for (auto& t : threads) t.join();
        EXPECT_EQ(ok, 1);
        EXPECT_EQ(conflicts, 1);
        EXPECT_EQ(store.get().version, 1u);
    }
}
