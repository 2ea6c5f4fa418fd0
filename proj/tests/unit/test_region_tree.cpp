#include <gtest/gtest.h>

#include <map>

#include "geoden/error.hpp"
#include "geoden/region_tree.hpp"

using namespace geoden;

TEST(RegionTree, EveryCountryUnderExactlyOneParent) {
    const auto& tree = RegionTree::bundled();
    ASSERT_GT(tree.country_count(), 200u);
    std::map<CountryId, int> in_continent;
    std::map<CountryId, int> in_subcontinent;
    for (const auto& node : tree.continents()) {
        for (auto id : node.countries) ++in_continent[id];
    }
    for (const auto& node : tree.subcontinents()) {
        for (auto id : node.countries) ++in_subcontinent[id];
    }
    for (std::size_t i = 0; i < tree.country_count(); ++i) {
        const auto id = static_cast<CountryId>(i);
        EXPECT_EQ(in_continent[id], 1) << tree.country(id).code;
        EXPECT_EQ(in_subcontinent[id], 1) << tree.country(id).code;
    }
}

TEST(RegionTree, DefaultRegionsAreContinents) {
    const auto regions = RegionTree::bundled().default_regions();
    ASSERT_EQ(regions.size(), 7u);
    EXPECT_EQ(regions[0].name, "Africa");
    EXPECT_EQ(regions[1].name, "Asia");
    for (std::size_t i = 0; i < regions.size(); ++i) {
        EXPECT_FALSE(regions[i].countries.empty());
        EXPECT_EQ(regions[i].shade, static_cast<int>(i % 4));
    }
}

TEST(NormalizeCountry, Examples) {
    EXPECT_EQ(normalize_country("Brazil"), "BRA");
    EXPECT_EQ(normalize_country("viet nam"), "VNM");
    EXPECT_EQ(normalize_country("Atlantis"), std::nullopt);
}

TEST(NormalizeCountry, FoldsCaseDiacriticsAndPunctuation) {
    EXPECT_EQ(normalize_country("CÔTE D'IVOIRE"), "CIV");
    EXPECT_EQ(normalize_country("cote d ivoire"), "CIV");
    EXPECT_EQ(normalize_country("Réunion"), "REU");
    EXPECT_EQ(normalize_country("  Sri   Lanka "), "LKA");
    EXPECT_EQ(normalize_country("Korea, Republic of"), "KOR");
    EXPECT_EQ(normalize_country("VNM"), "VNM");
    EXPECT_EQ(normalize_country(""), std::nullopt);
    EXPECT_EQ(fold_key("São Tomé"), "sao tome");
}

TEST(RegionTree, PresetsByLevel) {
    const auto& tree = RegionTree::bundled();
    const auto asia = tree.preset("asia");
    ASSERT_TRUE(asia);
    EXPECT_EQ(asia->name, "Asia");
    const auto sea = tree.preset("South-eastern Asia");
    ASSERT_TRUE(sea);
    EXPECT_EQ(sea->countries.size(), 11u);
    const auto japan = tree.preset("Japan");
    ASSERT_TRUE(japan);
    EXPECT_EQ(japan->countries, std::vector<std::string>{"JPN"});
    EXPECT_FALSE(tree.preset("Middle Earth"));
}

TEST(RegionTree, RejectsMalformedGazetteer) {
    EXPECT_THROW(RegionTree::from_json("not json"), IngestError);
    EXPECT_THROW(RegionTree::from_json(R"({"continents": 3})"), IngestError);
    EXPECT_THROW(RegionTree::from_json(
                     R"({"continents":[{"name":"A","subcontinents":[{"name":"S","countries":[{"code":"X","name":"X"},{"code":"X","name":"Y"}]}]}]})"),
                 IngestError);
    const auto tiny = RegionTree::from_json(
        R"({"continents":[{"name":"A","subcontinents":[{"name":"S","countries":[{"code":"AAA","name":"Aland","aliases":["Al"]}]}]}]})");
    EXPECT_EQ(tiny.country_count(), 1u);
    EXPECT_EQ(tiny.normalize_country("al"), CountryId{0});
}
