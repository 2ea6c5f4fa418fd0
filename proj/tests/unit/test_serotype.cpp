#include <gtest/gtest.h>

#include <set>

#include "geoden/serotype.hpp"

using namespace geoden;

TEST(SerotypeSet, EncodeExamples) {
    EXPECT_EQ(encode_serotype_set({}), 0);
    EXPECT_EQ(encode_serotype_set({Serotype::DENV1, Serotype::DENV3}), 5);
    EXPECT_EQ(encode_serotype_set({Serotype::DENV1, Serotype::DENV2, Serotype::DENV3, Serotype::DENV4}), 15);
}

TEST(SerotypeSet, RoundTripAllMasks) {
    for (int m = 0; m < 16; ++m) {
        EXPECT_EQ(encode_serotype_set(decode_serotype_set(m)), m);
        const auto set = decode_serotype_set(m);
        for (auto s : kAllSerotypes) EXPECT_EQ(set.contains(s), ((m >> index_of(s)) & 1) == 1);
    }
}

TEST(SerotypeSet, EnumerateCombinations) {
    const auto& combos = enumerate_combinations();
    ASSERT_EQ(combos.size(), 15u);
    EXPECT_EQ(combos.front(), SerotypeSet{Serotype::DENV1});
    EXPECT_EQ(combos.back(), SerotypeSet::all());
    std::set<int> seen;
    for (std::size_t i = 0; i < combos.size(); ++i) {
        EXPECT_FALSE(combos[i].empty());
        seen.insert(combos[i].mask());
        if (i > 0) {
            const auto a = combos[i - 1];
            const auto b = combos[i];
            EXPECT_TRUE(a.size() < b.size() || (a.size() == b.size() && a.mask() < b.mask()));
        }
    }
    EXPECT_EQ(seen.size(), 15u);
}

TEST(SerotypeSet, ParseNames) {
    EXPECT_EQ(parse_serotype("DENV2"), Serotype::DENV2);
    EXPECT_EQ(parse_serotype("d4"), Serotype::DENV4);
    EXPECT_EQ(parse_serotype(" denv1 "), Serotype::DENV1);
    EXPECT_EQ(parse_serotype("3"), Serotype::DENV3);
    EXPECT_FALSE(parse_serotype("DENV5"));
    EXPECT_FALSE(parse_serotype("d0"));
    EXPECT_FALSE(parse_serotype(""));

    EXPECT_EQ(parse_serotype_list("d1,d3"), (SerotypeSet{Serotype::DENV1, Serotype::DENV3}));
    EXPECT_EQ(parse_serotype_list("DENV2+DENV4"), (SerotypeSet{Serotype::DENV2, Serotype::DENV4}));
    EXPECT_EQ(parse_serotype_list(""), SerotypeSet{});
    EXPECT_FALSE(parse_serotype_list("d1,x"));
}

TEST(SerotypeSet, MembersAreCanonicallyOrdered) {
    const SerotypeSet set{Serotype::DENV4, Serotype::DENV1, Serotype::DENV3};
    EXPECT_EQ(set.members(), (std::vector<Serotype>{Serotype::DENV1, Serotype::DENV3, Serotype::DENV4}));
    EXPECT_EQ(to_string(set), "DENV1+DENV3+DENV4");
    EXPECT_EQ(to_string(SerotypeSet{}), "none");
    EXPECT_EQ(set.size(), 3);
}
