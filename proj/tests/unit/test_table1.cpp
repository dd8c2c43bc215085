#include <gtest/gtest.h>

#include "gabrank/table1.hpp"

using namespace gabrank;

TEST(Table1, EmbeddedDatasetShape) {
    const auto& rows = table1_rows();
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(table1_version(), 1);
    for (const auto& r : rows) {
        EXPECT_EQ(r.pairs.size(), r.trkHigh) << r.n << r.k << r.q;
        const std::uint64_t order = build_field(r.field)->order();
        for (const auto& [i, j] : r.pairs) {
            EXPECT_LT(i, order);
            EXPECT_LT(j, order);
        }
    }
    EXPECT_EQ(find_row(9, 9, 9), nullptr);
}

TEST(Table1, ParseErrors) {
    EXPECT_THROW(parse_table1("{"), Error);
    EXPECT_THROW(parse_table1(R"({"version":1,"rows":[{"n":3}]})"), Error);
    EXPECT_TRUE(parse_table1(R"({"version":1,"rows":[]})").empty());
}

TEST(Table1, RowThreeTwoTwo) {
    const auto rep = verify_row(*find_row(3, 2, 2));
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.basis.kruskal, 7u);
    EXPECT_EQ(find_row(3, 2, 2)->mtr, "yes");
}

TEST(Table1, RowFourTwoTwo) {
    const auto rep = verify_row(*find_row(4, 2, 2));
    EXPECT_TRUE(rep.ok());
    EXPECT_FALSE(rep.basis.mtr);
}

TEST(Table1, RowFourOneFiveIsUpperBound) {
    const Table1Row& row = *find_row(4, 1, 5);
    const auto rep = verify_row(row);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(row.mtr, "unknown");
    EXPECT_EQ(row.trkLow, 7u);
    EXPECT_EQ(rep.basis.size, 8u);
}

TEST(Table1, RowFourOneFour) { EXPECT_TRUE(verify_row(*find_row(4, 1, 4)).ok()); }

TEST(Table1, RowFourThreeThree) { EXPECT_TRUE(verify_row(*find_row(4, 3, 3)).ok()); }

TEST(Table1, RowFourTwoFour) {
    const auto rep = verify_row(*find_row(4, 2, 4));
    EXPECT_TRUE(rep.basis.rankOne);
    EXPECT_TRUE(rep.basis.independent);
    EXPECT_TRUE(rep.basis.containsCode);
    EXPECT_TRUE(rep.ok());
}

TEST(Table1, RowFourTwoThree) { EXPECT_TRUE(verify_row(*find_row(4, 2, 3)).ok()); }

TEST(Table1, RowFourThreeTwo) { EXPECT_TRUE(verify_row(*find_row(4, 3, 2)).ok()); }

// The MTR flag is recomputed from the Kruskal bound, so a wrong flag is caught.
TEST(Table1, WrongFlagIsReported) {
    Table1Row row = *find_row(3, 2, 2);
    row.mtr = "no";
    const auto rep = verify_row(row);
    EXPECT_FALSE(rep.mtrMatches);
    EXPECT_FALSE(rep.ok());
    row = *find_row(3, 2, 2);
    row.trkHigh = 8;
    EXPECT_FALSE(verify_row(row).sizeMatches);
}
