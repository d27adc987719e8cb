#include <gtest/gtest.h>

#include <mslab/experiments.hpp>
#include <mslab/io.hpp>

using namespace mslab;

TEST(GeneralPosition, Examples) {
    EXPECT_FALSE(is_general_position(simplex(3, Rat(1))));
    EXPECT_FALSE(is_general_position(line_space({Rat(0), Rat(1), Rat(3)})));
    EXPECT_TRUE(is_general_position(validate_ints({{0, 3, 4}, {3, 0, 6}, {4, 6, 0}})));
    EXPECT_TRUE(is_general_position(simplex(1, Rat(1))));
}

TEST(GeneralPosition, SamplerProducesGeneralPositionDeterministically) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        int n = 1 + static_cast<int>(seed % 5);
        auto s = random_general_position_space(n, seed);
        EXPECT_TRUE(is_general_position(s));
        EXPECT_EQ(s, random_general_position_space(n, seed));
    }
}

TEST(Nonexpansion, ForcedEqualPairHasZeroGap) {
    auto x = random_space(3, 4, 10);
    auto row = nonexpansion_row(0, 4, x, x);
    EXPECT_EQ(row.d_xy, Rat(0));
    EXPECT_EQ(row.d_hxhy, Rat(0));
    EXPECT_EQ(row.gap, Rat(0));
}

TEST(Nonexpansion, OnePointRowsAreSharp) {
    auto pt = simplex(1, Rat(1));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto y = random_space(1 + static_cast<int>(seed % 3), seed, 10);
        auto row = nonexpansion_row(0, seed, pt, y);
        EXPECT_EQ(row.status, RowStatus::exact);
        EXPECT_EQ(row.gap, Rat(0));
    }
}

TEST(Nonexpansion, SweepHasNoViolations) {
    SweepOptions opt;
    opt.count = 60;
    opt.seed = 1;
    auto report = nonexpansion_sweep(opt);
    ASSERT_EQ(report.rows.size(), 60U);
    EXPECT_EQ(report.summary.violations, 0);
    EXPECT_EQ(report.summary.inconclusive, 0);
    EXPECT_GE(report.summary.min_gap, Rat(0));
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        EXPECT_EQ(report.rows[i].pair_id, static_cast<int>(i));
        EXPECT_EQ(report.rows[i].seed, 1 + i);
    }
}

TEST(Nonexpansion, SweepIsReproducible) {
    SweepOptions opt;
    opt.count = 15;
    opt.seed = 77;
    EXPECT_EQ(sweep_report_json(nonexpansion_sweep(opt)), sweep_report_json(nonexpansion_sweep(opt)));
    EXPECT_EQ(sweep_report_csv(nonexpansion_sweep(opt)), sweep_report_csv(nonexpansion_sweep(opt)));
}

TEST(Nonexpansion, RejectsBadOptions) {
    SweepOptions opt;
    opt.max_n = 4;
    EXPECT_THROW(nonexpansion_sweep(opt), Error);
}

TEST(Summary, CountsViolationsAndInconclusiveRows) {
    auto pt = simplex(1, Rat(1));
    SweepRow ok = nonexpansion_row(0, 0, pt, pt);
    ok.gap = Rat(1);
    SweepRow bad = ok;
    bad.gap = Rat(-1, 2);
    SweepRow unknown = ok;
    unknown.gap = Rat(-3);
    unknown.status = RowStatus::inconclusive;
    auto s = summarize({ok, bad, unknown});
    EXPECT_EQ(s.violations, 1);
    EXPECT_EQ(s.inconclusive, 1);
    EXPECT_EQ(s.min_gap, Rat(-1, 2));
    EXPECT_EQ(s.max_gap, Rat(1));
}

TEST(IsometryProbe, FiltersNonGeneralPosition) {
    auto gp = validate_ints({{0, 3, 4}, {3, 0, 6}, {4, 6, 0}});
    std::vector<std::pair<FiniteMetricSpace, FiniteMetricSpace>> pairs{
        {simplex(2, Rat(1)), simplex(3, Rat(1))},
        {gp, gp},
    };
    auto report = isometry_probe_pairs(pairs);
    ASSERT_EQ(report.rows.size(), 1U);
    EXPECT_EQ(report.rows[0].gap, Rat(0));
    std::vector<std::pair<FiniteMetricSpace, FiniteMetricSpace>> none{{simplex(3, Rat(1)), simplex(3, Rat(2))}};
    try {
        isometry_probe_pairs(none);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientSamples);
    }
}

TEST(IsometryProbe, ReportsNonnegativeGaps) {
    auto report = isometry_probe(40, 3, 1);
    ASSERT_EQ(report.rows.size(), 40U);
    EXPECT_GE(report.summary.min_gap, Rat(0));
    ASSERT_TRUE(report.largest_gap_row);
    EXPECT_EQ(report.rows[*report.largest_gap_row].gap, report.summary.max_gap);
}

TEST(SimplexTable, Examples) {
    auto table = simplex_preservation_table(3, {Rat(1)});
    bool found = false;
    for (const auto& row : table.simplex_rows) {
        if (row.p == row.q) {
            EXPECT_EQ(row.base, Rat(0));
            EXPECT_EQ(row.lifted, Rat(0));
        }
        if (row.p == 2 && row.q == 3) {
            EXPECT_EQ(row.base, Rat(1, 2));
            EXPECT_EQ(row.lifted, Rat(1, 2));
            found = true;
        }
    }
    EXPECT_TRUE(found);
    ASSERT_FALSE(table.spot_rows.empty());
    EXPECT_EQ(table.spot_rows[0].space_size, 1);
    EXPECT_EQ(table.spot_rows[0].base, Rat(1, 2));
    EXPECT_EQ(table.spot_rows[0].lifted, Rat(1, 2));
}

TEST(SimplexTable, AllColumnsAgree) {
    auto table = simplex_preservation_table(5, {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)}, 9);
    EXPECT_EQ(table.simplex_rows.size(), 400U);
    EXPECT_FALSE(table.finite_rows.empty());
    EXPECT_TRUE(table.all_agree());
    EXPECT_THROW(simplex_preservation_table(6, {Rat(1)}), Error);
    EXPECT_THROW(simplex_preservation_table(2, {}), Error);
}
