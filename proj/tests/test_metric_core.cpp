#include <gtest/gtest.h>

#include <functional>
#include <random>

#include <mslab/metric_space.hpp>
#include <mslab/realization.hpp>
#include <mslab/hyperspace.hpp>

#include "oracles.hpp"

using namespace mslab;

namespace {

FiniteMetricSpace line013() { return line_space({Rat(0), Rat(1), Rat(3)}); }

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::ParseError;
}

} // namespace

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(parse_rat("3"), Rat(3));
    EXPECT_EQ(parse_rat("-7/2"), Rat(-7, 2));
    EXPECT_EQ(to_string(Rat(0)), "0/1");
    EXPECT_EQ(to_string(Rat(6, 4)), "3/2");
    EXPECT_EQ(to_compact_string(Rat(4)), "4");
    EXPECT_EQ(code_of([] { parse_rat("2/4"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_rat("1/0"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_rat("1/-2"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_rat("0.5"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_rat(""); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { parse_rat("+1"); }), ErrorCode::ParseError);
}

TEST(Validate, TwoPointSpace) {
    auto s = validate_ints({{0, 1}, {1, 0}});
    EXPECT_EQ(s.size(), 2);
    EXPECT_FALSE(s.pseudometric());
}

TEST(Validate, ReportsTriangleViolationTriple) {
    try {
        validate_ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
        FAIL() << "expected a triangle violation";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TriangleViolation);
        ASSERT_TRUE(e.triple());
        EXPECT_EQ(*e.triple(), (std::array<int, 3>{0, 2, 1}));
    }
}

TEST(Validate, DegenerateTriangleIsAllowed) {
    auto s = validate_ints({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}});
    EXPECT_TRUE(oracle::satisfies_triangle(s));
}

TEST(Validate, AxiomErrors) {
    EXPECT_EQ(code_of([] { validate_ints({{0, 1}, {2, 0}}); }), ErrorCode::AsymmetricMatrix);
    EXPECT_EQ(code_of([] { validate_ints({{1, 1}, {1, 0}}); }), ErrorCode::NonzeroDiagonal);
    EXPECT_EQ(code_of([] { validate_ints({{0, -1}, {-1, 0}}); }), ErrorCode::NegativeDistance);
    EXPECT_EQ(code_of([] { validate_ints({{0, 0}, {0, 0}}); }), ErrorCode::ZeroOffDiagonal);
    EXPECT_EQ(code_of([] { validate_ints({{0, 1}, {1}}); }), ErrorCode::NotSquare);
    EXPECT_EQ(code_of([] { validate_ints({}); }), ErrorCode::InvalidParameter);
    auto pseudo = validate_ints({{0, 0}, {0, 0}}, {.allow_pseudometric = true});
    EXPECT_TRUE(pseudo.pseudometric());
}

TEST(DiamEps, Examples) {
    auto de = diam_eps(line013());
    EXPECT_EQ(de.diam, Rat(3));
    EXPECT_EQ(de.eps, Rat(1));
    auto sde = diam_eps(simplex(4, Rat(2)));
    EXPECT_EQ(sde.diam, Rat(2));
    EXPECT_EQ(sde.eps, Rat(2));
    auto point = diam_eps(simplex(1, Rat(1)));
    EXPECT_EQ(point.diam, Rat(0));
    EXPECT_FALSE(point.eps.has_value());
}

TEST(Simplex, Construction) {
    EXPECT_EQ(simplex(1, Rat(1)).size(), 1);
    auto s = simplex(3, Rat(1, 2));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            EXPECT_EQ(s.d(i, j), i == j ? Rat(0) : Rat(1, 2));
    EXPECT_EQ(diam_eps(simplex(2, Rat(2))), (DiamEps{Rat(2), Rat(2)}));
    EXPECT_EQ(code_of([] { simplex(0, Rat(1)); }), ErrorCode::InvalidParameter);
    EXPECT_EQ(code_of([] { simplex(2, Rat(0)); }), ErrorCode::InvalidParameter);
    for (int n = 2; n <= 6; ++n)
        EXPECT_EQ(diam_eps(simplex(n, Rat(5, 3))), (DiamEps{Rat(5, 3), Rat(5, 3)}));
}

TEST(SubsetGap, Examples) {
    auto z = line013();
    auto gap = subset_gap(z, Subset::from_indices({0}, 3), Subset::from_indices({1, 2}, 3));
    EXPECT_EQ(gap.inf, Rat(1));
    EXPECT_EQ(gap.sup, Rat(3));
    auto a = Subset::from_indices({0, 2}, 3);
    EXPECT_EQ(subset_gap(z, a, a).inf, Rat(0));
    auto s = simplex(3, Rat(1));
    auto sg = subset_gap(s, Subset::from_indices({0}, 3), Subset::from_indices({1, 2}, 3));
    EXPECT_EQ(sg.inf, Rat(1));
    EXPECT_EQ(sg.sup, Rat(1));
    EXPECT_EQ(code_of([] { Subset::from_indices({}, 3); }), ErrorCode::EmptySubset);
}

TEST(SubsetGap, InfAtMostSupOnRandomSpaces) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto z = random_space(5, seed, 9);
        for (std::uint64_t a = 1; a < 32; a += 3)
            for (std::uint64_t b = 1; b < 32; b += 5) {
                auto gap = subset_gap(z, Subset::from_bits(a, 5), Subset::from_bits(b, 5));
                EXPECT_LE(gap.inf, gap.sup);
            }
    }
}

TEST(DeltaConnected, Examples) {
    auto chain = line_space({Rat(0), Rat(1), Rat(2)});
    EXPECT_TRUE(is_delta_connected(chain, Rat(1)));
    EXPECT_FALSE(is_delta_connected(chain, Rat(1, 2)));
    EXPECT_TRUE(is_delta_connected(simplex(1, Rat(1)), Rat(0)));
    EXPECT_EQ(code_of([&] { is_delta_connected(chain, Rat(-1)); }), ErrorCode::InvalidParameter);
}

// Oracle: the bipartition definition, checked over all 2^(n-1) - 1 cuts.
TEST(DeltaConnected, MatchesBipartitionDefinitionAndIsMonotone) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto z = random_space(5, seed, 8);
        for (int d = 0; d <= 8; ++d) {
            Rat delta(d);
            bool by_cuts = true;
            for (std::uint64_t part = 1; part < (1U << 4); ++part) {
                std::vector<int> left{4}, right;
                for (int i = 0; i < 4; ++i)
                    ((part >> i) & 1U ? right : left).push_back(i);
                std::optional<Rat> gap;
                for (int a : left)
                    for (int b : right)
                        if (!gap || z.d(a, b) < *gap)
                            gap = z.d(a, b);
                if (*gap > delta)
                    by_cuts = false;
            }
            EXPECT_EQ(is_delta_connected(z, delta), by_cuts);
            if (is_delta_connected(z, delta)) {
                EXPECT_TRUE(is_delta_connected(z, delta + Rat(1, 3)));
            }
        }
    }
}

TEST(RandomSpace, DeterministicAndValid) {
    EXPECT_EQ(random_space(1, 99, 5).size(), 1);
    EXPECT_EQ(random_space(6, 7, 10), random_space(6, 7, 10));
    EXPECT_FALSE(random_space(6, 7, 10) == random_space(6, 8, 10));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto s = random_space(1 + static_cast<int>(seed % 7), seed, 1 + static_cast<std::int64_t>(seed % 12));
        EXPECT_TRUE(oracle::satisfies_triangle(s));
        EXPECT_NO_THROW(validate(s.matrix()));
        if (s.size() >= 2) {
            EXPECT_GE(*diam_eps(s).eps, Rat(1));
        }
    }
}

TEST(Glue, OnePointAgainstTwoSimplex) {
    auto x = simplex(1, Rat(1));
    auto y = simplex(2, Rat(1));
    auto real = glue_realization(x, y, Correspondence::full(1, 2));
    EXPECT_EQ(real.radius, Rat(1, 2));
    EXPECT_EQ(real.ambient.d(0, 1), Rat(1, 2));
    EXPECT_EQ(real.ambient.d(0, 2), Rat(1, 2));
    auto xs = Subset::from_indices(std::span<const int>(real.x_indices), 3);
    auto ys = Subset::from_indices(std::span<const int>(real.y_indices), 3);
    EXPECT_EQ(hausdorff_distance(real.ambient, xs, ys), Rat(1, 2));
}

TEST(Glue, IdentityIsPseudometric) {
    auto x = line013();
    auto real = glue_realization(x, x, Correspondence::identity(3));
    EXPECT_EQ(real.radius, Rat(0));
    EXPECT_TRUE(real.ambient.pseudometric());
    for (int i = 0; i < 3; ++i)
        EXPECT_EQ(real.ambient.d(i, 3 + i), Rat(0));
}

TEST(Glue, CrossDistancesFollowMinFormula) {
    auto x = simplex(2, Rat(1));
    auto y = simplex(2, Rat(3));
    auto real = glue_realization(x, y, Correspondence::make(2, 2, {{0, 0}, {1, 1}}));
    EXPECT_EQ(real.radius, Rat(1));
    EXPECT_EQ(real.ambient.d(0, 2), Rat(1));
    EXPECT_EQ(real.ambient.d(0, 3), Rat(2));
    EXPECT_EQ(code_of([] { Correspondence::make(2, 2, {{0, 0}}); }), ErrorCode::InvalidCorrespondence);
}

TEST(Glue, IsometricEmbeddingAndRadiusOnRandomCorrespondences) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4);
        int m = 1 + static_cast<int>(rng() % 4);
        auto x = random_space(n, rng(), 7);
        auto y = random_space(m, rng(), 7);
        std::vector<IndexPair> pairs;
        for (int i = 0; i < n; ++i)
            pairs.emplace_back(i, static_cast<int>(rng() % m));
        for (int j = 0; j < m; ++j)
            pairs.emplace_back(static_cast<int>(rng() % n), j);
        for (int extra = 0; extra < 2; ++extra)
            pairs.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % m));
        auto r = Correspondence::make(n, m, pairs);
        auto real = glue_realization(x, y, r);
        EXPECT_TRUE(oracle::satisfies_triangle(real.ambient));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                EXPECT_EQ(real.ambient.d(real.x_indices[i], real.x_indices[j]), x.d(i, j));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                EXPECT_EQ(real.ambient.d(real.y_indices[i], real.y_indices[j]), y.d(i, j));
        auto xs = Subset::from_indices(std::span<const int>(real.x_indices), n + m);
        auto ys = Subset::from_indices(std::span<const int>(real.y_indices), n + m);
        EXPECT_LE(hausdorff_distance(real.ambient, xs, ys), distortion(r, x, y) / Rat(2));
    }
}
