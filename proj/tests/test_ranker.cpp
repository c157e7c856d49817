#include "reference.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sigtau;

TEST(Ranker, GoldenPermutation) {
    const SigmaTauPath path(10);
    EXPECT_EQ(path.rank(Permutation{7, 2, 4, 1, 6, 5, 10, 9, 8, 3}), Rank(1584702));
}

TEST(Ranker, GoldenAgreesWithStreamPosition) {
    const auto prog = build_program(10);
    auto walk = permutations(prog);
    const Permutation want{7, 2, 4, 1, 6, 5, 10, 9, 8, 3};
    std::size_t pos = 0;
    while (walk.next() && walk.current() != want) ++pos;
    EXPECT_EQ(pos, 1584702u);
}

TEST(Ranker, Endpoints) {
    for (int n = 4; n <= 30; ++n) {
        const SigmaTauPath path(n);
        EXPECT_EQ(path.rank(path.start()), 0) << n;
        EXPECT_EQ(path.rank(path.end()), path.size() - 1) << n;
    }
}

TEST(Ranker, StartingPathAndHubs) {
    const SigmaTauPath path(6);
    EXPECT_EQ(path.rank(Permutation{5, 6, 4, 3, 2, 1}), 0);
    EXPECT_EQ(path.rank(Permutation{6, 4, 3, 2, 1, 5}), 1);
    EXPECT_EQ(path.rank(Permutation{6, 3, 2, 1, 5, 4}), 3);
    EXPECT_EQ(path.rank(Permutation{6, 2, 1, 5, 4, 3}), 5);
    EXPECT_EQ(path.rank(Permutation{6, 1, 5, 4, 3, 2}), 7);
    EXPECT_EQ(path.rank(Permutation{6, 5, 4, 3, 2, 1}), 9);
    const LengthTables& t = path.tables();
    const auto expanded = ref::expanded_path(6);
    for (std::size_t r = 0; r < expanded.size(); ++r) {
        const auto seeds = seeds_of(expanded[r]);
        if (r < 10 || is_hub(seeds.front())) {
            EXPECT_EQ(rank_hub(t, expanded[r]), Rank(r)) << to_string(expanded[r]);
        }
    }
}

TEST(Ranker, RouteAndAnchorExamples) {
    const auto ra = route_and_anchor(Seed{10, 9, 8, 3, 7, 2, 4, 6, 5});
    EXPECT_EQ(ra.anchor, (Seed{10, 2, 1, 9, 8, 7, 4, 6, 5}));
    EXPECT_EQ(ra.route.anchor_first(), (std::vector<int>{3, 5, 4}));
    EXPECT_EQ(ra.route.ords, (std::vector<int>{4, 5, 3}));
    EXPECT_EQ(ra.route.chain_length(), 2u);
    const auto rb = route_and_anchor(Seed{9, 6, 1, 5, 4, 2, 3, 8});
    EXPECT_EQ(rb.anchor, (Seed{9, 8, 7, 6, 5, 4, 2, 3}));
    EXPECT_EQ(rb.route.ords, (std::vector<int>{1, 5, 2}));
    EXPECT_THROW(route_and_anchor(Seed{10, 3, 2, 1, 9, 8, 7, 6, 5}), std::domain_error);
}

TEST(Ranker, RouteMatchesChainWalk) {
    for (int n = 5; n <= 8; ++n)
        for (const auto& s : ref::all_seeds(n)) {
            if (is_hub(s)) continue;
            const auto ra = route_and_anchor(s);
            const auto w = ref::walk_chain(s);
            EXPECT_EQ(ra.route.ords, w.ords) << to_string(s);
            EXPECT_EQ(ra.anchor, w.anchor) << to_string(s);
        }
}

TEST(Ranker, OffsetsMatchStreamPositions) {
    for (int n = 5; n <= 8; ++n) {
        const LengthTables t(n);
        const auto pos = ref::positions(ref::expanded_path(n));
        auto at = [&](const Permutation& p) { return Rank(pos.at(pack(p))); };
        for (const auto& s : ref::all_seeds(n)) {
            if (is_hub(s)) continue;
            const auto ra = route_and_anchor(s);
            EXPECT_EQ(anchor_rank(t, ra.anchor), at(seed_reps(ra.anchor).tilde));
            const int ah = delta(n - 3, ra.route.anchor_ord(), n);
            EXPECT_EQ(at(seed_reps(ra.anchor).tilde) + anchor_offset(t, ra.route, ah), at(seed_reps(s).tilde))
                << to_string(s);
        }
    }
}

TEST(Ranker, RankInPackage) {
    const Seed s = seeds_of(Permutation{7, 2, 4, 1, 6, 5, 10, 9, 8, 3}).front();
    EXPECT_EQ(rank_in_package(LengthTables(10), Permutation{7, 2, 4, 1, 6, 5, 10, 9, 8, 3}, s), 268);
    EXPECT_THROW(rank_in_package(LengthTables(10), Permutation{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, s), std::domain_error);
}

TEST(Ranker, ExhaustiveSmallOrders) {
    for (int n = 4; n <= 7; ++n) {
        const SigmaTauPath path(n);
        const auto expanded = ref::expanded_path(n);
        for (std::size_t r = 0; r < expanded.size(); ++r) ASSERT_EQ(path.rank(expanded[r]), Rank(r)) << to_string(expanded[r]);
    }
}

TEST(Ranker, RandomPositionsOrderEight) {
    const SigmaTauPath path(8);
    const auto expanded = ref::expanded_path(8);
    std::mt19937 rng(8);
    for (int i = 0; i < 5000; ++i) {
        const std::size_t r = rng() % expanded.size();
        ASSERT_EQ(path.rank(expanded[r]), Rank(r));
    }
}

TEST(Ranker, RejectsWrongOrder) {
    const SigmaTauPath path(6);
    EXPECT_THROW(path.rank(Permutation{1, 2, 3, 4, 5}), std::invalid_argument);
}
