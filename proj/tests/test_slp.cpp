#include "reference.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace sigtau;

TEST(Slp, Seq6Structure) {
    const auto prog = build_program(6);
    const std::string text = prog.to_text();
    EXPECT_NE(text.find("W0 -> s1"), std::string::npos) << text;
    EXPECT_NE(text.find("SEQ -> g1 g1 g1 g1 s2 V t V t V t V t V"), std::string::npos) << text;
    EXPECT_EQ(prog.rule(prog.start()).name, "SEQ");
    const auto lengths = prog.expanded_lengths();
    EXPECT_EQ(lengths[prog.start()], 719);
}

TEST(Slp, RejectsForwardReferences) {
    Program p(5);
    EXPECT_THROW(p.add_rule("X", {Symbol::ref(0)}), std::invalid_argument);
    p.add_rule("A", {Symbol::t()});
    EXPECT_NO_THROW(p.add_rule("B", {Symbol::ref(0), Symbol::s(2)}));
    EXPECT_THROW(p.set_start(5), std::out_of_range);
}

TEST(LengthTables, KnownValues) {
    const LengthTables t(10);
    EXPECT_EQ(t.w(0), 1);
    EXPECT_EQ(t.w(1), 81);
    EXPECT_EQ(t.seq(), factorial(10) - 1);
    EXPECT_EQ(t.block(), 10 * factorial(8) - 2);
    EXPECT_EQ(t.sum(3, 4), 1955);
    EXPECT_EQ(t.sum(5, 5), 83246);
    EXPECT_EQ(t.sum(7, 3) - t.w(6) - 2, 289621);
}

TEST(LengthTables, SeqLengthIsFactorialMinusOne) {
    for (int n = 4; n <= 60; ++n) {
        const LengthTables t(n);
        EXPECT_EQ(t.seq(), factorial(n) - 1) << n;
        EXPECT_EQ(t.block(), Rank(n) * factorial(n - 2) - 2) << n;
    }
}

TEST(LengthTables, SumMatchesDefinition) {
    for (int n = 5; n <= 30; ++n) {
        const LengthTables t(n);
        for (int k = 1; k <= n - 3; ++k) {
            Rank acc = 1;
            for (int j = 1; j <= n - 1; ++j) {
                EXPECT_EQ(t.sum(k, j), acc + j) << "n=" << n << " k=" << k << " j=" << j;
                if (j < n - 1) acc += (n - 1) + t.w(delta(k, j, n));
            }
        }
    }
}

TEST(LengthTables, MatchExpandedGrammar) {
    for (int n = 4; n <= 9; ++n) {
        const auto prog = build_program(n, true);
        const LengthTables t(n);
        for (int k = 0; k <= n - 3; ++k) {
            const auto letters = expand(prog, prog.index(w_name(k)));
            EXPECT_EQ(Rank(letters.size()), t.w(k)) << "n=" << n << " k=" << k;
        }
        EXPECT_EQ(Rank(expand(prog, prog.index("V")).size()), t.v());
        EXPECT_EQ(Rank(expand(prog).size()), t.seq());
    }
}

TEST(Slp, FirstLettersOfSeq6) {
    const auto prog = build_program(6);
    LetterStream s(prog);
    std::string got;
    for (int i = 0; i < 12; ++i) got.push_back(to_char(*s.next()));
    // g1^4 s2, then V opens with g3.
    EXPECT_EQ(got, "ststststssss");
}

TEST(Slp, StreamEndsAfterAllLetters) {
    const auto prog = build_program(7);
    LetterStream s(prog);
    std::size_t count = 0;
    while (s.next()) ++count;
    EXPECT_EQ(count, 5039u);
    EXPECT_FALSE(s.next().has_value());
}

// Walking W_k from psi~ stays inside the packages of psi and its
// descendants and never repeats a permutation.
TEST(Slp, WordGeneratesBunch) {
    for (int n = 5; n <= 7; ++n) {
        const auto prog = build_program(n, true);
        for (const auto& s : ref::all_seeds(n)) {
            if (is_hub(s)) continue;
            const int k = height(s);
            auto walk = PermutationWalk<LetterStream>(seed_reps(s).tilde, LetterStream(prog, prog.index(w_name(k))));
            std::set<Permutation> got;
            while (walk.next()) got.insert(walk.current());
            std::set<Permutation> want;
            std::vector<Seed> todo{s};
            while (!todo.empty()) {
                Seed cur = todo.back();
                todo.pop_back();
                for (const auto& p : package_perms(cur)) want.insert(p);
                if (height(cur) >= 2)
                    for (int i = 1; i <= n - 3; ++i) todo.push_back(son(cur, i));
            }
            EXPECT_TRUE(std::includes(want.begin(), want.end(), got.begin(), got.end())) << to_string(s);
            EXPECT_EQ(Rank(got.size()), LengthTables(n).w(k) + 1) << to_string(s);
        }
    }
}
