#include "sigtau/indexable_list.hpp"
#include "sigtau/inversion_vector.hpp"
#include "sigtau/stable_locator.hpp"
#include "sigtau/unranker.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace sigtau;

TEST(InversionVector, PlainOrder) {
    const std::vector<Element> seq{3, 1, 4, 2};
    const auto iv = inversion_vector(std::span<const Element>(seq), [](Element z) { return z; }, 5);
    EXPECT_EQ(iv.right_smaller(3), 2);
    EXPECT_EQ(iv.right_smaller(1), 0);
    EXPECT_EQ(iv.right_smaller(4), 1);
    EXPECT_EQ(iv.right_smaller(2), 0);
    EXPECT_EQ(iv.total(), 3);
    EXPECT_THROW(iv.right_smaller(0), std::out_of_range);
}

TEST(InversionVector, RejectsDuplicates) {
    const std::vector<Element> seq{2, 1, 2};
    EXPECT_THROW(inversion_vector(std::span<const Element>(seq), [](Element z) { return z; }, 3),
                 std::invalid_argument);
}

TEST(InversionVector, MatchesQuadraticCount) {
    std::mt19937 rng(7);
    for (int n = 5; n <= 40; ++n) {
        const auto plus = CyclicOrder::plus(n);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<Element> seq(n - 1);
            std::iota(seq.begin(), seq.end(), 1);
            std::shuffle(seq.begin(), seq.end(), rng);
            seq.resize(n - 2 - rep % 3);
            const Element a2 = 1 + static_cast<Element>(rng() % (n - 1));
            const auto iv = inversion_vector(std::span<const Element>(seq), plus, a2);
            auto key = [&](Element z) { return plus.descending_key(a2, z); };
            std::int64_t total = 0;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                std::int64_t c = 0;
                for (std::size_t j = i + 1; j < seq.size(); ++j) c += key(seq[j]) < key(seq[i]);
                EXPECT_EQ(iv.right_smaller(seq[i]), c);
                total += c;
            }
            EXPECT_EQ(iv.total(), total);
        }
    }
}

TEST(InversionVector, OtimesKeyIsAStrictOrder) {
    for (int n = 5; n <= 12; ++n) {
        const auto o = CyclicOrder::otimes(n);
        for (Element anchor = 1; anchor <= n - 1; ++anchor) {
            std::vector<std::size_t> keys;
            for (Element z = 1; z <= n - 1; ++z) keys.push_back(o.descending_key(anchor, z));
            std::sort(keys.begin(), keys.end());
            EXPECT_TRUE(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
            EXPECT_LT(keys.back(), o.key_range());
        }
    }
}

TEST(StableLocator, ValidatesRatios) {
    EXPECT_THROW(StableLocator({1, 3, 5}, Rank(10)), std::invalid_argument);
    EXPECT_THROW(StableLocator({1, 3, 40}, Rank(10)), std::invalid_argument);
    EXPECT_THROW(StableLocator({}, Rank(10)), std::invalid_argument);
    EXPECT_NO_THROW(StableLocator({1, 2, 4, 40}, Rank(10)));
}

TEST(StableLocator, BoundaryConvention) {
    const StableLocator loc({3, 6, 12, 24, 48, 96, 192, 384, 768, 1536}, Rank(2));
    EXPECT_EQ(loc.locate(3), 0u);
    EXPECT_EQ(loc.locate(5), 0u);
    EXPECT_EQ(loc.locate(6), 1u);
    EXPECT_EQ(loc.locate(1535), 8u);
    EXPECT_EQ(loc.locate(1536), 9u);
    EXPECT_THROW(loc.locate(2), std::out_of_range);
    EXPECT_THROW(loc.locate(1537), std::out_of_range);
}

namespace {

Rank random_below(std::mt19937_64& rng, const Rank& lo, const Rank& hi) {
    Rank r = 0;
    const auto bits = boost::multiprecision::msb(hi) + 64;
    for (std::size_t b = 0; b < bits; b += 64) r = (r << 64) | Rank(rng());
    return lo + r % (hi - lo + 1);
}

void agree_with_binary(const StableLocator& loc, std::mt19937_64& rng, int queries) {
    for (std::size_t j = 0; j < loc.size(); ++j) {
        ASSERT_EQ(loc.locate(loc[j]), j);
        if (j + 1 < loc.size()) {
            ASSERT_EQ(loc.locate(loc[j + 1] - 1), j);
        }
    }
    for (int q = 0; q < queries; ++q) {
        const Rank t = random_below(rng, loc[0], loc[loc.size() - 1]);
        ASSERT_EQ(loc.locate(t), loc.binary_locate(t)) << t;
    }
}

}  // namespace

TEST(StableLocator, AgreesWithBinarySearchOnDoubling) {
    std::vector<Rank> b;
    for (int i = 0; i < 300; ++i) b.push_back(Rank(1) << i);
    std::mt19937_64 rng(11);
    agree_with_binary(StableLocator(b, Rank(2)), rng, 100000);
}

TEST(StableLocator, AgreesWithBinarySearchOnPrefixSums) {
    std::mt19937_64 rng(12);
    for (int n : {8, 20, 64, 200, 1000}) {
        const LengthTables t(n);
        agree_with_binary(make_prefix_locator(t), rng, n == 1000 ? 100000 : 10000);
    }
}

TEST(StableLocator, AgreesOnRandomRatios) {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const int D = 2 + static_cast<int>(rng() % 50);
        std::vector<Rank> b{Rank(1 + rng() % 100)};
        for (int i = 0; i < 200; ++i) b.push_back(b.back() * 2 + random_below(rng, 0, b.back() * (D - 2)));
        agree_with_binary(StableLocator(b, Rank(D)), rng, 5000);
    }
}

TEST(StableLocator, PrefixRatiosStayInBounds) {
    for (int n = 4; n <= 64; ++n) {
        const LengthTables t(n);
        const auto& b = t.prefix_sums();
        for (std::size_t i = 1; i < b.size(); ++i) {
            EXPECT_GE(b[i], 2 * b[i - 1]) << "n=" << n << " i=" << i;
            EXPECT_LE(b[i], n * b[i - 1]) << "n=" << n << " i=" << i;
        }
    }
}

TEST(IndexableList, InsertFromEnd) {
    const std::vector<int> init{3, 2, 1};
    IndexableList<int> l{std::span<const int>(init)};
    l.insert_from_end(4, 2);
    EXPECT_EQ(l.to_sequence(), (std::vector<int>{3, 2, 4, 1}));
    l.insert_from_end(5, 1);
    l.insert_from_end(6, 6);
    EXPECT_EQ(l.to_sequence(), (std::vector<int>{6, 3, 2, 4, 1, 5}));
    EXPECT_THROW(l.insert_from_end(7, 0), std::out_of_range);
    EXPECT_THROW(l.insert_from_end(7, 8), std::out_of_range);
}

TEST(IndexableList, MatchesVectorSplicing) {
    std::mt19937 rng(3);
    IndexableList<int> l;
    std::vector<int> v;
    for (int i = 0; i < 5000; ++i) {
        const std::size_t k = 1 + rng() % (v.size() + 1);
        l.insert_from_end(i, k);
        v.insert(v.end() - static_cast<std::ptrdiff_t>(k - 1), i);
        ASSERT_EQ(l.size(), v.size());
    }
    EXPECT_EQ(l.to_sequence(), v);
}
