#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "gnt/multiindex.hpp"
#include "oracles.hpp"

using gnt::MultiIndex;

namespace {

MultiIndex mi(std::vector<int> e) { return MultiIndex(std::move(e)); }

}  // namespace

TEST(MultiIndex, SharpIncrementsOneAxis) {
    EXPECT_EQ(gnt::sharp(0, mi({1, 0})), mi({2, 0}));
    EXPECT_EQ(gnt::sharp(1, mi({0, 0})), mi({0, 1}));
    EXPECT_EQ(gnt::sharp(2, mi({2, 1, 5})), mi({2, 1, 6}));
}

TEST(MultiIndex, FlatIsAbsentBelowZero) {
    EXPECT_EQ(gnt::flat(0, mi({2, 0})), mi({1, 0}));
    EXPECT_FALSE(gnt::flat(1, mi({1, 0})).has_value());
    EXPECT_FALSE(gnt::flat(0, gnt::flat(0, mi({1, 1}))).has_value());
}

TEST(MultiIndex, RejectsBadInput) {
    EXPECT_THROW(mi({}), std::invalid_argument);
    EXPECT_THROW(mi({1, -1}), std::invalid_argument);
    EXPECT_THROW(gnt::sharp(2, mi({0, 0})), std::out_of_range);
}

TEST(MultiIndex, MusicalMapsInvertAndCommute) {
    for (int q = 1; q <= 3; ++q) {
        for (const auto& u : gnt::enumerate_multiindices(q, 4)) {
            for (int a = 0; a < q; ++a) {
                EXPECT_EQ(gnt::flat(a, gnt::sharp(a, u)), u);
                if (u[a] >= 1) EXPECT_EQ(gnt::sharp(a, *gnt::flat(a, u)), u);
                for (int b = 0; b < q; ++b)
                    EXPECT_EQ(gnt::sharp(a, gnt::sharp(b, u)), gnt::sharp(b, gnt::sharp(a, u)));
            }
        }
    }
}

TEST(MultiIndex, EnumerationGradedLex) {
    EXPECT_EQ(gnt::enumerate_multiindices(2, 1), (std::vector<MultiIndex>{mi({0, 0}), mi({0, 1}), mi({1, 0})}));
    EXPECT_EQ(gnt::enumerate_multiindices(1, 3), (std::vector<MultiIndex>{mi({0}), mi({1}), mi({2}), mi({3})}));
    EXPECT_EQ(gnt::enumerate_multiindices(2, 2).size(), 6u);

    // Count against brute force over the box [0, w]^q.
    for (int q = 1; q <= 4; ++q) {
        for (int w = 0; w <= 5; ++w) {
            std::size_t brute = 0;
            std::vector<int> e(static_cast<std::size_t>(q), 0);
            while (true) {
                int s = 0;
                for (int v : e) s += v;
                if (s <= w) ++brute;
                int pos = q - 1;
                while (pos >= 0 && e[static_cast<std::size_t>(pos)] == w) e[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
                ++e[static_cast<std::size_t>(pos)];
            }
            const auto all = gnt::enumerate_multiindices(q, w);
            EXPECT_EQ(all.size(), brute);
            EXPECT_EQ(static_cast<long long>(all.size()), gnt::binomial(q + w, q));
            EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
            EXPECT_EQ(all, gnt::enumerate_multiindices(q, w));
        }
    }
}

TEST(SelectionWord, MatchesBruteForceMatrices) {
    const auto words = gnt::enumerate_selections(2, 2);
    std::vector<std::vector<int>> letters;
    for (const auto& w : words) letters.push_back(w.letters());
    EXPECT_EQ(letters, (std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));

    for (int q = 1; q <= 3; ++q) {
        for (int s = 0; s <= 4; ++s) {
            std::set<std::vector<int>> ours;
            for (const auto& w : gnt::enumerate_selections(q, s)) ours.insert(w.letters());
            const auto brute = oracle::selection_matrices(q, s);
            EXPECT_EQ(ours, std::set<std::vector<int>>(brute.begin(), brute.end()));
        }
    }
}

TEST(SelectionWord, CountsAndWeights) {
    for (int q = 1; q <= 4; ++q) {
        long long expected = 1;
        for (int s = 0; s <= 6; ++s) {
            const auto words = gnt::enumerate_selections(q, s);
            EXPECT_EQ(static_cast<long long>(words.size()), expected) << "q=" << q << " s=" << s;
            for (const auto& w : words) EXPECT_EQ(w.weight().weight(), s);
            expected *= q;
        }
    }
    const auto empty = gnt::enumerate_selections(3, 0);
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_EQ(empty[0].length(), 0);
    EXPECT_EQ(empty[0].weight(), MultiIndex::zero(3));

    const gnt::SelectionWord w(2, {0, 1, 0});
    EXPECT_EQ(w.weight(), mi({2, 1}));
    EXPECT_EQ(w.length(), 3);
}

TEST(MonomialBasis, LookupAndProducts) {
    const gnt::MonomialBasis basis(3, 4);
    for (std::size_t k = 0; k < basis.size(); ++k) EXPECT_EQ(basis.find(basis[k]), k);
    EXPECT_FALSE(basis.find(mi({2, 2, 1})).has_value());
    for (const auto& term : basis.product_table()) {
        for (int a = 0; a < 3; ++a) EXPECT_EQ(basis[term.a][a] + basis[term.b][a], basis[term.c][a]);
    }
}
