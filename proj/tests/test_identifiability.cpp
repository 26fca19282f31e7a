/*
   Copyright 2026 The dstc-vlc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "dstc/identifiability.hpp"
#include "dstc/channel.hpp"
#include "dstc/csk.hpp"
#include "dstc/dimming.hpp"
#include "dstc/error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dstc;
using namespace dstc::identifiability;
using numerics::Matrix;

namespace {

Matrix random_symbols(int tx_channels, int tx_groups, int rows, std::uint32_t seed) {
    std::mt19937 gen(seed);
    csk::Bits b(2 * tx_groups * rows);
    for (auto& x : b) x = gen() & 1;
    return csk::modulate(b, rows, tx_groups, csk::default_constellation(tx_channels)).symbols;
}

Matrix gaussian(int r, int c, std::uint64_t seed) {
    return channel::draw_channel(r, c, channel::ChannelModel::gaussian, seed);
}

}  // namespace

TEST(Uniqueness, WideChannelStillUnique) {
    const Matrix c = dimming::build_dimming_matrix({8, 6}).values();
    const Matrix s = random_symbols(3, 2, 50, 1);
    const Matrix h = gaussian(4, 6, 2);
    // brute-force oracles for the three k-ranks
    const int kh = numerics::kruskal_rank(h), ks = numerics::kruskal_rank(s),
              kc = numerics::kruskal_rank(c);
    ASSERT_EQ(kh, 4);
    // the two groups' column sums coincide, so all six columns together are dependent
    ASSERT_EQ(ks, 5);
    ASSERT_EQ(kc, 6);
    const auto r = check_uniqueness(h, s, c);
    EXPECT_EQ(r.k_h, kh);
    EXPECT_EQ(r.k_s, ks);
    EXPECT_EQ(r.k_c, kc);
    EXPECT_EQ(r.rank, 6);
    EXPECT_TRUE(r.kruskal_sum_ok);  // 4 + 5 + 6 = 15 >= 14
    EXPECT_FALSE(r.prop1_ok);
    EXPECT_FALSE(r.prop2_ok);
    EXPECT_TRUE(r.unique());
}

TEST(Uniqueness, DuplicatedChannelColumn) {
    Matrix h = gaussian(4, 3, 3);
    h.col(1) = h.col(0);
    const Matrix c = dimming::build_dimming_matrix({4, 3}).values();
    const Matrix s = random_symbols(3, 1, 30, 4);
    const auto r = check_uniqueness(h, s, c);
    EXPECT_EQ(r.k_h, 1);
    EXPECT_EQ(r.k_s, 3);
    EXPECT_EQ(r.k_c, 3);
    EXPECT_FALSE(r.prop1_ok);
    EXPECT_FALSE(r.kruskal_sum_ok);
    EXPECT_FALSE(r.unique());
    EXPECT_NE(r.to_text().find("verdict: not unique"), std::string::npos);
}

TEST(Uniqueness, IdentityFactors) {
    const Matrix c = dimming::build_dimming_matrix({4, 3}).values();
    const Matrix s = random_symbols(3, 1, 30, 5);
    const auto r = check_uniqueness(Matrix::Identity(3, 3), s, c);
    EXPECT_EQ(r.k_h, 3);
    EXPECT_EQ(r.k_s, 3);
    EXPECT_EQ(r.k_c, 3);
    EXPECT_TRUE(r.h_diagonal);
    EXPECT_TRUE(r.unique());
    EXPECT_NE(r.to_text().find("verdict: unique"), std::string::npos);
}

TEST(Uniqueness, ShortBlockDiagonalChannel) {
    // N < R < n_rx with a tall diagonal channel
    Matrix h = Matrix::Zero(8, 6);
    for (int i = 0; i < 6; ++i) h(i, i) = 0.5 + i;
    const Matrix c = dimming::build_dimming_matrix({8, 6}).values();
    Matrix s(4, 6);
    s << 1, 0, 0, 1, 1, 0,
         0, 1, 0, 1, 0, 1,
         0, 0, 1, 0, 1, 1,
         1, 1, 1, 1, 1, 1;
    const auto r = check_uniqueness(h, s, c);
    EXPECT_EQ(r.k_h, 6);
    EXPECT_GE(r.k_s, 2);
    EXPECT_TRUE(r.h_diagonal);
    EXPECT_TRUE(r.prop2_ok);
    EXPECT_EQ(r.kruskal_sum_ok, r.k_h + r.k_s + r.k_c >= 14);
}

TEST(Uniqueness, ColumnMismatch) {
    EXPECT_THROW(check_uniqueness(Matrix::Ones(3, 3), Matrix::Ones(5, 2), Matrix::Ones(4, 3)),
                 DimensionError);
}

TEST(Uniqueness, GuardExceeded) {
    EXPECT_THROW(check_uniqueness(gaussian(16, 15, 1), gaussian(16, 15, 2), gaussian(16, 15, 3)),
                 SizeLimitError);
}

TEST(StructuralDiagonal, Cases) {
    EXPECT_TRUE(is_structurally_diagonal(Matrix::Identity(5, 3)));
    Matrix h = Matrix::Identity(4, 3);
    h(3, 0) = 1e-3;
    EXPECT_FALSE(is_structurally_diagonal(h));
}

TEST(Uniqueness, BooleansFollowRanks) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Matrix h = gaussian(4, 4, seed);
        if (seed % 3 == 0) h.col(2) = 2.0 * h.col(3);
        const auto r = check_uniqueness(h, random_symbols(4, 1, 20, seed),
                                        dimming::build_dimming_matrix({8, 4}).values());
        EXPECT_EQ(r.kruskal_sum_ok, r.k_h + r.k_s + r.k_c >= 2 * r.rank + 2);
        EXPECT_EQ(r.prop1_ok, r.k_s == 4 && r.k_c == 4 && r.k_h >= 2);
    }
}

// Default scenarios: TLED 2x2 with K in {8, 12} and QLED 2x2 with K in {12, 16}.
TEST(Uniqueness, DefaultScenariosAlmostSurely) {
    struct Case {
        int kt, lt, nrx, k;
    };
    for (const auto& sc : {Case{3, 2, 6, 8}, Case{3, 2, 6, 12}, Case{4, 2, 8, 12},
                           Case{4, 2, 8, 16}}) {
        const Matrix c = dimming::build_dimming_matrix({sc.k, sc.kt * sc.lt}).values();
        int unique = 0;
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const Matrix h = gaussian(sc.nrx, sc.kt * sc.lt, 7000 + seed);
            const Matrix s = random_symbols(sc.kt, sc.lt, 100, static_cast<std::uint32_t>(seed));
            unique += check_uniqueness(h, s, c).unique();
        }
        EXPECT_GE(unique, 990) << "K_T=" << sc.kt << " K=" << sc.k;
    }
}
