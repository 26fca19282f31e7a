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

#include "dstc/channel.hpp"
#include "dstc/dimming.hpp"
#include "dstc/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace dstc;
using namespace dstc::channel;
using numerics::Matrix;

namespace {

Matrix random_matrix(int r, int c, std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> d(0, 1);
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = d(gen);
    return m;
}

double signal_mean_square(const Matrix& h, const std::vector<Matrix>& blocks) {
    double sum = 0;
    long long count = 0;
    for (const auto& x : blocks) {
        const Matrix y = h * x;
        sum += y.squaredNorm();
        count += y.size();
    }
    return sum / count;
}

std::vector<double> sorted_entries(const Matrix& m) {
    std::vector<double> v(m.data(), m.data() + m.size());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST(Seeds, TrialSeedsDiffer) {
    EXPECT_EQ(trial_seed(7, 0), 7u);
    EXPECT_NE(trial_seed(7, 1), trial_seed(7, 2));
    EXPECT_NE(stream_seed(5, 1), stream_seed(5, 2));
    EXPECT_EQ(stream_seed(5, 1), stream_seed(5, 1));
}

TEST(DrawChannel, Deterministic) {
    EXPECT_EQ(draw_channel(8, 8, ChannelModel::gaussian, 42),
              draw_channel(8, 8, ChannelModel::gaussian, 42));
    EXPECT_NE(draw_channel(8, 8, ChannelModel::gaussian, 42),
              draw_channel(8, 8, ChannelModel::gaussian, 43));
}

TEST(DrawChannel, DiagonalModel) {
    const Matrix h = draw_channel(4, 4, ChannelModel::diagonal, 3);
    int nonzero = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (h(i, j) != 0.0) {
                ++nonzero;
                EXPECT_EQ(i, j);
                EXPECT_GT(h(i, j), 0.0);
            }
    EXPECT_EQ(nonzero, 4);
    EXPECT_THROW(draw_channel(3, 4, ChannelModel::diagonal, 3), DimensionError);
}

TEST(DrawChannel, GaussianMoments) {
    const Matrix h = draw_channel(100, 100, ChannelModel::gaussian, 9);
    const double mean = h.mean();
    const double var = (h.array() - mean).square().sum() / (h.size() - 1);
    EXPECT_NEAR(mean, 0.0, 0.1);
    EXPECT_NEAR(var, 1.0, 0.1);
}

TEST(DrawChannel, ParseModel) {
    EXPECT_EQ(parse_channel_model("gaussian"), ChannelModel::gaussian);
    EXPECT_EQ(parse_channel_model("diagonal"), ChannelModel::diagonal);
    EXPECT_EQ(to_string(ChannelModel::diagonal), "diagonal");
    EXPECT_THROW(parse_channel_model("rayleigh"), ConfigError);
}

TEST(Noise, InfiniteSnrIsNoiseless) {
    const Matrix h = random_matrix(3, 2, 1);
    const std::vector<Matrix> x{random_matrix(2, 5, 2), random_matrix(2, 5, 3)};
    const auto y = propagate(h, x, std::numeric_limits<double>::infinity(), 4);
    EXPECT_EQ(y.noise_variance, 0.0);
    EXPECT_EQ(y.slices[1], h * x[1]);
}

TEST(Noise, ZeroSignalRejected) {
    const std::vector<Matrix> x{Matrix::Zero(2, 5)};
    EXPECT_THROW(noise_variance_for(random_matrix(3, 2, 1), x, 10.0), DegenerateInputError);
}

TEST(Noise, VarianceFormula) {
    const Matrix h = random_matrix(4, 3, 5);
    const std::vector<Matrix> x{random_matrix(3, 7, 6)};
    const double p = signal_mean_square(h, x);
    EXPECT_NEAR(noise_variance_for(h, x, 20.0), p / 100.0, 1e-15 * p);
    EXPECT_NEAR(noise_variance_for(h, x, 0.0), p, 1e-15 * p);
}

namespace {

double empirical_snr_db(int entries_per_block, int blocks, double target, std::uint64_t seed) {
    const Matrix h = random_matrix(4, 4, 17);
    std::vector<Matrix> x;
    for (int k = 0; k < blocks; ++k) x.push_back(random_matrix(4, entries_per_block / 4, 100 + k));
    const auto y = propagate(h, x, target, seed);
    double noise = 0;
    long long count = 0;
    for (int k = 0; k < blocks; ++k) {
        noise += (y.slices[k] - h * x[k]).squaredNorm();
        count += y.slices[k].size();
    }
    return 10 * std::log10(signal_mean_square(h, x) / (noise / count));
}

}  // namespace

TEST(Noise, EmpiricalSnrTenThousand) {
    for (double target : {0.0, 10.0, 25.0})
        EXPECT_NEAR(empirical_snr_db(2500, 4, target, 77), target, 0.2);
}

TEST(Noise, EmpiricalSnrMillion) {
    EXPECT_NEAR(empirical_snr_db(100000, 10, 15.0, 78), 15.0, 0.05);
}

TEST(Unfold, IdentitiesOnRandomShapes) {
    std::mt19937 gen(2024);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int t = 0; t < 100; ++t) {
        const int i = dim(gen), j = dim(gen), k = dim(gen), r = dim(gen);
        const Matrix a = random_matrix(i, r, 3 * t);
        const Matrix b = random_matrix(j, r, 3 * t + 1);
        const Matrix c = random_matrix(k, r, 3 * t + 2);
        const auto y = compose(a, b, c);
        ASSERT_EQ(y.receivers(), i);
        ASSERT_EQ(y.symbols(), j);
        ASSERT_EQ(y.states(), k);
        const Matrix y1 = unfold(y, 1), y2 = unfold(y, 2), y3 = unfold(y, 3);
        EXPECT_LT((y1 - a * numerics::khatri_rao(c, b).transpose()).norm(), 1e-10);
        EXPECT_LT((y2 - b * numerics::khatri_rao(c, a).transpose()).norm(), 1e-10);
        EXPECT_LT((y3 - c * numerics::khatri_rao(b, a).transpose()).norm(), 1e-10);
        // each unfolding is a permutation of the same entries
        Matrix all(i, j * k);
        for (int kk = 0; kk < k; ++kk) all.middleCols(kk * j, j) = y.slices[kk];
        EXPECT_EQ(sorted_entries(y1), sorted_entries(all));
        EXPECT_EQ(sorted_entries(y2), sorted_entries(all));
        EXPECT_EQ(sorted_entries(y3), sorted_entries(all));
    }
}

TEST(Unfold, SliceIdentity) {
    const Matrix h = random_matrix(3, 2, 1), s = random_matrix(5, 2, 2), c = random_matrix(4, 2, 3);
    const auto y = compose(h, s, c);
    const Matrix sh = numerics::khatri_rao(s, h);
    for (int k = 0; k < 4; ++k)
        EXPECT_LT((numerics::vec(y.slices[k]) - sh * c.row(k).transpose()).norm(), 1e-12);
}

TEST(Unfold, ScalarTensor) {
    const auto y = compose(Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, 3.0),
                           Matrix::Constant(1, 1, 5.0));
    for (int mode : {1, 2, 3}) EXPECT_EQ(unfold(y, mode)(0, 0), 30.0);
    EXPECT_THROW(unfold(y, 4), DimensionError);
}

TEST(Propagate, MatchesTransmitBlocks) {
    const auto c = dimming::build_dimming_matrix({4, 3});
    const Matrix s = random_matrix(6, 3, 8).cwiseAbs();
    const Matrix h = random_matrix(2, 3, 9);
    const auto y = propagate_with_variance(h, dimming::transmit_block(c, s), 0.0, 1);
    const auto ref = compose(h, s, c.values());
    for (int k = 0; k < 4; ++k) EXPECT_LT((y.slices[k] - ref.slices[k]).norm(), 1e-12);
}
