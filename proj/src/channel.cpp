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

#include "dstc/error.hpp"

#include <cmath>

namespace dstc::channel {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_blocks(const Matrix& h, const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw DimensionError("propagate: no transmit blocks");
    for (const auto& x : blocks) {
        if (x.rows() != h.cols())
            throw DimensionError("propagate: transmit block has " + std::to_string(x.rows()) +
                                 " rows, channel has " + std::to_string(h.cols()) + " inputs");
        if (x.cols() != blocks.front().cols())
            throw DimensionError("propagate: transmit blocks differ in length");
    }
}

}  // namespace

ChannelModel parse_channel_model(const std::string& name) {
    if (name == "gaussian") return ChannelModel::gaussian;
    if (name == "diagonal") return ChannelModel::diagonal;
    throw ConfigError("unknown channel model '" + name + "' (expected gaussian or diagonal)");
}

std::string to_string(ChannelModel model) {
    return model == ChannelModel::gaussian ? "gaussian" : "diagonal";
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial) {
    return base ^ (trial * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) + stream);
}

Matrix draw_channel(int n_rx, int n_tx, ChannelModel model, std::uint64_t seed) {
    if (n_rx < 1 || n_tx < 1) throw DimensionError("draw_channel: empty dimensions");
    Engine rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix h = Matrix::Zero(n_rx, n_tx);
    if (model == ChannelModel::gaussian) {
        for (int j = 0; j < n_tx; ++j)
            for (int i = 0; i < n_rx; ++i) h(i, j) = gauss(rng);
    } else {
        if (n_rx < n_tx)
            throw DimensionError("draw_channel: diagonal model needs n_rx >= n_tx");
        for (int i = 0; i < n_tx; ++i) h(i, i) = std::abs(gauss(rng));
    }
    return h;
}

double noise_variance_for(const Matrix& h, const std::vector<Matrix>& blocks, double snr_db) {
    check_blocks(h, blocks);
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    double energy = 0.0;
    double count = 0.0;
    for (const auto& x : blocks) {
        energy += (h * x).squaredNorm();
        count += static_cast<double>(h.rows() * x.cols());
    }
    const double power = energy / count;
    if (!(power > 0.0)) throw DegenerateInputError("propagate: noiseless signal is all-zero");
    return power / std::pow(10.0, snr_db / 10.0);
}

ReceivedTensor propagate_with_variance(const Matrix& h, const std::vector<Matrix>& blocks,
                                       double noise_variance, std::uint64_t seed) {
    check_blocks(h, blocks);
    if (!(noise_variance >= 0.0)) throw DegenerateInputError("propagate: negative noise variance");
    ReceivedTensor y;
    y.noise_variance = noise_variance;
    y.slices.reserve(blocks.size());
    Engine rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise_variance));
    for (const auto& x : blocks) {
        Matrix yk = h * x;
        if (noise_variance > 0.0) {
            for (Eigen::Index n = 0; n < yk.cols(); ++n)
                for (Eigen::Index i = 0; i < yk.rows(); ++i) yk(i, n) += gauss(rng);
        }
        y.slices.push_back(std::move(yk));
    }
    return y;
}

ReceivedTensor propagate(const Matrix& h, const std::vector<Matrix>& blocks, double snr_db,
                         std::uint64_t seed) {
    return propagate_with_variance(h, blocks, noise_variance_for(h, blocks, snr_db), seed);
}

ReceivedTensor compose(const Matrix& h, const Matrix& s, const Matrix& c) {
    if (h.cols() != s.cols() || h.cols() != c.cols())
        throw DimensionError("compose: factors must share the column count");
    ReceivedTensor y;
    for (Eigen::Index k = 0; k < c.rows(); ++k)
        y.slices.emplace_back(h * c.row(k).transpose().asDiagonal() * s.transpose());
    return y;
}

Matrix unfold(const ReceivedTensor& y, int mode) {
    const Eigen::Index ni = y.receivers(), nn = y.symbols(), nk = y.states();
    switch (mode) {
    case 1: {
        Matrix out(ni, nn * nk);
        for (Eigen::Index k = 0; k < nk; ++k) out.middleCols(k * nn, nn) = y.slices[k];
        return out;
    }
    case 2: {
        Matrix out(nn, ni * nk);
        for (Eigen::Index k = 0; k < nk; ++k)
            out.middleCols(k * ni, ni) = y.slices[k].transpose();
        return out;
    }
    case 3: {
        Matrix out(nk, ni * nn);
        for (Eigen::Index k = 0; k < nk; ++k)
            out.row(k) = y.slices[k].reshaped(1, ni * nn);
        return out;
    }
    default:
        throw DimensionError("unfold: mode must be 1, 2 or 3, got " + std::to_string(mode));
    }
}

}  // namespace dstc::channel
