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

#pragma once

#include "dstc/numerics.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dstc::channel {

using numerics::Matrix;

enum class ChannelModel { gaussian, diagonal };

ChannelModel parse_channel_model(const std::string& name);
std::string to_string(ChannelModel model);

/// Seed of Monte Carlo trial `trial`: base XOR (trial * odd constant).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t trial);

/// Independent sub-stream of a trial seed (channel, payload, noise, ...).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

using Engine = std::mt19937_64;

/// gaussian: i.i.d. N(0, 1). diagonal: |N(0, 1)| on the leading diagonal,
/// zeros elsewhere (requires n_rx >= n_tx).
Matrix draw_channel(int n_rx, int n_tx, ChannelModel model, std::uint64_t seed);

/// n_rx x N x K received data cube, stored as K frontal slices Y_k.
struct ReceivedTensor {
    std::vector<Matrix> slices;
    double noise_variance = 0.0;

    Eigen::Index receivers() const { return slices.empty() ? 0 : slices.front().rows(); }
    Eigen::Index symbols() const { return slices.empty() ? 0 : slices.front().cols(); }
    Eigen::Index states() const { return static_cast<Eigen::Index>(slices.size()); }
};

/// sigma^2 such that mean_{k,i,n} (H X_k)^2 / sigma^2 equals snr_db.
/// An infinite snr_db yields zero.
double noise_variance_for(const Matrix& h, const std::vector<Matrix>& blocks, double snr_db);

/// Y_k = H X_k + N_k with N_k i.i.d. N(0, noise_variance).
ReceivedTensor propagate_with_variance(const Matrix& h, const std::vector<Matrix>& blocks,
                                       double noise_variance, std::uint64_t seed);

/// As above with the variance calibrated to snr_db over the whole block.
ReceivedTensor propagate(const Matrix& h, const std::vector<Matrix>& blocks, double snr_db,
                         std::uint64_t seed);

/// Builds the noiseless cube [[H, S, C]] directly from its factors.
ReceivedTensor compose(const Matrix& h, const Matrix& s, const Matrix& c);

/// Mode-n unfolding (n in {1, 2, 3}); the remaining modes are ordered with
/// the lower-numbered one varying fastest, so that
///   Y(1) = H (C ⋄ S)^T,  Y(2) = S (C ⋄ H)^T,  Y(3) = C (S ⋄ H)^T.
Matrix unfold(const ReceivedTensor& y, int mode);

}  // namespace dstc::channel
