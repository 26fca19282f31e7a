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

#include "dstc/channel.hpp"
#include "dstc/csk.hpp"
#include "dstc/dimming.hpp"
#include "dstc/numerics.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace dstc::receivers {

using numerics::Matrix;

enum class ReceiverTag { zf, krf, plain_csk };

std::string to_string(ReceiverTag tag);
ReceiverTag parse_receiver(const std::string& name);

struct EstimationResult {
    ReceiverTag receiver = ReceiverTag::zf;
    Matrix h_hat;                      // n_rx x n_tx
    std::optional<Matrix> h_eff_hat;   // K n_rx x n_tx, ZF only
    Matrix s_hat;                      // N x n_tx soft estimates
    csk::SymbolBlock detected;         // sliced symbols and bits
    Eigen::VectorXd delta;             // per-column scale fix, KRF only
};

/// Stacks the K slices vertically: rows [k n_rx, (k+1) n_rx) hold Y_k.
Matrix stack_received(const channel::ReceivedTensor& y);

/// H_e whose block k is H Psi_k.
Matrix effective_channel(const Matrix& h, const dimming::DimmingMatrix& c);

/// H_e estimate Y0 (S0^T)^+ from the stacked pilot observations.
Matrix zf_estimate_channel(const Matrix& y0, const Matrix& s0);

/// n_rx x n_tx channel read back out of an effective-channel estimate:
/// for each LED j, block k column j divided by C[k, j], averaged over the
/// states where C[k, j] is nonzero.
Matrix extract_channel(const Matrix& h_eff, const dimming::DimmingMatrix& c);

/// S_hat = (H_e_hat^+ Y_bar)^T followed by minimum-distance slicing.
EstimationResult zf_detect(const Matrix& y_bar, const Matrix& h_eff_hat,
                           const csk::Constellation& constellation);

/// A transmitted row known to the receiver (0-based row index).
struct KnownRow {
    Eigen::Index index = 0;
    Eigen::RowVectorXd values;
};

/// Semi-blind Khatri-Rao factorization receiver.
///
/// Q = Y(3)^T (C^T)^+ estimates S ⋄ H. Column r is reshaped to an
/// n_rx x N matrix whose best rank-one fit sigma u v^T gives h_r = sigma u
/// and s_r = v. The known row fixes each column's scale:
/// delta = S_n ./ S_hat_n, S_hat <- S_hat diag(delta), H_hat <- H_hat diag(delta)^-1.
EstimationResult krf_detect(const channel::ReceivedTensor& y, const dimming::DimmingMatrix& c,
                            const KnownRow& known, const csk::Constellation& constellation);

/// Conventional single-state CSK (C = 1, K = 1) with identity pilots and ZF.
/// Both phases use the noise variance calibrated to `snr_db` on the data block.
EstimationResult plain_csk_baseline(const Matrix& h, const Matrix& symbols, double snr_db,
                                    const csk::Constellation& constellation,
                                    std::uint64_t pilot_seed, std::uint64_t data_seed);

}  // namespace dstc::receivers
