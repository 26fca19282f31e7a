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

#include "dstc/receivers.hpp"

#include "dstc/error.hpp"

#include <cmath>

namespace dstc::receivers {

std::string to_string(ReceiverTag tag) {
    switch (tag) {
    case ReceiverTag::zf: return "ZF";
    case ReceiverTag::krf: return "VLC-KRF";
    case ReceiverTag::plain_csk: return "plain-CSK";
    }
    return "?";
}

ReceiverTag parse_receiver(const std::string& name) {
    if (name == "ZF" || name == "zf") return ReceiverTag::zf;
    if (name == "VLC-KRF" || name == "krf" || name == "KRF") return ReceiverTag::krf;
    if (name == "plain-CSK" || name == "plain" || name == "csk") return ReceiverTag::plain_csk;
    throw ConfigError("unknown receiver '" + name + "' (expected ZF, VLC-KRF or plain-CSK)");
}

Matrix stack_received(const channel::ReceivedTensor& y) {
    const auto nr = y.receivers();
    Matrix out(nr * y.states(), y.symbols());
    for (Eigen::Index k = 0; k < y.states(); ++k) out.middleRows(k * nr, nr) = y.slices[k];
    return out;
}

Matrix effective_channel(const Matrix& h, const dimming::DimmingMatrix& c) {
    if (h.cols() != c.transmitters())
        throw DimensionError("effective_channel: H has " + std::to_string(h.cols()) +
                             " columns, C has " + std::to_string(c.transmitters()));
    const auto nr = h.rows();
    Matrix he(nr * c.states(), h.cols());
    for (int k = 0; k < c.states(); ++k)
        he.middleRows(k * nr, nr) = h * c.values().row(k).transpose().asDiagonal();
    return he;
}

Matrix zf_estimate_channel(const Matrix& y0, const Matrix& s0) {
    if (s0.rows() != s0.cols())
        throw DimensionError("zf_estimate_channel: pilot block must be square");
    if (y0.cols() != s0.rows())
        throw DimensionError("zf_estimate_channel: pilot observation has " +
                             std::to_string(y0.cols()) + " slots, pilot block has " +
                             std::to_string(s0.rows()));
    if (numerics::numerical_rank(s0) != s0.rows())
        throw DegenerateInputError("zf_estimate_channel: pilot block is rank-deficient");
    return y0 * numerics::pseudoinverse(s0.transpose());
}

Matrix extract_channel(const Matrix& h_eff, const dimming::DimmingMatrix& c) {
    const int nk = c.states();
    if (h_eff.rows() % nk != 0 || h_eff.cols() != c.transmitters())
        throw DimensionError("extract_channel: effective channel does not match C");
    const auto nr = h_eff.rows() / nk;
    Matrix h = Matrix::Zero(nr, h_eff.cols());
    for (Eigen::Index j = 0; j < h_eff.cols(); ++j) {
        int used = 0;
        for (int k = 0; k < nk; ++k) {
            const double scale = c.values()(k, j);
            if (std::abs(scale) <= 1e-12) continue;
            h.col(j) += h_eff.block(k * nr, j, nr, 1) / scale;
            ++used;
        }
        if (used == 0)
            throw DegenerateInputError("extract_channel: LED " + std::to_string(j) +
                                       " is dark in every state");
        h.col(j) /= used;
    }
    return h;
}

EstimationResult zf_detect(const Matrix& y_bar, const Matrix& h_eff_hat,
                           const csk::Constellation& constellation) {
    if (y_bar.rows() != h_eff_hat.rows())
        throw DimensionError("zf_detect: stacked observation has " +
                             std::to_string(y_bar.rows()) + " rows, channel estimate has " +
                             std::to_string(h_eff_hat.rows()));
    const Matrix pinv = numerics::pseudoinverse(h_eff_hat);
    if (pinv.cwiseAbs().maxCoeff() == 0.0)
        throw EqualizationFailureError("zf_detect: every singular value of the channel truncated");

    EstimationResult r;
    r.receiver = ReceiverTag::zf;
    r.h_eff_hat = h_eff_hat;
    r.s_hat = (pinv * y_bar).transpose();
    r.detected = csk::demodulate(r.s_hat, constellation);
    return r;
}

EstimationResult krf_detect(const channel::ReceivedTensor& y, const dimming::DimmingMatrix& c,
                            const KnownRow& known, const csk::Constellation& constellation) {
    const Matrix& cv = c.values();
    const auto nt = cv.cols();
    const auto nr = y.receivers();
    const auto nn = y.symbols();
    if (y.states() != cv.rows())
        throw DimensionError("krf_detect: tensor has " + std::to_string(y.states()) +
                             " states, C has " + std::to_string(cv.rows()));
    if (known.values.size() != nt || known.index < 0 || known.index >= nn)
        throw DimensionError("krf_detect: known row does not fit the symbol block");
    if (numerics::numerical_rank(cv) != nt)
        throw DegenerateInputError("krf_detect: C must have full column rank");

    const Matrix q = unfold(y, 3).transpose() * numerics::pseudoinverse(cv.transpose());

    EstimationResult r;
    r.receiver = ReceiverTag::krf;
    r.h_hat.resize(nr, nt);
    r.s_hat.resize(nn, nt);
    r.delta.resize(nt);
    for (Eigen::Index col = 0; col < nt; ++col) {
        const Matrix qr = numerics::unvec(q.col(col), nr, nn);
        const auto t = numerics::leading_singular_triplet(qr);
        r.h_hat.col(col) = t.sigma * t.u;
        r.s_hat.col(col) = t.v;
    }

    for (Eigen::Index col = 0; col < nt; ++col) {
        const double target = known.values(col);
        const double estimate = r.s_hat(known.index, col);
        const double scale = r.s_hat.col(col).cwiseAbs().maxCoeff();
        if (target == 0.0 || std::abs(estimate) <= 1e-14 * scale)
            throw AmbiguityFailureError(
                "krf_detect: cannot resolve the scale of column " + std::to_string(col) +
                    (target == 0.0 ? " (known entry is zero)" : " (estimated entry is zero)"),
                static_cast<std::size_t>(col));
        r.delta(col) = target / estimate;
    }
    r.s_hat = r.s_hat * r.delta.asDiagonal();
    r.h_hat = r.h_hat * r.delta.cwiseInverse().asDiagonal();
    r.detected = csk::demodulate(r.s_hat, constellation);
    return r;
}

EstimationResult plain_csk_baseline(const Matrix& h, const Matrix& symbols, double snr_db,
                                    const csk::Constellation& constellation,
                                    std::uint64_t pilot_seed, std::uint64_t data_seed) {
    const auto nt = h.cols();
    if (h.rows() < nt)
        throw DimensionError("plain_csk_baseline: needs n_rx >= n_tx");
    if (symbols.cols() != nt) throw DimensionError("plain_csk_baseline: symbol width mismatch");

    const std::vector<Matrix> data{symbols.transpose()};
    const double variance = channel::noise_variance_for(h, data, snr_db);
    const Matrix s0 = csk::pilot_block(static_cast<int>(nt));
    const auto pilots =
        channel::propagate_with_variance(h, {s0.transpose()}, variance, pilot_seed);
    const auto received = channel::propagate_with_variance(h, data, variance, data_seed);

    const Matrix h_hat = zf_estimate_channel(pilots.slices.front(), s0);
    EstimationResult r = zf_detect(received.slices.front(), h_hat, constellation);
    r.receiver = ReceiverTag::plain_csk;
    r.h_hat = h_hat;
    r.h_eff_hat.reset();
    return r;
}

}  // namespace dstc::receivers
