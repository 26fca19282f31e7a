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

#include "dstc/csk.hpp"

#include "dstc/error.hpp"

#include <limits>
#include <string>

namespace dstc::csk {

void Constellation::validate() const {
    if (channels < 1) throw ConfigError("constellation needs at least one channel");
    if (points.size() != 4) throw ConfigError("4-CSK constellation needs exactly 4 points");
    for (const auto& p : points) {
        if (p.size() != channels) throw ConfigError("constellation point has wrong length");
        if (!p.allFinite() || p.minCoeff() < 0.0 || p.maxCoeff() > 1.0)
            throw ConfigError("constellation point entries must lie in [0, 1]");
    }
    if (!(min_distance() > 0.0)) throw ConfigError("constellation points must be distinct");
}

double Constellation::min_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            d = std::min(d, (points[a] - points[b]).norm());
    return d;
}

Constellation default_constellation(int channels) {
    Constellation c;
    c.channels = channels;
    if (channels == 4) {
        for (int i = 0; i < 4; ++i) c.points.push_back(Eigen::VectorXd::Unit(4, i));
    } else if (channels == 3) {
        for (int i = 0; i < 3; ++i) c.points.push_back(Eigen::VectorXd::Unit(3, i));
        c.points.push_back(Eigen::VectorXd::Constant(3, 1.0 / 3.0));
    } else {
        throw ConfigError("default 4-CSK constellation exists for K_T = 3 or 4, not " +
                          std::to_string(channels));
    }
    return c;
}

SymbolBlock modulate(const Bits& bits, int rows, int groups, const Constellation& constellation) {
    if (rows < 1 || groups < 1) throw DimensionError("modulate: empty block");
    const auto expected = static_cast<std::size_t>(Constellation::kBitsPerSymbol) * rows * groups;
    if (bits.size() != expected)
        throw DimensionError("modulate: expected " + std::to_string(expected) + " bits, got " +
                             std::to_string(bits.size()));
    const int kt = constellation.channels;
    SymbolBlock block;
    block.groups = groups;
    block.bits = bits;
    block.symbols.resize(rows, kt * groups);
    for (int n = 0; n < rows; ++n) {
        for (int l = 0; l < groups; ++l) {
            const std::size_t at = 2 * (static_cast<std::size_t>(n) * groups + l);
            const int label = ((bits[at] & 1) << 1) | (bits[at + 1] & 1);
            block.symbols.block(n, l * kt, 1, kt) = constellation.points[label].transpose();
        }
    }
    return block;
}

SymbolBlock demodulate(const Matrix& estimate, const Constellation& constellation) {
    const int kt = constellation.channels;
    if (estimate.cols() % kt != 0)
        throw DimensionError("demodulate: column count is not a multiple of K_T");
    const int groups = static_cast<int>(estimate.cols()) / kt;
    const auto rows = estimate.rows();

    SymbolBlock out;
    out.groups = groups;
    out.symbols.resize(rows, estimate.cols());
    out.bits.resize(2 * static_cast<std::size_t>(rows) * groups);
    for (Eigen::Index n = 0; n < rows; ++n) {
        for (int l = 0; l < groups; ++l) {
            const Eigen::VectorXd sub = estimate.block(n, l * kt, 1, kt).transpose();
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int p = 0; p < static_cast<int>(constellation.points.size()); ++p) {
                const double d = (sub - constellation.points[p]).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = p;
                }
            }
            out.symbols.block(n, l * kt, 1, kt) = constellation.points[best].transpose();
            const std::size_t at = 2 * (static_cast<std::size_t>(n) * groups + l);
            out.bits[at] = static_cast<std::uint8_t>((best >> 1) & 1);
            out.bits[at + 1] = static_cast<std::uint8_t>(best & 1);
        }
    }
    return out;
}

Matrix pilot_block(int transmitters) {
    if (transmitters < 1) throw DimensionError("pilot_block: need at least one transmitter");
    return Matrix::Identity(transmitters, transmitters);
}

Eigen::RowVectorXd training_row(const Constellation& constellation, int groups) {
    const int kt = constellation.channels;
    Eigen::VectorXd unit = Eigen::VectorXd::Constant(kt, 1.0 / kt);
    for (const auto& p : constellation.points) {
        if (p.minCoeff() > 0.0) {
            unit = p;
            break;
        }
    }
    Eigen::RowVectorXd row(kt * groups);
    for (int l = 0; l < groups; ++l) row.segment(l * kt, kt) = unit.transpose();
    return row;
}

}  // namespace dstc::csk
