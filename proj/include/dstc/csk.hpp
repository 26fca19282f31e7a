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
#include <vector>

namespace dstc::csk {

using numerics::Matrix;
using Bits = std::vector<std::uint8_t>;

/// 4-CSK intensity constellation for one transmitter group.
/// Point p carries the two bits (p >> 1, p & 1).
struct Constellation {
    int channels = 0;            // K_T
    std::vector<Eigen::VectorXd> points;

    static constexpr int kBitsPerSymbol = 2;

    void validate() const;
    double min_distance() const;
};

/// N x (K_T L_T) intensity block; columns [l K_T, (l+1) K_T) belong to group l.
struct SymbolBlock {
    Matrix symbols;
    Bits bits;
    int groups = 0;  // L_T
};

/// K_T = 4: unit vectors. K_T = 3: unit vectors plus the centroid.
Constellation default_constellation(int channels);

/// Row n, group l carries bits 2(n L_T + l) and 2(n L_T + l) + 1.
SymbolBlock modulate(const Bits& bits, int rows, int groups, const Constellation& constellation);

/// Minimum-distance slicing per row and group; ties go to the lowest index.
SymbolBlock demodulate(const Matrix& estimate, const Constellation& constellation);

/// Identity pilots: slot i lights LED i alone at full intensity.
Matrix pilot_block(int transmitters);

/// Zero-free row used as the single known training slot: the first
/// constellation point with all entries positive, or 1/K_T in every
/// channel if no such point exists. Repeated over `groups` groups.
Eigen::RowVectorXd training_row(const Constellation& constellation, int groups);

}  // namespace dstc::csk
