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

#include <string>
#include <vector>

namespace dstc::dimming {

using numerics::Matrix;

struct DimmingSpec {
    int states = 0;        // K, a supported Hadamard order
    int transmitters = 0;  // K_T * L_T
    double level = 0.5;    // target normalized dimming level P_m
    double alpha = 0.4;    // variation amplitude
    // 1-based Hadamard column indices; empty selects 2..transmitters+1.
    std::vector<int> columns;
};

/// K x n_tx matrix of per-state, per-LED intensity scale factors.
class DimmingMatrix {
public:
    /// Wraps an arbitrary scale matrix; only checks shape, finiteness and
    /// the [0, 1] bound. Use build_dimming_matrix for a validated design.
    DimmingMatrix(Matrix values, double level);

    /// Every state scales every LED by `level` (no temporal variation).
    static DimmingMatrix constant(int states, int transmitters, double level);

    const Matrix& values() const noexcept { return values_; }
    int states() const noexcept { return static_cast<int>(values_.rows()); }
    int transmitters() const noexcept { return static_cast<int>(values_.cols()); }
    double level() const noexcept { return level_; }

private:
    Matrix values_;
    double level_;
};

struct Chromaticity {
    double x = 0.0;
    double y = 0.0;
};

/// CIE 1931 coordinates of each color channel of a transmitter group.
struct ChromaticityTable {
    std::vector<Chromaticity> channels;

    void validate() const;
};

/// RGB primaries, plus a yellow channel when `channels` is 4.
ChromaticityTable default_chromaticity(int channels);

/// C = P_m * 1 + alpha * B with B the selected Hadamard columns.
/// Throws ConstraintViolationError naming the violated inequality.
DimmingMatrix build_dimming_matrix(const DimmingSpec& spec);

/// Diagonal matrix holding row `state` (0-based) of C.
Matrix state_scaling(const DimmingMatrix& c, int state);

/// X_k = Psi_k S^T for every state k. `symbols` is N x n_tx.
std::vector<Matrix> transmit_block(const DimmingMatrix& c, const Matrix& symbols);

/// Mean transmitted intensity relative to the undimmed (C = 1) block.
double average_power(const DimmingMatrix& c, const Matrix& symbols);

/// Power-weighted mean chromaticity. LED i belongs to color channel
/// i mod K_T, where K_T = chroma.channels.size().
Chromaticity average_chromaticity(const DimmingMatrix& c, const Matrix& symbols,
                                  const ChromaticityTable& chroma);

struct DesignCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct DesignReport {
    std::vector<DesignCheck> checks;
    Eigen::Index rank = 0;
    int kruskal_rank = 0;
    double condition_number = 0.0;

    bool all_passed() const;
};

/// Evaluates nonnegativity/boundedness, per-LED mean level and full column
/// rank of a dimming matrix.
DesignReport validate_design(const DimmingMatrix& c, double tol = 1e-12);

}  // namespace dstc::dimming
