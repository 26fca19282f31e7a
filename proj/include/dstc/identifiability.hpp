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

namespace dstc::identifiability {

using numerics::Matrix;

/// Kruskal ranks of the three PARAFAC factors and the sufficient
/// conditions they satisfy.
struct UniquenessReport {
    int k_h = 0;
    int k_s = 0;
    int k_c = 0;
    int rank = 0;              // R = n_tx
    bool kruskal_sum_ok = false;  // k_H + k_S + k_C >= 2R + 2
    bool h_diagonal = false;      // only (i, i) entries of H are nonzero
    bool prop1_ok = false;        // k_S = k_C = R and k_H >= 2
    bool prop2_ok = false;        // N < R < n_rx, diagonal H with k_H = R, k_C = R, k_S >= 2

    bool unique() const noexcept { return kruskal_sum_ok; }
    std::string to_text() const;
};

/// True when every entry off the main diagonal has magnitude <= tol.
bool is_structurally_diagonal(const Matrix& h, double tol = 1e-12);

UniquenessReport check_uniqueness(const Matrix& h, const Matrix& s, const Matrix& c,
                                  double tol = numerics::kKruskalDefaultTolerance);

}  // namespace dstc::identifiability
