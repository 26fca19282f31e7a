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

#include "dstc/error.hpp"

#include <cmath>
#include <sstream>

namespace dstc::identifiability {

std::string UniquenessReport::to_text() const {
    std::ostringstream os;
    os << "R: " << rank << '\n'
       << "k_H: " << k_h << '\n'
       << "k_S: " << k_s << '\n'
       << "k_C: " << k_c << '\n'
       << "kruskal_sum: " << (k_h + k_s + k_c) << " >= " << (2 * rank + 2) << " "
       << (kruskal_sum_ok ? "ok" : "fails") << '\n'
       << "h_diagonal: " << (h_diagonal ? "yes" : "no") << '\n'
       << "prop1: " << (prop1_ok ? "ok" : "fails") << '\n'
       << "prop2: " << (prop2_ok ? "ok" : "fails") << '\n'
       << "verdict: " << (unique() ? "unique" : "not unique") << '\n';
    return os.str();
}

bool is_structurally_diagonal(const Matrix& h, double tol) {
    for (Eigen::Index j = 0; j < h.cols(); ++j)
        for (Eigen::Index i = 0; i < h.rows(); ++i)
            if (i != j && std::abs(h(i, j)) > tol) return false;
    return true;
}

UniquenessReport check_uniqueness(const Matrix& h, const Matrix& s, const Matrix& c, double tol) {
    if (h.cols() != s.cols() || h.cols() != c.cols())
        throw DimensionError("check_uniqueness: H, S and C must share the column count (" +
                             std::to_string(h.cols()) + ", " + std::to_string(s.cols()) + ", " +
                             std::to_string(c.cols()) + ")");
    UniquenessReport r;
    r.rank = static_cast<int>(h.cols());
    r.k_h = numerics::kruskal_rank(h, tol);
    r.k_s = numerics::kruskal_rank(s, tol);
    r.k_c = numerics::kruskal_rank(c, tol);
    r.kruskal_sum_ok = r.k_h + r.k_s + r.k_c >= 2 * r.rank + 2;
    r.h_diagonal = is_structurally_diagonal(h);
    r.prop1_ok = r.k_s == r.rank && r.k_c == r.rank && r.k_h >= 2;
    r.prop2_ok = s.rows() < r.rank && h.rows() > r.rank && r.h_diagonal && r.k_h == r.rank &&
                 r.k_c == r.rank && r.k_s >= 2;
    return r;
}

}  // namespace dstc::identifiability
