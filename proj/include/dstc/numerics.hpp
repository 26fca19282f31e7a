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

#include <Eigen/Dense>

#include <cstddef>

namespace dstc::numerics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Leading singular value with its unit left/right singular vectors.
struct SingularTriplet {
    double sigma = 0.0;
    Vector u;
    Vector v;
};

inline constexpr double kPinvRelativeTolerance = 1e-12;
inline constexpr double kKruskalDefaultTolerance = 1e-9;
inline constexpr std::size_t kKruskalColumnGuard = 14;
inline constexpr int kSvdIterationCap = 10000;

/// Throws DegenerateInputError if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);

Matrix kronecker(const Matrix& a, const Matrix& b);

/// Column-wise Kronecker product: column r is a_r ⊗ b_r.
Matrix khatri_rao(const Matrix& a, const Matrix& b);

/// Column-stacking vectorization; the result is a single column.
Matrix vec(const Matrix& m);
Matrix unvec(const Matrix& v, Eigen::Index rows, Eigen::Index cols);

/// Moore-Penrose inverse from a full SVD. Singular values at or below
/// 1e-12 * max(rows, cols) * sigma_max are treated as zero.
Matrix pseudoinverse(const Matrix& m);

/// Number of singular values above the pseudoinverse truncation threshold.
Eigen::Index numerical_rank(const Matrix& m);

/// 2-norm condition number sigma_max / sigma_min (infinite if rank-deficient).
double condition_number(const Matrix& m);

/// Best rank-one approximation of a nonzero matrix.
///
/// The leading eigenvector of the smaller Gram matrix seeds a power
/// iteration that runs until successive sigma estimates agree to 1e-12
/// (relative), capped at kSvdIterationCap sweeps. The first entry of u with
/// magnitude above 1e-12 is made nonnegative.
SingularTriplet leading_singular_triplet(const Matrix& m);

/// Hadamard matrix with a normalized (all-ones) first column.
///
/// Supported orders: 1, 2, powers of two (Sylvester), q + 1 for primes
/// q ≡ 3 (mod 4) (Paley I), and Kronecker products of supported orders.
Matrix hadamard(int order);

/// True if hadamard(order) would succeed.
bool hadamard_supported(int order);

/// Largest k such that every k-column subset is linearly independent.
/// Brute force; limited to kKruskalColumnGuard columns.
int kruskal_rank(const Matrix& m, double tol = kKruskalDefaultTolerance);

}  // namespace dstc::numerics
