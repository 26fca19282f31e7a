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

#include "dstc/numerics.hpp"

#include "dstc/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dstc::numerics {

namespace {

using IntMatrix = Eigen::MatrixXi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

IntMatrix sylvester(int order) {
    IntMatrix h = IntMatrix::Ones(1, 1);
    while (h.rows() < order) {
        const auto n = h.rows();
        IntMatrix next(2 * n, 2 * n);
        next << h, h, h, -h;
        h = std::move(next);
    }
    return h;
}

// Paley type I for order q + 1, q prime with q ≡ 3 (mod 4).
IntMatrix paley_one(int order) {
    const int q = order - 1;
    std::vector<int> chi(q, -1);
    chi[0] = 0;
    for (int x = 1; x < q; ++x) chi[(x * x) % q] = 1;

    IntMatrix s = IntMatrix::Zero(order, order);
    for (int j = 1; j < order; ++j) {
        s(0, j) = 1;
        s(j, 0) = -1;
    }
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) s(i + 1, j + 1) = chi[((j - i) % q + q) % q];

    IntMatrix h = s + IntMatrix::Identity(order, order);
    for (int i = 0; i < order; ++i)
        if (h(i, 0) < 0) h.row(i) *= -1;
    return h;
}

IntMatrix kronecker_int(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::optional<IntMatrix> build_hadamard(int order) {
    if (order < 1) return std::nullopt;
    if (is_power_of_two(order)) return sylvester(order);
    if (order % 4 != 0) return std::nullopt;
    if (is_prime(order - 1) && (order - 1) % 4 == 3) return paley_one(order);
    for (int a = 2; a * a <= order; ++a) {
        if (order % a != 0) continue;
        auto left = build_hadamard(a);
        if (!left) continue;
        auto right = build_hadamard(order / a);
        if (right) return kronecker_int(*left, *right);
    }
    return std::nullopt;
}

double truncation_threshold(const Matrix& m, double sigma_max) {
    return kPinvRelativeTolerance * static_cast<double>(std::max(m.rows(), m.cols())) * sigma_max;
}

}  // namespace

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw DegenerateInputError(std::string(what) + ": non-finite entry");
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix khatri_rao(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw DimensionError("khatri_rao: column counts differ (" + std::to_string(a.cols()) +
                             " vs " + std::to_string(b.cols()) + ")");
    Matrix out(a.rows() * b.rows(), a.cols());
    for (Eigen::Index r = 0; r < a.cols(); ++r)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            out.col(r).segment(i * b.rows(), b.rows()) = a(i, r) * b.col(r);
    return out;
}

Matrix vec(const Matrix& m) {
    return m.reshaped(m.size(), 1);
}

Matrix unvec(const Matrix& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.cols() != 1 || v.rows() != rows * cols)
        throw DimensionError("unvec: expected a column of " + std::to_string(rows * cols) +
                             " entries, got " + std::to_string(v.rows()) + "x" +
                             std::to_string(v.cols()));
    return v.reshaped(rows, cols);
}

Matrix pseudoinverse(const Matrix& m) {
    require_finite(m, "pseudoinverse");
    if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    const double tau = truncation_threshold(m, s.size() ? s(0) : 0.0);
    Vector inv = Vector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tau) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::Index numerical_rank(const Matrix& m) {
    require_finite(m, "numerical_rank");
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    const double tau = truncation_threshold(m, s(0));
    return (s.array() > tau).count();
}

double condition_number(const Matrix& m) {
    require_finite(m, "condition_number");
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin <= truncation_threshold(m, s(0))) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

SingularTriplet leading_singular_triplet(const Matrix& m) {
    require_finite(m, "leading_singular_triplet");
    if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateInputError("leading_singular_triplet: all-zero matrix");

    // Work on whichever Gram matrix is smaller.
    const bool left = m.rows() <= m.cols();
    const Matrix gram = left ? Matrix(m * m.transpose()) : Matrix(m.transpose() * m);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    Vector x = eig.eigenvectors().col(gram.rows() - 1);
    double lambda = x.dot(gram * x);

    bool converged = false;
    for (int it = 0; it < kSvdIterationCap; ++it) {
        Vector y = gram * x;
        const double norm = y.norm();
        if (norm == 0.0) throw DegenerateInputError("leading_singular_triplet: zero Gram image");
        x = y / norm;
        const double next = x.dot(gram * x);
        const double s_prev = std::sqrt(std::max(lambda, 0.0));
        const double s_next = std::sqrt(std::max(next, 0.0));
        lambda = next;
        if (std::abs(s_next - s_prev) <= 1e-12 * s_next) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("leading_singular_triplet: iteration cap exhausted");

    SingularTriplet t;
    if (left) {
        t.u = x;
        Vector w = m.transpose() * t.u;
        t.sigma = w.norm();
        t.v = w / t.sigma;
    } else {
        t.v = x;
        Vector w = m * t.v;
        t.sigma = w.norm();
        t.u = w / t.sigma;
    }
    if (!(t.sigma > 0.0)) throw DegenerateInputError("leading_singular_triplet: sigma is zero");

    for (Eigen::Index i = 0; i < t.u.size(); ++i) {
        if (std::abs(t.u(i)) > 1e-12) {
            if (t.u(i) < 0) {
                t.u = -t.u;
                t.v = -t.v;
            }
            break;
        }
    }
    return t;
}

bool hadamard_supported(int order) { return build_hadamard(order).has_value(); }

Matrix hadamard(int order) {
    auto h = build_hadamard(order);
    if (!h)
        throw ConstructionUnavailableError(
            "hadamard: no construction for order " + std::to_string(order) +
            "; supported: 1, 2, powers of two (Sylvester), q+1 with prime q ≡ 3 mod 4 (Paley I), "
            "and Kronecker products of these");
    return h->cast<double>();
}

int kruskal_rank(const Matrix& m, double tol) {
    require_finite(m, "kruskal_rank");
    const auto cols = static_cast<int>(m.cols());
    if (static_cast<std::size_t>(cols) > kKruskalColumnGuard)
        throw SizeLimitError("kruskal_rank: " + std::to_string(cols) +
                             " columns exceeds brute-force guard of " +
                             std::to_string(kKruskalColumnGuard));
    for (int j = 0; j < cols; ++j)
        if (m.col(j).cwiseAbs().maxCoeff() == 0.0) return 0;

    std::vector<int> idx;
    for (int k = 1; k <= cols; ++k) {
        if (k > m.rows()) return k - 1;
        idx.resize(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Matrix sub(m.rows(), k);
            for (int i = 0; i < k; ++i) sub.col(i) = m.col(idx[i]);
            Eigen::JacobiSVD<Matrix> svd(sub);
            const Vector& s = svd.singularValues();
            if (!(s(k - 1) > tol * s(0))) return k - 1;

            // next combination in lexicographic order
            int i = k - 1;
            while (i >= 0 && idx[i] == cols - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return cols;
}

}  // namespace dstc::numerics
