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

#include "dstc/dimming.hpp"

#include "dstc/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace dstc::dimming {

namespace {

constexpr double kFeasibilityTol = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

DimmingMatrix::DimmingMatrix(Matrix values, double level)
    : values_(std::move(values)), level_(level) {
    if (values_.rows() < 1 || values_.cols() < 1)
        throw DimensionError("dimming matrix must be nonempty");
    numerics::require_finite(values_, "dimming matrix");
    if (values_.minCoeff() < -kFeasibilityTol || values_.maxCoeff() > 1.0 + kFeasibilityTol)
        throw ConstraintViolationError("0 ≤ C[k,i] ≤ 1 violated");
}

DimmingMatrix DimmingMatrix::constant(int states, int transmitters, double level) {
    if (states < 1 || transmitters < 1) throw DimensionError("constant dimming: empty shape");
    return DimmingMatrix(Matrix::Constant(states, transmitters, level), level);
}

void ChromaticityTable::validate() const {
    if (channels.empty()) throw ConfigError("chromaticity table has no channels");
    for (const auto& c : channels) {
        if (c.x < 0 || c.x > 1 || c.y < 0 || c.y > 1 || c.x + c.y > 1.0 + kFeasibilityTol)
            throw ConfigError("chromaticity (" + fmt(c.x) + ", " + fmt(c.y) +
                              ") outside the CIE 1931 diagram");
    }
}

ChromaticityTable default_chromaticity(int channels) {
    ChromaticityTable t;
    t.channels = {{0.70, 0.29}, {0.30, 0.60}, {0.15, 0.06}};
    if (channels == 4) t.channels.push_back({0.40, 0.50});
    else if (channels != 3)
        throw ConfigError("default chromaticity exists for 3 or 4 channels, not " +
                          std::to_string(channels));
    return t;
}

DimmingMatrix build_dimming_matrix(const DimmingSpec& spec) {
    const int k = spec.states;
    const int n = spec.transmitters;
    if (n < 1) throw ConstraintViolationError("n_tx ≥ 1 violated");
    if (!numerics::hadamard_supported(k))
        throw ConstraintViolationError("K must be a supported Hadamard order (got K=" +
                                       std::to_string(k) + ")");
    if (n > k - 1)
        throw ConstraintViolationError("n_tx ≤ K − 1 violated (n_tx=" + std::to_string(n) +
                                       ", K=" + std::to_string(k) + ")");
    if (!(spec.level > 0.0 && spec.level < 1.0))
        throw ConstraintViolationError("0 < P_m < 1 violated (P_m=" + fmt(spec.level) + ")");
    if (!(spec.alpha >= 0.0) ||
        spec.alpha > std::min(spec.level, 1.0 - spec.level) + kFeasibilityTol)
        throw ConstraintViolationError("alpha ≤ min(P_m, 1−P_m) violated (alpha=" +
                                       fmt(spec.alpha) + ", P_m=" + fmt(spec.level) + ")");
    if (spec.alpha == 0.0)
        throw ConstraintViolationError("rank(C) = n_tx violated: alpha = 0 gives a rank-one C");

    std::vector<int> cols = spec.columns;
    if (cols.empty()) {
        for (int i = 0; i < n; ++i) cols.push_back(i + 2);
    }
    if (static_cast<int>(cols.size()) != n)
        throw ConstraintViolationError("column selection must name n_tx=" + std::to_string(n) +
                                       " Hadamard columns");
    if (std::set<int>(cols.begin(), cols.end()).size() != cols.size())
        throw ConstraintViolationError("column selection has duplicates");
    for (int c : cols)
        if (c < 2 || c > k)
            throw ConstraintViolationError("column selection index " + std::to_string(c) +
                                           " outside 2..K (index 1 is the constant column)");

    const Matrix h = numerics::hadamard(k);
    Matrix values(k, n);
    for (int i = 0; i < n; ++i)
        values.col(i) = (spec.level + spec.alpha * h.col(cols[i] - 1).array()).matrix();
    return DimmingMatrix(std::move(values), spec.level);
}

Matrix state_scaling(const DimmingMatrix& c, int state) {
    if (state < 0 || state >= c.states())
        throw DimensionError("state index " + std::to_string(state) + " outside [0, " +
                             std::to_string(c.states()) + ")");
    return c.values().row(state).transpose().asDiagonal();
}

std::vector<Matrix> transmit_block(const DimmingMatrix& c, const Matrix& symbols) {
    if (symbols.cols() != c.transmitters())
        throw DimensionError("transmit_block: symbol block has " +
                             std::to_string(symbols.cols()) + " columns, expected " +
                             std::to_string(c.transmitters()));
    std::vector<Matrix> out;
    out.reserve(c.states());
    for (int k = 0; k < c.states(); ++k)
        out.emplace_back(c.values().row(k).transpose().asDiagonal() * symbols.transpose());
    return out;
}

double average_power(const DimmingMatrix& c, const Matrix& symbols) {
    if (symbols.cols() != c.transmitters())
        throw DimensionError("average_power: symbol width mismatch");
    // mean_{k,n,i} C[k,i] S[n,i] over mean_{n,i} S[n,i]
    const Eigen::VectorXd led_totals = symbols.colwise().sum().transpose();
    const double undimmed = led_totals.sum();
    if (undimmed == 0.0) throw DegenerateInputError("average_power: all-zero symbol block");
    const double dimmed = (c.values().colwise().sum().transpose().cwiseProduct(led_totals)).sum() /
                          static_cast<double>(c.states());
    return dimmed / undimmed;
}

Chromaticity average_chromaticity(const DimmingMatrix& c, const Matrix& symbols,
                                  const ChromaticityTable& chroma) {
    chroma.validate();
    if (symbols.cols() != c.transmitters())
        throw DimensionError("average_chromaticity: symbol width mismatch");
    const auto channels = static_cast<int>(chroma.channels.size());
    if (c.transmitters() % channels != 0)
        throw DimensionError("average_chromaticity: n_tx is not a multiple of K_T");

    std::vector<double> power(channels, 0.0);
    const Eigen::VectorXd led_totals = symbols.colwise().sum().transpose();
    const Eigen::VectorXd state_totals = c.values().colwise().sum().transpose();
    for (int i = 0; i < c.transmitters(); ++i) power[i % channels] += state_totals(i) * led_totals(i);

    double total = 0.0;
    for (double p : power) total += p;
    if (!(total > 0.0)) throw DegenerateInputError("average_chromaticity: zero total power");

    Chromaticity out;
    for (int t = 0; t < channels; ++t) {
        out.x += power[t] / total * chroma.channels[t].x;
        out.y += power[t] / total * chroma.channels[t].y;
    }
    return out;
}

bool DesignReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

DesignReport validate_design(const DimmingMatrix& c, double tol) {
    DesignReport r;
    const Matrix& v = c.values();
    const bool bounded = v.minCoeff() >= -tol && v.maxCoeff() <= 1.0 + tol;
    r.checks.push_back({"0 ≤ C[k,i] ≤ 1", bounded,
                        "min " + fmt(v.minCoeff()) + ", max " + fmt(v.maxCoeff())});

    const Eigen::VectorXd means = v.colwise().mean().transpose();
    const double dev = (means.array() - c.level()).abs().maxCoeff();
    r.checks.push_back({"(1/K) Σ_k C[k,i] = P_m", dev <= tol,
                        "max |mean − P_m| = " + fmt(dev)});

    r.rank = numerics::numerical_rank(v);
    r.checks.push_back({"rank(C) = n_tx", r.rank == c.transmitters(),
                        "rank " + std::to_string(r.rank) + " of " +
                            std::to_string(c.transmitters())});

    // Full column rank already forces every column subset to be independent,
    // so the brute-force search is only needed (and only bounded) otherwise.
    if (r.rank == c.transmitters()) {
        r.kruskal_rank = c.transmitters();
        r.checks.push_back({"k-rank(C) = n_tx", true,
                            "k-rank " + std::to_string(r.kruskal_rank) + " (full column rank)"});
    } else if (static_cast<std::size_t>(v.cols()) <= numerics::kKruskalColumnGuard) {
        r.kruskal_rank = numerics::kruskal_rank(v);
        r.checks.push_back({"k-rank(C) = n_tx", false,
                            "k-rank " + std::to_string(r.kruskal_rank)});
    } else {
        r.kruskal_rank = -1;
        r.checks.push_back({"k-rank(C) = n_tx", false, "rank-deficient; too wide for brute force"});
    }
    r.condition_number = numerics::condition_number(v);
    return r;
}

}  // namespace dstc::dimming
