// SPDX-License-Identifier: Apache-2.0
//
// riwf: robust iterative water-filling for multi-user power allocation
// Copyright (C) 2026 The riwf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIWF_ANALYSIS_HPP
#define RIWF_ANALYSIS_HPP

#include "model.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace riwf {

/// Dense square matrix, row-major.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    SquareMatrix transposed() const;
    bool is_symmetric() const;
    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Interference-ratio matrix on sub-channel k: W_ij = h_ji^k / h_ii^k off
/// the diagonal, zero on it.
SquareMatrix build_W(const ChannelRealization& channel, std::size_t k);

/// Entry-wise max over sub-channels of build_W.
SquareMatrix build_W_max(const ChannelRealization& channel);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(const SquareMatrix& a);

/// Largest |eigenvalue| of (W + W^T) / 2.
double spectral_radius(const SquareMatrix& w);

/// Largest singular value.
double operator_norm_2(const SquareMatrix& w);

double frobenius_norm(const SquareMatrix& w);

struct CertificateResult {
    std::string name;
    bool passed = false;
    std::vector<double> margins; // lhs - 1 per inequality (per sub-channel or one scalar)
    double margin = 0.0;         // max of margins
    std::vector<std::pair<std::string, std::vector<double>>> components;

    const std::vector<double>& component(const std::string& key) const;
};

/// Per-sub-channel test min{rho((W+W^T)/2), ||W||_2} + ||w(k)||_2 < 1 with
/// w(k) the users' relative bounds on sub-channel k. Symmetric W(k) uses
/// rho(W(k)) directly.
CertificateResult check_rne_uniqueness(const ChannelRealization& channel, const UncertaintySpec& spec);

/// Scalar test ||W_max||_2 + sqrt(M) * ||w_max||_2 < 1, with
/// w_max_i = max_k s_bar_i^k * eps_i^k.
CertificateResult check_async_convergence(const ChannelRealization& channel, const Table& interference_bounds,
                                          const UncertaintySpec& spec);

/// Nominal normalized interference of every user at `reference` (M x K).
Table interference_at(const ChannelRealization& channel, const PowerProfile& reference);

/// 1 - (sum_{i<j} |K_i n K_j|) / (sum_{i<j} min(|K_i|, |K_j|)), with
/// K_i = {k : p_i^k > threshold}; 1 when the denominator vanishes.
double orthogonality_index(const PowerProfile& profile, double threshold);

/// 1e-3 * min_i p_max[i].
double default_orthogonality_threshold(const PowerConstraints& constraints);

/// Utilities at the nominal interference the profile induces.
std::vector<double> per_user_utilities(const PowerProfile& profile, const ChannelRealization& channel);
double social_utility(const PowerProfile& profile, const ChannelRealization& channel);

/// Utilities the robust game itself scores: interference scaled by the
/// uncertainty multiplier (floored). Equals the nominal values for eps == 0.
std::vector<double> robust_per_user_utilities(const PowerProfile& profile, const ChannelRealization& channel,
                                              const UncertaintySpec& spec);
double robust_social_utility(const PowerProfile& profile, const ChannelRealization& channel,
                             const UncertaintySpec& spec);

} // namespace riwf

#endif
