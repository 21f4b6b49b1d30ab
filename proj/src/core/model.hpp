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

#ifndef RIWF_MODEL_HPP
#define RIWF_MODEL_HPP

#include "table.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace riwf {

/// Lower bound applied to every effective interference value (linear units).
inline constexpr double kInterferenceFloor = 1e-12;

/// Feasibility slack on the per-user budget sum.
inline constexpr double kBudgetTolerance = 1e-9;

/// Flat per-sub-channel gains h_ji^k and noise powers sigma_i^k for an
/// M-user, K-sub-channel interference network.
class ChannelRealization {
public:
    ChannelRealization() = default;

    /// gains is indexed [j][i][k] (transmitter j, receiver i) flattened
    /// row-major; noise is M x K. Throws InvalidChannel on non-finite or
    /// negative entries, or a non-positive direct gain.
    ChannelRealization(std::size_t users, std::size_t subchannels, std::vector<double> gains, Table noise);

    std::size_t users() const noexcept { return users_; }
    std::size_t subchannels() const noexcept { return subchannels_; }

    double gain(std::size_t tx, std::size_t rx, std::size_t k) const {
        return gains_[(tx * users_ + rx) * subchannels_ + k];
    }
    double noise(std::size_t rx, std::size_t k) const { return noise_(rx, k); }

    const std::vector<double>& gains() const noexcept { return gains_; }
    const Table& noise() const noexcept { return noise_; }

    bool operator==(const ChannelRealization&) const = default;

private:
    std::size_t users_ = 0;
    std::size_t subchannels_ = 0;
    std::vector<double> gains_;
    Table noise_;
};

struct PowerConstraints {
    std::vector<double> p_max; // per-user total budget
    Table mask;                // per-user, per-sub-channel cap

    /// Same budget and flat mask for every user.
    static PowerConstraints uniform(std::size_t users, std::size_t subchannels, double p_max, double mask);

    void validate(std::size_t users, std::size_t subchannels) const;
    bool operator==(const PowerConstraints&) const = default;
};

enum class UncertaintyMode { Nominal, WorstCase, Probabilistic };

std::string_view to_string(UncertaintyMode mode);
UncertaintyMode parse_mode(std::string_view text);

/// Per-(user, sub-channel) relative interval bounds on the normalized
/// interference plus the robustness model applied to them.
struct UncertaintySpec {
    UncertaintyMode mode = UncertaintyMode::Nominal;
    double delta0 = 0.5; // Probabilistic only
    Table eps;           // M x K, >= 0

    static UncertaintySpec nominal(std::size_t users, std::size_t subchannels);
    static UncertaintySpec uniform(std::size_t users, std::size_t subchannels, UncertaintyMode mode, double eps,
                                   double delta0 = 0.5);

    /// Scalar applied to s_bar_i^k: 1, 1+eps, or 1-eps+2*eps*delta0.
    double multiplier(std::size_t user, std::size_t k) const;

    /// |multiplier - 1|: the relative perturbation actually applied.
    double relative_bound(std::size_t user, std::size_t k) const;

    /// True when some probabilistic multiplier is <= 0 and the floor takes over.
    bool degenerate() const;

    void validate(std::size_t users, std::size_t subchannels) const;
    bool operator==(const UncertaintySpec&) const = default;
};

struct Scenario {
    ChannelRealization channel;
    PowerConstraints constraints;
    UncertaintySpec uncertainty;
    std::uint64_t seed = 0;

    std::size_t users() const noexcept { return channel.users(); }
    std::size_t subchannels() const noexcept { return channel.subchannels(); }

    void validate() const;
    bool operator==(const Scenario&) const = default;
};

/// s_i^k = (sum_{j != i} p_j^k h_ji^k + sigma_i^k) / h_ii^k for every k.
std::vector<double> normalized_interference(const ChannelRealization& channel, const PowerProfile& profile,
                                            std::size_t user);

/// Shannon-type utility sum_k ln(1 + p[k]/s[k]) in nats.
double user_utility(std::span<const double> power, std::span<const double> interference);

/// Applies the mode's multiplier per sub-channel, floored at kInterferenceFloor.
std::vector<double> effective_interference(std::span<const double> nominal, const UncertaintySpec& spec,
                                           std::size_t user);

/// Half-width of the smallest centred interval holding probability mass
/// `coverage` of a uniform error on [-half_width, half_width].
double epsilon_from_uniform(double half_width, double coverage);

bool is_feasible(const PowerProfile& profile, const PowerConstraints& constraints,
                 double tolerance = kBudgetTolerance);

/// Every user transmits at its mask on every sub-channel.
PowerProfile mask_profile(const PowerConstraints& constraints);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct GeneratorParams {
    std::size_t users = 8;
    std::size_t subchannels = 64;
    Range direct{0.0, 0.1};
    Range cross{0.0, 0.01};
    Range noise{0.0, 0.01};
    bool fading = true;
    double p_max = 1.0;
    double mask = 1.0;
    UncertaintyMode mode = UncertaintyMode::Nominal;
    double eps = 0.0;
    double delta0 = 0.5;
    std::uint64_t seed = 0;

    static GeneratorParams low_interference();
    static GeneratorParams high_interference();
};

/// Seeded random channel draw. Deterministic for a given parameter set.
Scenario random_scenario(const GeneratorParams& params);

} // namespace riwf

#endif
