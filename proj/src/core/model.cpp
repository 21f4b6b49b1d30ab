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

#include "model.hpp"

#include "error.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace riwf {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

std::string at(std::size_t i, std::size_t k) {
    return "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
}

} // namespace

ChannelRealization::ChannelRealization(std::size_t users, std::size_t subchannels, std::vector<double> gains,
                                       Table noise)
    : users_(users), subchannels_(subchannels), gains_(std::move(gains)), noise_(std::move(noise)) {
    if (users_ == 0 || subchannels_ == 0) fail(ErrorCode::InvalidChannel, "channel needs M >= 1 and K >= 1");
    if (gains_.size() != users_ * users_ * subchannels_)
        fail(ErrorCode::InvalidChannel, "gains must hold M*M*K entries");
    if (noise_.rows() != users_ || noise_.cols() != subchannels_)
        fail(ErrorCode::InvalidChannel, "noise must be M x K");
    for (std::size_t j = 0; j < users_; ++j)
        for (std::size_t i = 0; i < users_; ++i)
            for (std::size_t k = 0; k < subchannels_; ++k) {
                const double g = gain(j, i, k);
                if (!finite_nonneg(g))
                    fail(ErrorCode::InvalidChannel, "gains[" + std::to_string(j) + "]" + at(i, k) +
                                                        " must be finite and nonnegative");
                if (i == j && !(g > 0.0))
                    fail(ErrorCode::InvalidChannel, "direct gain gains[" + std::to_string(i) + "]" + at(i, k) +
                                                        " must be positive");
            }
    for (std::size_t i = 0; i < users_; ++i)
        for (std::size_t k = 0; k < subchannels_; ++k)
            if (!finite_nonneg(noise_(i, k)))
                fail(ErrorCode::InvalidChannel, "noise" + at(i, k) + " must be finite and nonnegative");
}

PowerConstraints PowerConstraints::uniform(std::size_t users, std::size_t subchannels, double p_max, double mask) {
    return PowerConstraints{std::vector<double>(users, p_max), Table(users, subchannels, mask)};
}

void PowerConstraints::validate(std::size_t users, std::size_t subchannels) const {
    require(p_max.size() == users, "p_max must have one entry per user");
    require(mask.rows() == users && mask.cols() == subchannels, "mask must be M x K");
    for (std::size_t i = 0; i < users; ++i) {
        require(std::isfinite(p_max[i]) && p_max[i] > 0.0, "p_max[" + std::to_string(i) + "] must be positive");
        for (std::size_t k = 0; k < subchannels; ++k)
            require(std::isfinite(mask(i, k)) && mask(i, k) > 0.0, "mask" + at(i, k) + " must be positive");
    }
}

std::string_view to_string(UncertaintyMode mode) {
    switch (mode) {
    case UncertaintyMode::Nominal: return "nominal";
    case UncertaintyMode::WorstCase: return "worstcase";
    case UncertaintyMode::Probabilistic: return "probabilistic";
    }
    return "nominal";
}

UncertaintyMode parse_mode(std::string_view text) {
    if (text == "nominal") return UncertaintyMode::Nominal;
    if (text == "worstcase" || text == "worst-case" || text == "worst_case") return UncertaintyMode::WorstCase;
    if (text == "probabilistic") return UncertaintyMode::Probabilistic;
    fail(ErrorCode::InvalidArgument, "unknown uncertainty mode '" + std::string(text) + "'");
}

UncertaintySpec UncertaintySpec::nominal(std::size_t users, std::size_t subchannels) {
    return UncertaintySpec{UncertaintyMode::Nominal, 0.5, Table(users, subchannels, 0.0)};
}

UncertaintySpec UncertaintySpec::uniform(std::size_t users, std::size_t subchannels, UncertaintyMode mode, double eps,
                                         double delta0) {
    return UncertaintySpec{mode, delta0, Table(users, subchannels, eps)};
}

double UncertaintySpec::multiplier(std::size_t user, std::size_t k) const {
    const double e = eps(user, k);
    switch (mode) {
    case UncertaintyMode::Nominal: return 1.0;
    case UncertaintyMode::WorstCase: return 1.0 + e;
    case UncertaintyMode::Probabilistic: return 1.0 - e + 2.0 * e * delta0;
    }
    return 1.0;
}

double UncertaintySpec::relative_bound(std::size_t user, std::size_t k) const {
    return std::abs(multiplier(user, k) - 1.0);
}

bool UncertaintySpec::degenerate() const {
    if (mode != UncertaintyMode::Probabilistic) return false;
    for (std::size_t i = 0; i < eps.rows(); ++i)
        for (std::size_t k = 0; k < eps.cols(); ++k)
            if (multiplier(i, k) <= 0.0) return true;
    return false;
}

void UncertaintySpec::validate(std::size_t users, std::size_t subchannels) const {
    require(eps.rows() == users && eps.cols() == subchannels, "eps must be M x K");
    for (std::size_t i = 0; i < users; ++i)
        for (std::size_t k = 0; k < subchannels; ++k)
            require(finite_nonneg(eps(i, k)), "eps" + at(i, k) + " must be finite and nonnegative");
    if (mode == UncertaintyMode::Probabilistic)
        require(std::isfinite(delta0) && delta0 >= 0.0 && delta0 <= 1.0, "delta0 must lie in [0, 1]");
}

void Scenario::validate() const {
    constraints.validate(users(), subchannels());
    uncertainty.validate(users(), subchannels());
}

std::vector<double> normalized_interference(const ChannelRealization& channel, const PowerProfile& profile,
                                            std::size_t user) {
    const std::size_t m = channel.users();
    const std::size_t kk = channel.subchannels();
    require(user < m, "user index out of range");
    require(profile.rows() == m && profile.cols() == kk, "profile dimensions do not match the channel");
    std::vector<double> s(kk);
    for (std::size_t k = 0; k < kk; ++k) {
        double total = channel.noise(user, k);
        for (std::size_t j = 0; j < m; ++j)
            if (j != user) total += profile(j, k) * channel.gain(j, user, k);
        const double direct = channel.gain(user, user, k);
        if (!(direct > 0.0)) fail(ErrorCode::InvalidChannel, "direct gain must be positive");
        s[k] = total / direct;
    }
    return s;
}

double user_utility(std::span<const double> power, std::span<const double> interference) {
    require(power.size() == interference.size(), "power and interference lengths differ");
    double u = 0.0;
    for (std::size_t k = 0; k < power.size(); ++k) {
        if (!(interference[k] > 0.0)) fail(ErrorCode::InvalidArgument, "interference must be positive");
        require(power[k] >= 0.0, "power must be nonnegative");
        u += std::log1p(power[k] / interference[k]);
    }
    return u;
}

std::vector<double> effective_interference(std::span<const double> nominal, const UncertaintySpec& spec,
                                           std::size_t user) {
    require(spec.eps.cols() == nominal.size() && user < spec.eps.rows(), "uncertainty spec dimensions mismatch");
    std::vector<double> out(nominal.size());
    for (std::size_t k = 0; k < nominal.size(); ++k)
        out[k] = std::max(nominal[k] * spec.multiplier(user, k), kInterferenceFloor);
    return out;
}

double epsilon_from_uniform(double half_width, double coverage) {
    require(std::isfinite(half_width) && half_width >= 0.0, "half-width must be nonnegative");
    require(coverage >= 0.0 && coverage <= 1.0, "coverage probability must lie in [0, 1]");
    return coverage * half_width;
}

bool is_feasible(const PowerProfile& profile, const PowerConstraints& constraints, double tolerance) {
    if (profile.rows() != constraints.mask.rows() || profile.cols() != constraints.mask.cols()) return false;
    for (std::size_t i = 0; i < profile.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < profile.cols(); ++k) {
            const double p = profile(i, k);
            if (!std::isfinite(p) || p < 0.0 || p > constraints.mask(i, k) + tolerance) return false;
            sum += p;
        }
        if (sum > constraints.p_max[i] + tolerance) return false;
    }
    return true;
}

PowerProfile mask_profile(const PowerConstraints& constraints) { return PowerProfile(constraints.mask); }

GeneratorParams GeneratorParams::low_interference() { return GeneratorParams{}; }

GeneratorParams GeneratorParams::high_interference() {
    GeneratorParams p;
    p.cross = {0.0, 1.0};
    return p;
}

Scenario random_scenario(const GeneratorParams& params) {
    const std::size_t m = params.users;
    const std::size_t kk = params.subchannels;
    require(m >= 1 && kk >= 1, "generator needs at least one user and one sub-channel");
    for (const Range* r : {&params.direct, &params.cross, &params.noise})
        require(std::isfinite(r->lo) && std::isfinite(r->hi) && r->lo >= 0.0 && r->hi >= r->lo,
                "generator ranges must be nonnegative with lo <= hi");
    require(params.direct.hi > 0.0, "direct-gain range must have a positive upper bound");

    Rng rng(params.seed);
    const double floor = 1e-6 * params.direct.hi;
    std::vector<double> gains(m * m * kk, 0.0);
    auto g = [&](std::size_t j, std::size_t i, std::size_t k) -> double& { return gains[(j * m + i) * kk + k]; };

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < kk; ++k) {
            double v = 0.0;
            do {
                v = rng.uniform(params.direct.lo, params.direct.hi);
                if (params.fading) v *= rng.exponential();
            } while (v < floor);
            g(i, i, k) = v;
        }
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            if (i == j) continue;
            for (std::size_t k = 0; k < kk; ++k) {
                double v = rng.uniform(params.cross.lo, params.cross.hi);
                if (params.fading) v *= rng.exponential();
                g(j, i, k) = v;
            }
        }
    Table noise(m, kk);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < kk; ++k) noise(i, k) = rng.uniform(params.noise.lo, params.noise.hi);

    Scenario sc{ChannelRealization(m, kk, std::move(gains), std::move(noise)),
                PowerConstraints::uniform(m, kk, params.p_max, params.mask),
                UncertaintySpec::uniform(m, kk, params.mode, params.eps, params.delta0), params.seed};
    sc.validate();
    return sc;
}

} // namespace riwf
