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

#include "analysis.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>

namespace riwf {

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool SquareMatrix::is_symmetric() const {
    for (std::size_t r = 0; r < n_; ++r)
        for (std::size_t c = r + 1; c < n_; ++c)
            if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
}

SquareMatrix build_W(const ChannelRealization& channel, std::size_t k) {
    require(k < channel.subchannels(), "sub-channel index out of range");
    const std::size_t m = channel.users();
    SquareMatrix w(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j) w(i, j) = channel.gain(j, i, k) / channel.gain(i, i, k);
    return w;
}

SquareMatrix build_W_max(const ChannelRealization& channel) {
    SquareMatrix out(channel.users());
    for (std::size_t k = 0; k < channel.subchannels(); ++k) {
        const SquareMatrix w = build_W(channel, k);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = 0; j < w.size(); ++j) out(i, j) = std::max(out(i, j), w(i, j));
    }
    return out;
}

std::vector<double> symmetric_eigenvalues(const SquareMatrix& input) {
    const std::size_t n = input.size();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            require(std::isfinite(input(r, c)), "matrix entries must be finite");
    SquareMatrix a = input;
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) total += a(r, c) * a(r, c);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= 1e-32 * total || off == 0.0) break;

        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(r, q) = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double apr = a(p, r);
                    const double aqr = a(q, r);
                    a(p, r) = c * apr - s * aqr;
                    a(q, r) = s * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

double spectral_radius(const SquareMatrix& w) {
    const std::size_t n = w.size();
    SquareMatrix sym(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) sym(r, c) = 0.5 * (w(r, c) + w(c, r));
    return max_abs(symmetric_eigenvalues(sym));
}

double operator_norm_2(const SquareMatrix& w) {
    const std::size_t n = w.size();
    SquareMatrix gram(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += w(i, r) * w(i, c);
            gram(r, c) = acc;
            gram(c, r) = acc;
        }
    const auto eig = symmetric_eigenvalues(gram);
    return eig.empty() ? 0.0 : std::sqrt(std::max(eig.back(), 0.0));
}

double frobenius_norm(const SquareMatrix& w) {
    double acc = 0.0;
    for (std::size_t r = 0; r < w.size(); ++r)
        for (std::size_t c = 0; c < w.size(); ++c) acc += w(r, c) * w(r, c);
    return std::sqrt(acc);
}

const std::vector<double>& CertificateResult::component(const std::string& key) const {
    for (const auto& [name, values] : components)
        if (name == key) return values;
    fail(ErrorCode::InvalidArgument, "certificate has no component '" + key + "'");
}

namespace {

void finish(CertificateResult& r) {
    r.margin = r.margins.empty() ? -1.0 : *std::max_element(r.margins.begin(), r.margins.end());
    r.passed = std::all_of(r.margins.begin(), r.margins.end(), [](double m) { return m < 0.0; });
}

} // namespace

CertificateResult check_rne_uniqueness(const ChannelRealization& channel, const UncertaintySpec& spec) {
    const std::size_t m = channel.users();
    const std::size_t kk = channel.subchannels();
    spec.validate(m, kk);
    CertificateResult r;
    r.name = "rne_uniqueness";
    std::vector<double> rho_sym(kk), norm2(kk), min_term(kk), w_norm(kk), lhs(kk), symmetric(kk);
    for (std::size_t k = 0; k < kk; ++k) {
        const SquareMatrix w = build_W(channel, k);
        rho_sym[k] = spectral_radius(w);
        norm2[k] = operator_norm_2(w);
        if (w.is_symmetric()) {
            symmetric[k] = 1.0;
            min_term[k] = max_abs(symmetric_eigenvalues(w));
        } else {
            min_term[k] = std::min(rho_sym[k], norm2[k]);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += spec.relative_bound(i, k) * spec.relative_bound(i, k);
        w_norm[k] = std::sqrt(acc);
        lhs[k] = min_term[k] + w_norm[k];
        r.margins.push_back(lhs[k] - 1.0);
    }
    r.components = {{"rho_sym", rho_sym}, {"norm2", norm2},         {"min_term", min_term},
                    {"w_norm", w_norm},   {"symmetric", symmetric}, {"lhs", lhs}};
    finish(r);
    return r;
}

CertificateResult check_async_convergence(const ChannelRealization& channel, const Table& bounds,
                                          const UncertaintySpec& spec) {
    const std::size_t m = channel.users();
    const std::size_t kk = channel.subchannels();
    spec.validate(m, kk);
    require(bounds.rows() == m && bounds.cols() == kk, "interference bounds must be M x K");
    CertificateResult r;
    r.name = "async_convergence";
    const double w_norm2 = operator_norm_2(build_W_max(channel));
    std::vector<double> w_max(m, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < kk; ++k) w_max[i] = std::max(w_max[i], bounds(i, k) * spec.relative_bound(i, k));
        acc += w_max[i] * w_max[i];
    }
    const double sqrt_m = std::sqrt(static_cast<double>(m));
    const double lhs = w_norm2 + sqrt_m * std::sqrt(acc);
    r.margins = {lhs - 1.0};
    r.components = {{"W_max_norm2", {w_norm2}},
                    {"w_max", w_max},
                    {"w_max_norm", {std::sqrt(acc)}},
                    {"sqrt_M", {sqrt_m}},
                    {"lhs", {lhs}}};
    finish(r);
    return r;
}

Table interference_at(const ChannelRealization& channel, const PowerProfile& reference) {
    Table out(channel.users(), channel.subchannels());
    for (std::size_t i = 0; i < channel.users(); ++i) {
        const auto s = normalized_interference(channel, reference, i);
        std::copy(s.begin(), s.end(), out.row(i).begin());
    }
    return out;
}

double orthogonality_index(const PowerProfile& profile, double threshold) {
    require(threshold > 0.0, "orthogonality threshold must be positive");
    const std::size_t m = profile.rows();
    const std::size_t kk = profile.cols();
    std::vector<std::size_t> size(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < kk; ++k)
            if (profile(i, k) > threshold) ++size[i];
    std::size_t overlap = 0;
    std::size_t denom = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = 0; k < kk; ++k)
                if (profile(i, k) > threshold && profile(j, k) > threshold) ++overlap;
            denom += std::min(size[i], size[j]);
        }
    if (denom == 0) return 1.0;
    return 1.0 - static_cast<double>(overlap) / static_cast<double>(denom);
}

double default_orthogonality_threshold(const PowerConstraints& constraints) {
    require(!constraints.p_max.empty(), "constraints carry no users");
    return 1e-3 * *std::min_element(constraints.p_max.begin(), constraints.p_max.end());
}

std::vector<double> per_user_utilities(const PowerProfile& profile, const ChannelRealization& channel) {
    std::vector<double> u(channel.users());
    for (std::size_t i = 0; i < channel.users(); ++i)
        u[i] = user_utility(profile.row(i), normalized_interference(channel, profile, i));
    return u;
}

double social_utility(const PowerProfile& profile, const ChannelRealization& channel) {
    double total = 0.0;
    for (double u : per_user_utilities(profile, channel)) total += u;
    return total;
}

std::vector<double> robust_per_user_utilities(const PowerProfile& profile, const ChannelRealization& channel,
                                              const UncertaintySpec& spec) {
    std::vector<double> u(channel.users());
    for (std::size_t i = 0; i < channel.users(); ++i) {
        const auto s = normalized_interference(channel, profile, i);
        u[i] = user_utility(profile.row(i), effective_interference(s, spec, i));
    }
    return u;
}

double robust_social_utility(const PowerProfile& profile, const ChannelRealization& channel,
                             const UncertaintySpec& spec) {
    double total = 0.0;
    for (double u : robust_per_user_utilities(profile, channel, spec)) total += u;
    return total;
}

} // namespace riwf
