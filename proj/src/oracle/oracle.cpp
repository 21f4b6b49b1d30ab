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

#include "oracle.hpp"

#include "dynamics.hpp"
#include "error.hpp"
#include "waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace riwf::oracle {

namespace {

std::size_t steps(double cap, double res) { return static_cast<std::size_t>(std::floor(cap / res + 1e-9)); }

void check_inputs(std::span<const double> s, double p_max, std::span<const double> mask, const GridSpec& grid) {
    require(!s.empty() && s.size() == mask.size(), "oracle needs matching nonempty vectors");
    require(grid.resolution > 0.0, "grid resolution must be positive");
    require(p_max > 0.0, "p_max must be positive");
    for (std::size_t k = 0; k < s.size(); ++k) require(s[k] > 0.0 && mask[k] > 0.0, "oracle inputs must be positive");
}

} // namespace

double grid_utility(std::span<const double> p, std::span<const double> s) {
    double u = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) u += std::log(1.0 + p[k] / s[k]);
    return u;
}

std::vector<double> enumerate_best_response(std::span<const double> s, double p_max, std::span<const double> mask,
                                            const GridSpec& grid) {
    check_inputs(s, p_max, mask, grid);
    require(s.size() <= 8, "enumeration oracle is limited to K <= 8");
    const double res = grid.resolution;
    const std::size_t n = s.size();
    const std::size_t budget = steps(p_max, res);
    std::vector<std::size_t> cap(n);
    double product = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cap[k] = std::min(steps(mask[k], res), budget);
        product *= static_cast<double>(cap[k] + 1);
    }
    if (product > static_cast<double>(grid.max_points))
        fail(ErrorCode::Size, "enumeration grid exceeds the point cap");

    std::vector<std::size_t> level(n, 0), best(n, 0);
    double best_u = -std::numeric_limits<double>::infinity();
    std::vector<double> p(n, 0.0);
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t k, std::size_t used) {
        if (k == n) {
            for (std::size_t c = 0; c < n; ++c) p[c] = static_cast<double>(level[c]) * res;
            const double u = grid_utility(p, s);
            if (u > best_u) {
                best_u = u;
                best = level;
            }
            return;
        }
        for (std::size_t l = 0; l <= cap[k] && used + l <= budget; ++l) {
            level[k] = l;
            walk(k + 1, used + l);
        }
    };
    walk(0, 0);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = static_cast<double>(best[k]) * res;
    return out;
}

std::vector<double> brute_force_best_response(std::span<const double> s, double p_max, std::span<const double> mask,
                                              const GridSpec& grid) {
    check_inputs(s, p_max, mask, grid);
    require(s.size() <= 8, "brute-force oracle is limited to K <= 8");
    const double res = grid.resolution;
    const std::size_t n = s.size();
    const std::size_t budget = steps(p_max, res);
    std::vector<std::size_t> cap(n);
    double product = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cap[k] = std::min(steps(mask[k], res), budget);
        product *= static_cast<double>(cap[k] + 1);
    }
    if (product <= static_cast<double>(grid.enumeration_limit)) return enumerate_best_response(s, p_max, mask, grid);

    const double cells = static_cast<double>(n) * static_cast<double>(budget + 1) * static_cast<double>(budget + 1);
    if (cells > static_cast<double>(grid.max_points) * 100.0)
        fail(ErrorCode::Size, "grid search exceeds the point cap");

    // value[k][b]: best utility of channels k..n-1 using at most b units.
    std::vector<std::vector<double>> value(n + 1, std::vector<double>(budget + 1, 0.0));
    std::vector<std::vector<double>> gain(n);
    for (std::size_t k = 0; k < n; ++k) {
        gain[k].resize(cap[k] + 1);
        for (std::size_t l = 0; l <= cap[k]; ++l) gain[k][l] = std::log(1.0 + static_cast<double>(l) * res / s[k]);
    }
    for (std::size_t k = n; k-- > 0;)
        for (std::size_t b = 0; b <= budget; ++b) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t l = 0; l <= std::min(cap[k], b); ++l) best = std::max(best, gain[k][l] + value[k + 1][b - l]);
            value[k][b] = best;
        }
    // Walk forward taking the smallest level that attains the optimum.
    std::vector<double> out(n);
    std::size_t b = budget;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pick = 0;
        for (std::size_t l = 0; l <= std::min(cap[k], b); ++l)
            if (gain[k][l] + value[k + 1][b - l] == value[k][b]) {
                pick = l;
                break;
            }
        out[k] = static_cast<double>(pick) * res;
        b -= pick;
    }
    return out;
}

std::vector<PowerProfile> exhaustive_equilibrium_scan(const Scenario& sc, const GridSpec& grid) {
    require(sc.users() == 2, "equilibrium scan handles two-user games only");
    require(sc.subchannels() <= 3, "equilibrium scan handles K <= 3 only");
    require(grid.resolution > 0.0, "grid resolution must be positive");
    const std::size_t kk = sc.subchannels();
    const double res = grid.resolution;

    // Feasible grid allocations per user, as integer level vectors.
    using Levels = std::vector<long>;
    std::vector<std::vector<Levels>> options(2);
    for (std::size_t i = 0; i < 2; ++i) {
        const std::size_t budget = steps(sc.constraints.p_max[i], res);
        Levels cur(kk, 0);
        std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t k, std::size_t used) {
            if (options[i].size() > grid.max_points) fail(ErrorCode::Size, "scan grid exceeds the point cap");
            if (k == kk) {
                options[i].push_back(cur);
                return;
            }
            const std::size_t cap = std::min(steps(sc.constraints.mask(i, k), res), budget);
            for (std::size_t l = 0; l <= cap && used + l <= budget; ++l) {
                cur[k] = static_cast<long>(l);
                walk(k + 1, used + l);
            }
        };
        walk(0, 0);
    }

    auto to_profile = [&](const Levels& a, const Levels& b) {
        PowerProfile p(2, kk);
        for (std::size_t k = 0; k < kk; ++k) {
            p(0, k) = static_cast<double>(a[k]) * res;
            p(1, k) = static_cast<double>(b[k]) * res;
        }
        return p;
    };
    std::map<Levels, std::size_t> index_of[2];
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t n = 0; n < options[i].size(); ++n) index_of[i][options[i][n]] = n;

    // A candidate (a, b) needs a within 2*res of BR_0(b): scan that box only.
    const double tol = 2.0 * res * (1.0 + 1e-9);
    struct Hit {
        Levels joint;
        double residual;
    };
    std::vector<Hit> hits;
    for (const Levels& b : options[1]) {
        const PowerProfile probe = to_profile(Levels(kk, 0), b);
        const auto br0 = best_response(0, sc.channel, probe, sc.constraints, sc.uncertainty).p;
        Levels lo(kk), hi(kk);
        for (std::size_t k = 0; k < kk; ++k) {
            lo[k] = std::max(0L, static_cast<long>(std::ceil((br0[k] - tol) / res)));
            hi[k] = static_cast<long>(std::floor((br0[k] + tol) / res));
        }
        Levels a = lo;
        std::function<void(std::size_t)> box = [&](std::size_t k) {
            if (k == kk) {
                if (!index_of[0].count(a)) return;
                const PowerProfile p = to_profile(a, b);
                const double r = fixed_point_residual(p, sc);
                if (r <= tol) {
                    Levels joint = a;
                    joint.insert(joint.end(), b.begin(), b.end());
                    hits.push_back({std::move(joint), r});
                }
                return;
            }
            for (long l = lo[k]; l <= hi[k]; ++l) {
                a[k] = l;
                box(k + 1);
            }
        };
        box(0);
    }

    // Single-linkage clusters over grid adjacency (inf-distance <= 2 steps).
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.joint < y.joint; });
    std::vector<std::size_t> parent(hits.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    for (std::size_t x = 0; x < hits.size(); ++x)
        for (std::size_t y = x + 1; y < hits.size(); ++y) {
            long dist = 0;
            for (std::size_t c = 0; c < hits[x].joint.size(); ++c)
                dist = std::max(dist, std::abs(hits[x].joint[c] - hits[y].joint[c]));
            if (dist <= 2) parent[root(y)] = root(x);
        }
    std::map<std::size_t, std::size_t> best_of;
    for (std::size_t x = 0; x < hits.size(); ++x) {
        const std::size_t r = root(x);
        auto it = best_of.find(r);
        if (it == best_of.end() || hits[x].residual < hits[it->second].residual) best_of[r] = x;
    }
    std::vector<Levels> reps;
    for (const auto& [r, x] : best_of) reps.push_back(hits[x].joint);
    std::sort(reps.begin(), reps.end());
    std::vector<PowerProfile> out;
    for (const auto& j : reps) out.push_back(to_profile(Levels(j.begin(), j.begin() + kk), Levels(j.begin() + kk, j.end())));
    return out;
}

} // namespace riwf::oracle
