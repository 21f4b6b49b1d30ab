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

#ifndef RIWF_TABLE_HPP
#define RIWF_TABLE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace riwf {

// Dense row-major rows x cols array of doubles. Rows are users, columns are
// sub-channels everywhere in the library.
class Table {
public:
    Table() = default;
    Table(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& values() const noexcept { return data_; }
    std::vector<double>& values() noexcept { return data_; }

    bool operator==(const Table&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Joint strategy p[i][k]: transmit power of user i on sub-channel k.
class PowerProfile : public Table {
public:
    using Table::Table;
    PowerProfile() = default;
    explicit PowerProfile(Table t) : Table(std::move(t)) {}
};

} // namespace riwf

#endif
