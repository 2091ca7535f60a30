// SPDX-License-Identifier: Apache-2.0
//
// ris2t: two-timescale channel estimation for RIS-aided near-field MIMO
// Copyright (C) 2026 The ris2t Authors
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

// Internal JSON helpers for complex Eigen objects.

#ifndef RIS2T_JSON_UTIL_HPP
#define RIS2T_JSON_UTIL_HPP

#include <json.hpp>

#include "ris2t/common.hpp"

namespace ris2t::detail
{
    using nlohmann::json;

    inline json to_json(const CMatrix &m)
    {
        json data = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                data.push_back({m(i, j).real(), m(i, j).imag()});
        return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
    }

    inline json to_json(const RMatrix &m)
    {
        json data = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                data.push_back(m(i, j));
        return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
    }

    inline CMatrix cmatrix_from_json(const json &j)
    {
        const auto rows = j.at("rows").get<Eigen::Index>();
        const auto cols = j.at("cols").get<Eigen::Index>();
        const auto &data = j.at("data");
        if (static_cast<Eigen::Index>(data.size()) != rows * cols)
            throw std::invalid_argument("matrix payload size does not match its shape");
        CMatrix m(rows, cols);
        Eigen::Index k = 0;
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r, ++k)
                m(r, c) = {data[k][0].get<double>(), data[k][1].get<double>()};
        return m;
    }

    inline RMatrix rmatrix_from_json(const json &j)
    {
        const auto rows = j.at("rows").get<Eigen::Index>();
        const auto cols = j.at("cols").get<Eigen::Index>();
        const auto &data = j.at("data");
        if (static_cast<Eigen::Index>(data.size()) != rows * cols)
            throw std::invalid_argument("matrix payload size does not match its shape");
        RMatrix m(rows, cols);
        Eigen::Index k = 0;
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r, ++k)
                m(r, c) = data[k].get<double>();
        return m;
    }

} // namespace ris2t::detail

#endif
