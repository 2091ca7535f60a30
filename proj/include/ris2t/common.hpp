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

#ifndef RIS2T_COMMON_HPP
#define RIS2T_COMMON_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ris2t
{
    using cplx = std::complex<double>;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RMatrix = Eigen::MatrixXd;
    using RVector = Eigen::VectorXd;

    /// Cartesian position in meters.
    using Vec3 = std::array<double, 3>;

    inline constexpr double speed_of_light = 299792458.0;
    inline constexpr double pi = 3.14159265358979323846;

    /// Base class for all library errors that are not plain argument violations.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Raised when a User-RIS vector has entries too small to invert.
    class DegenerateChannelError : public Error
    {
    public:
        using Error::Error;
    };

    /// Raised when a benchmark receives fewer observations than it needs.
    class InsufficientObservationsError : public Error
    {
    public:
        InsufficientObservationsError(const std::string &what, long required_count)
            : Error(what), required(required_count) {}
        long required;
    };

    inline double distance(const Vec3 &a, const Vec3 &b)
    {
        const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace ris2t

#endif
