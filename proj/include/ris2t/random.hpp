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

#ifndef RIS2T_RANDOM_HPP
#define RIS2T_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "ris2t/common.hpp"

namespace ris2t
{
    /// Seeded generator owned by a single trial. Never share one between workers;
    /// derive a substream per unit of work instead.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        /// Substream keyed by a master seed and an ordered list of integer tags.
        /// The same (seed, tags) always yields the same stream regardless of call order.
        static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
        {
            std::uint64_t state = splitmix(seed ^ 0x6a09e667f3bcc909ULL);
            for (auto t : tags)
                state = splitmix(state ^ (t + 0x9e3779b97f4a7c15ULL));
            return Rng(state);
        }

        double uniform(double lo = 0.0, double hi = 1.0)
        {
            return std::uniform_real_distribution<double>(lo, hi)(engine_);
        }

        double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

        bool bernoulli(double p) { return uniform() < p; }

        /// Circularly symmetric complex Gaussian with E|x|^2 = variance.
        cplx complex_normal(double variance = 1.0)
        {
            const double s = std::sqrt(variance / 2.0);
            const double re = normal();
            const double im = normal();
            return {s * re, s * im};
        }

        CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, double variance = 1.0)
        {
            CMatrix out(rows, cols);
            for (Eigen::Index j = 0; j < cols; ++j)
                for (Eigen::Index i = 0; i < rows; ++i)
                    out(i, j) = complex_normal(variance);
            return out;
        }

        CVector complex_normal_vector(Eigen::Index size, double variance = 1.0)
        {
            CVector out(size);
            for (Eigen::Index i = 0; i < size; ++i)
                out(i) = complex_normal(variance);
            return out;
        }

        std::mt19937_64 &engine() { return engine_; }

    private:
        static std::uint64_t splitmix(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        std::mt19937_64 engine_;
    };

} // namespace ris2t

#endif
