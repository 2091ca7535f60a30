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

#include "ris2t/beam_training.hpp"

#include <sstream>

#include "ris2t/random.hpp"

namespace ris2t
{
    CMatrix unitary_dft(int n)
    {
        if (n < 1)
            throw std::invalid_argument("unitary_dft: size must be >= 1");
        CMatrix f(n, n);
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
            {
                // reduce a*b mod n first so the phase stays exact for large n
                const long k = (static_cast<long>(a) * b) % n;
                f(a, b) = std::polar(scale, -2.0 * pi * static_cast<double>(k) / n);
            }
        return f;
    }

    CMatrix unitary_hadamard(int n)
    {
        if (n < 1 || (n & (n - 1)) != 0)
            throw std::invalid_argument("unitary_hadamard: size must be a power of two");
        RMatrix h = RMatrix::Ones(1, 1);
        while (h.rows() < n)
        {
            const auto k = h.rows();
            RMatrix next(2 * k, 2 * k);
            next << h, h, h, -h;
            h = std::move(next);
        }
        return (h / std::sqrt(static_cast<double>(n))).cast<cplx>();
    }

    CVector ReflectionSchedule::reflection_vector(int b, int i) const
    {
        const int q_count = q_pieces();
        const int ms = m_sub();
        if (b < 0 || b >= b_subframes || i < 0 || i >= q_count)
            throw std::out_of_range("reflection_vector: (b, i) out of range");
        CVector nu(static_cast<Eigen::Index>(q_count) * ms);
        const double root_q = std::sqrt(static_cast<double>(q_count));
        for (int q = 0; q < q_count; ++q)
            nu.segment(static_cast<Eigen::Index>(q) * ms, ms) = root_q * phi_q(q, i) * subframe_vectors[b];
        return nu;
    }

    CMatrix ReflectionSchedule::subframe_matrix() const
    {
        CMatrix v(m_sub(), b_subframes);
        for (int b = 0; b < b_subframes; ++b)
            v.col(b) = subframe_vectors[b];
        return v;
    }

    ReflectionSchedule build_schedule(const SystemConfig &cfg, int b_subframes)
    {
        cfg.validate();
        const int ms = cfg.m_sub();
        if (b_subframes < 1 || b_subframes > ms)
            throw std::invalid_argument("build_schedule: B=" + std::to_string(b_subframes) + " must lie in [1, M_sub=" +
                                        std::to_string(ms) + "]");
        ReflectionSchedule s;
        s.b_subframes = b_subframes;
        s.phi_q = cfg.spreading == Spreading::dft ? unitary_dft(cfg.q_pieces) : unitary_hadamard(cfg.q_pieces);

        // modulus-one DFT columns: the unitary family scaled by sqrt(M_sub)
        const CMatrix dft = unitary_dft(ms) * std::sqrt(static_cast<double>(ms));
        for (int b = 0; b < b_subframes; ++b)
            s.subframe_vectors.push_back(dft.col(b));

        const CMatrix f = unitary_dft(cfg.n_bs);
        s.combiner.resize(cfg.n_rf, cfg.n_bs);
        for (int r = 0; r < cfg.n_rf; ++r)
            s.combiner.row(r) = f.row((cfg.combiner_row_offset + r) % cfg.n_bs);
        return s;
    }

    std::string schedule_to_csv(const ReflectionSchedule &schedule)
    {
        std::ostringstream os;
        os.precision(17);
        os << "kind,row,col,re,im\n";
        auto dump = [&](const char *kind, const CMatrix &m) {
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    os << kind << ',' << i << ',' << j << ',' << m(i, j).real() << ',' << m(i, j).imag() << '\n';
        };
        dump("phi", schedule.phi_q);
        dump("subframe", schedule.subframe_matrix());
        dump("combiner", schedule.combiner);
        return os.str();
    }

    double noise_sigma_for_snr(double mean_signal_power, double mean_noise_gain, double snr_db)
    {
        if (snr_db == snr_noiseless)
            return 0.0;
        if (!(mean_signal_power > 0.0))
            throw std::invalid_argument("calibrate_noise: signal power is zero");
        if (!(mean_noise_gain > 0.0))
            throw std::invalid_argument("calibrate_noise: combiner has zero noise gain");
        return std::sqrt(mean_signal_power / (db_to_linear(snr_db) * mean_noise_gain));
    }

    std::vector<int> estimation_blocks(int t_blocks)
    {
        std::vector<int> out;
        for (int t = 1; t < t_blocks; ++t)
            out.push_back(t);
        if (out.empty())
            out.push_back(0);
        return out;
    }

    double calibrate_noise(const ChannelRealization &realization, const ReflectionSchedule &schedule, double snr_db,
                           double pilot_power)
    {
        if (snr_db == snr_noiseless)
            return 0.0;
        double total = 0.0;
        long slots = 0;
        for (int t : estimation_blocks(realization.t_blocks()))
        {
            const CMatrix wh = schedule.combiner * realization.h_eff_seq[t];
            for (int b = 0; b < schedule.b_subframes; ++b)
                for (int i = 0; i < schedule.q_pieces(); ++i)
                {
                    total += pilot_power * (wh * schedule.reflection_vector(b, i)).squaredNorm();
                    ++slots;
                }
        }
        return noise_sigma_for_snr(total / static_cast<double>(slots), schedule.combiner.squaredNorm(), snr_db);
    }

    namespace
    {
        CMatrix receive_with(const CMatrix &wh, const ReflectionSchedule &schedule, int b, int t, double sigma,
                             std::uint64_t noise_seed, double pilot_power)
        {
            const int q_count = schedule.q_pieces();
            const auto n_bs = schedule.combiner.cols();
            CMatrix y(wh.rows(), q_count);
            const double inv_s = 1.0 / std::sqrt(pilot_power);
            for (int i = 0; i < q_count; ++i)
            {
                y.col(i) = wh * schedule.reflection_vector(b, i);
                if (sigma > 0.0)
                {
                    Rng rng = Rng::derive(noise_seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(b),
                                                       static_cast<std::uint64_t>(i)});
                    const CVector n = rng.complex_normal_vector(n_bs, sigma * sigma);
                    y.col(i) += inv_s * (schedule.combiner * n);
                }
            }
            return y;
        }
    } // namespace

    CMatrix receive_subframe(const CMatrix &h_eff, const ReflectionSchedule &schedule, int b, int t, double sigma,
                             std::uint64_t noise_seed, double pilot_power)
    {
        if (h_eff.rows() != schedule.combiner.cols() ||
            h_eff.cols() != static_cast<Eigen::Index>(schedule.q_pieces()) * schedule.m_sub())
            throw std::invalid_argument("receive_subframe: channel shape does not match the schedule");
        return receive_with(schedule.combiner * h_eff, schedule, b, t, sigma, noise_seed, pilot_power);
    }

    CMatrix despread(const CMatrix &received, const CMatrix &phi_q)
    {
        if (received.cols() != phi_q.rows())
            throw std::invalid_argument("despread: pilot count does not match the spreading matrix");
        return received * phi_q.adjoint() / std::sqrt(static_cast<double>(phi_q.rows()));
    }

    BlockObservations simulate_and_despread(const ChannelRealization &realization, const ReflectionSchedule &schedule,
                                            int t, double sigma, std::uint64_t noise_seed, double pilot_power)
    {
        if (t < 0 || t >= realization.t_blocks())
            throw std::out_of_range("simulate_and_despread: block index out of range");
        const CMatrix &h = realization.h_eff_seq[t];
        if (h.rows() != schedule.combiner.cols() ||
            h.cols() != static_cast<Eigen::Index>(schedule.q_pieces()) * schedule.m_sub())
            throw std::invalid_argument("simulate_and_despread: channel shape does not match the schedule");

        const CMatrix wh = schedule.combiner * h;
        BlockObservations out;
        out.t = t;
        out.z.resize(schedule.b_subframes);
        for (int b = 0; b < schedule.b_subframes; ++b)
        {
            const CMatrix z = despread(receive_with(wh, schedule, b, t, sigma, noise_seed, pilot_power), schedule.phi_q);
            for (int q = 0; q < schedule.q_pieces(); ++q)
                out.z[b].push_back(z.col(q));
        }
        return out;
    }

    namespace
    {
        // modulus-one M-point DFT, V V^H = M I
        CMatrix ris_sweep_matrix(int m)
        {
            return unitary_dft(m) * std::sqrt(static_cast<double>(m));
        }
    } // namespace

    FullSweepObservation simulate_full_sweep(const CMatrix &h_eff, int n_rf, int t, double sigma,
                                             std::uint64_t noise_seed, double pilot_power)
    {
        const int n = static_cast<int>(h_eff.rows());
        const int m = static_cast<int>(h_eff.cols());
        if (n_rf < 1 || n_rf > n)
            throw std::invalid_argument("simulate_full_sweep: n_rf must lie in [1, N]");
        const int groups = (n + n_rf - 1) / n_rf;
        const CMatrix f = unitary_dft(n);
        const CMatrix v = ris_sweep_matrix(m);

        CMatrix y = f * h_eff * v;
        if (sigma > 0.0)
        {
            const double inv_s = 1.0 / std::sqrt(pilot_power);
            for (int g = 0; g < groups; ++g)
            {
                const int row0 = g * n_rf;
                const int rows = std::min(n_rf, n - row0);
                Rng rng = Rng::derive(noise_seed, {static_cast<std::uint64_t>(t), 0x5eedULL, static_cast<std::uint64_t>(g)});
                // F_g has orthonormal rows, so F_g n is already i.i.d. CN(0, sigma^2) per slot
                y.middleRows(row0, rows) += inv_s * rng.complex_normal_matrix(rows, m, sigma * sigma);
            }
        }
        FullSweepObservation out;
        out.despread = f.adjoint() * y * v.adjoint() / static_cast<double>(m);
        out.ris_configurations = m;
        out.combiner_groups = groups;
        out.n_rf = n_rf;
        return out;
    }

    double calibrate_full_sweep_noise(const ChannelRealization &realization, int n_rf, double snr_db,
                                      double pilot_power)
    {
        if (snr_db == snr_noiseless)
            return 0.0;
        // Over all (group, RIS column) slots: sum ||F_g H v_k||^2 = M ||H||_F^2 and
        // sum E||F_g n||^2 = M N sigma^2, so the slot averages reduce to these.
        const int n = static_cast<int>(realization.h_rb.rows());
        const int groups = (n + n_rf - 1) / n_rf;
        double signal = 0.0;
        const auto blocks = estimation_blocks(realization.t_blocks());
        for (int t : blocks)
            signal += realization.h_eff_seq[t].squaredNorm();
        signal *= pilot_power / (static_cast<double>(blocks.size()) * groups);
        const double noise_gain = static_cast<double>(n) / groups;
        return noise_sigma_for_snr(signal, noise_gain, snr_db);
    }

} // namespace ris2t
