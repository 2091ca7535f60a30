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

#include "ris2t/channel_model.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace ris2t
{
    ArrayGeometry ula(int count, const Vec3 &center, double spacing)
    {
        if (count < 1)
            throw std::invalid_argument("ula: element count must be >= 1");
        ArrayGeometry g;
        g.element_positions.reserve(count);
        const double mid = 0.5 * (count - 1);
        for (int i = 0; i < count; ++i)
        {
            Vec3 p = center;
            p[1] += (i - mid) * spacing;
            g.element_positions.push_back(p);
        }
        g.aperture_m = (count - 1) * spacing;
        return g;
    }

    ArrayGeometry bs_array(const SystemConfig &cfg)
    {
        return ula(cfg.n_bs, cfg.bs_position, 0.5 * cfg.wavelength());
    }

    ArrayGeometry ris_array(const SystemConfig &cfg)
    {
        return ula(cfg.m_ris, cfg.ris_position, 0.5 * cfg.wavelength());
    }

    double mimo_ard(double bs_aperture, double ris_aperture, double wavelength)
    {
        return 4.0 * bs_aperture * ris_aperture / wavelength;
    }

    double mimo_ard(const SystemConfig &cfg)
    {
        cfg.validate();
        const double half = 0.5 * cfg.wavelength();
        return mimo_ard((cfg.n_bs - 1) * half, (cfg.m_ris - 1) * half, cfg.wavelength());
    }

    double mimo_rd(double ris_aperture, double wavelength)
    {
        return 2.0 * ris_aperture * ris_aperture / wavelength;
    }

    double mimo_rd(const SystemConfig &cfg)
    {
        cfg.validate();
        return mimo_rd((cfg.m_ris - 1) * 0.5 * cfg.wavelength(), cfg.wavelength());
    }

    namespace
    {
        // Coincident points would put a pole in 1/r.
        constexpr double min_distance_m = 1e-12;

        cplx spherical(double r, double k)
        {
            return std::polar(1.0 / r, k * r);
        }
    } // namespace

    CMatrix los_matrix(const ArrayGeometry &bs, const ArrayGeometry &ris, double wave_number)
    {
        CMatrix a(bs.count(), ris.count());
        for (int m = 0; m < ris.count(); ++m)
            for (int n = 0; n < bs.count(); ++n)
            {
                const double r = distance(bs.element_positions[n], ris.element_positions[m]);
                if (r < min_distance_m)
                    throw std::invalid_argument("los_matrix: BS element " + std::to_string(n) +
                                                " coincides with RIS element " + std::to_string(m));
                a(n, m) = spherical(r, wave_number);
            }
        return a;
    }

    CVector los_vector(const ArrayGeometry &ris, const Vec3 &point, double wave_number)
    {
        CVector a(ris.count());
        for (int m = 0; m < ris.count(); ++m)
        {
            const double r = distance(ris.element_positions[m], point);
            if (r < min_distance_m)
                throw std::invalid_argument("los_vector: point coincides with RIS element " + std::to_string(m));
            a(m) = spherical(r, wave_number);
        }
        return a;
    }

    RMatrix sample_vr(Eigen::Index rows, Eigen::Index cols, double p, Rng &rng)
    {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("sample_vr: p must lie in [0,1]");
        RMatrix f(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
                f(i, j) = rng.bernoulli(p) ? 1.0 : 0.0;
        return f;
    }

    RVector sample_vr(Eigen::Index size, double p, Rng &rng)
    {
        return sample_vr(size, 1, p, rng).col(0);
    }

    Vec3 sample_scatterer(const Vec3 &from, const Vec3 &to, Rng &rng)
    {
        const double u = rng.uniform(0.1, 0.9);
        Vec3 s;
        for (int i = 0; i < 3; ++i)
            s[i] = from[i] + u * (to[i] - from[i]) + rng.uniform(-scatterer_spread_m, scatterer_spread_m);
        return s;
    }

    CMatrix nlos_matrix(const ArrayGeometry &bs, const ArrayGeometry &ris, const Vec3 &bs_anchor,
                        const Vec3 &ris_anchor, int paths, double attenuation_db, double los_power,
                        double wave_number, Rng &rng)
    {
        CMatrix h = CMatrix::Zero(bs.count(), ris.count());
        const double target = db_to_linear(attenuation_db) * los_power;
        for (int l = 0; l < paths; ++l)
        {
            const Vec3 s = sample_scatterer(bs_anchor, ris_anchor, rng);
            const CVector b = los_vector(bs, s, wave_number);
            const CVector c = los_vector(ris, s, wave_number);
            // ||b c^T||_F^2 = ||b||^2 ||c||^2
            const double path_norm2 = b.squaredNorm() * c.squaredNorm();
            const cplx g = std::sqrt(target / path_norm2) * rng.complex_normal();
            h.noalias() += g * b * c.transpose();
        }
        return h;
    }

    CVector nlos_vector(const ArrayGeometry &ris, const Vec3 &ris_anchor, const Vec3 &user, int paths,
                        double attenuation_db, double los_power, double wave_number, Rng &rng)
    {
        CVector h = CVector::Zero(ris.count());
        const double target = db_to_linear(attenuation_db) * los_power;
        for (int l = 0; l < paths; ++l)
        {
            const Vec3 s = sample_scatterer(user, ris_anchor, rng);
            const CVector c = los_vector(ris, s, wave_number);
            const cplx g = std::sqrt(target / c.squaredNorm()) * rng.complex_normal();
            h += g * c;
        }
        return h;
    }

    std::vector<int> degenerate_entries(const CVector &h, double floor)
    {
        std::vector<int> bad;
        if (h.size() == 0)
            return bad;
        const double rms = std::sqrt(h.squaredNorm() / static_cast<double>(h.size()));
        for (Eigen::Index m = 0; m < h.size(); ++m)
            if (std::abs(h(m)) < floor * rms || rms == 0.0)
                bad.push_back(static_cast<int>(m));
        return bad;
    }

    CMatrix effective_channel(const CMatrix &h_rb, const CVector &h_ur)
    {
        if (h_rb.cols() != h_ur.size())
            throw std::invalid_argument("effective_channel: H_rb has " + std::to_string(h_rb.cols()) +
                                        " columns but h_ur has " + std::to_string(h_ur.size()) + " entries");
        return h_rb * h_ur.asDiagonal();
    }

    RisBsChannel sample_ris_bs(const SystemConfig &cfg, Rng &rng)
    {
        cfg.validate();
        const auto bs = bs_array(cfg);
        const auto ris = ris_array(cfg);
        const double k = cfg.wave_number();
        const CMatrix a = los_matrix(bs, ris, k);
        RisBsChannel out;
        out.vr_matrix = sample_vr(cfg.n_bs, cfg.m_ris, cfg.vr_prob, rng);
        out.h_rb = a.cwiseProduct(out.vr_matrix.cast<cplx>());
        out.h_rb += nlos_matrix(bs, ris, cfg.bs_position, cfg.ris_position, cfg.nlos_paths_rb,
                                cfg.nlos_attenuation_db, a.squaredNorm(), k, rng);
        return out;
    }

    UserChannel sample_user(const SystemConfig &cfg, Rng &rng)
    {
        const auto ris = ris_array(cfg);
        const double k = cfg.wave_number();
        UserChannel out;
        const double d = rng.uniform(cfg.user_distance_range.min, cfg.user_distance_range.max);
        out.position = {-d, cfg.user_y, cfg.user_z};
        const CVector a = los_vector(ris, out.position, k);
        out.vr_vector = sample_vr(cfg.m_ris, cfg.vr_prob, rng);
        out.h_ur = a.cwiseProduct(out.vr_vector.cast<cplx>());
        out.h_ur += nlos_vector(ris, cfg.ris_position, out.position, cfg.nlos_paths_ur, cfg.nlos_attenuation_db,
                                a.squaredNorm(), k, rng);
        return out;
    }

    ChannelRealization make_realization(const RisBsChannel &rb, const std::vector<UserChannel> &users)
    {
        if (users.empty())
            throw std::invalid_argument("make_realization: need at least one user draw");
        ChannelRealization r;
        r.h_rb = rb.h_rb;
        r.vr_matrix = rb.vr_matrix;
        for (const auto &u : users)
        {
            r.h_ur_seq.push_back(u.h_ur);
            r.vr_vector_seq.push_back(u.vr_vector);
            r.h_eff_seq.push_back(effective_channel(rb.h_rb, u.h_ur));
        }
        r.degenerate_indices = degenerate_entries(r.h_ur_seq.front());
        return r;
    }

    ChannelRealization assemble_channels(const SystemConfig &cfg, Rng &rng)
    {
        const RisBsChannel rb = sample_ris_bs(cfg, rng);
        std::vector<UserChannel> users;
        users.reserve(cfg.t_blocks);
        for (int t = 0; t < cfg.t_blocks; ++t)
            users.push_back(sample_user(cfg, rng));
        return make_realization(rb, users);
    }

    ChannelModel parse_channel_model(const std::string &name)
    {
        if (name == "near_field" || name == "near-field" || name == "considered")
            return ChannelModel::near_field;
        if (name == "sparse")
            return ChannelModel::sparse;
        if (name == "rayleigh")
            return ChannelModel::rayleigh;
        throw std::invalid_argument("unknown channel model '" + name + "'");
    }

    std::string to_string(ChannelModel model)
    {
        switch (model)
        {
        case ChannelModel::near_field:
            return "near_field";
        case ChannelModel::sparse:
            return "sparse";
        case ChannelModel::rayleigh:
            return "rayleigh";
        }
        return "unknown";
    }

    CVector steering_vector(int count, double theta)
    {
        CVector a(count);
        const double s = std::sin(theta);
        for (int n = 0; n < count; ++n)
            a(n) = std::polar(1.0, pi * n * s);
        return a;
    }

    namespace
    {
        // LoS path with unit mean power plus `paths` attenuated NLoS paths.
        CVector sparse_vector(int count, int paths, double attenuation_db, Rng &rng)
        {
            CVector h = CVector::Zero(count);
            for (int l = 0; l <= paths; ++l)
            {
                const double power = l == 0 ? 1.0 : db_to_linear(attenuation_db);
                const double theta = rng.uniform(-0.5 * pi, 0.5 * pi);
                h += rng.complex_normal(power) * steering_vector(count, theta);
            }
            return h;
        }
    } // namespace

    ChannelRealization sample_comparison_channel(ChannelModel model, const SystemConfig &cfg, Rng &rng)
    {
        cfg.validate();
        RisBsChannel rb;
        rb.vr_matrix = RMatrix::Ones(cfg.n_bs, cfg.m_ris);
        std::vector<UserChannel> users(cfg.t_blocks);
        switch (model)
        {
        case ChannelModel::sparse:
            rb.h_rb = CMatrix::Zero(cfg.n_bs, cfg.m_ris);
            for (int l = 0; l <= cfg.nlos_paths_rb; ++l)
            {
                const double power = l == 0 ? 1.0 : db_to_linear(cfg.nlos_attenuation_db);
                const double aoa = rng.uniform(-0.5 * pi, 0.5 * pi);
                const double aod = rng.uniform(-0.5 * pi, 0.5 * pi);
                rb.h_rb.noalias() += rng.complex_normal(power) * steering_vector(cfg.n_bs, aoa) *
                                     steering_vector(cfg.m_ris, aod).transpose();
            }
            for (auto &u : users)
                u.h_ur = sparse_vector(cfg.m_ris, cfg.nlos_paths_ur, cfg.nlos_attenuation_db, rng);
            break;
        case ChannelModel::rayleigh:
            rb.h_rb = rng.complex_normal_matrix(cfg.n_bs, cfg.m_ris);
            for (auto &u : users)
                u.h_ur = rng.complex_normal_vector(cfg.m_ris);
            break;
        case ChannelModel::near_field:
            throw std::invalid_argument("sample_comparison_channel: use assemble_channels for the near-field model");
        }
        for (auto &u : users)
            u.vr_vector = RVector::Ones(cfg.m_ris);
        return make_realization(rb, users);
    }

    ChannelRealization sample_channel(ChannelModel model, const SystemConfig &cfg, Rng &rng)
    {
        if (model == ChannelModel::near_field)
            return assemble_channels(cfg, rng);
        return sample_comparison_channel(model, cfg, rng);
    }

    std::string realization_to_json(const ChannelRealization &r)
    {
        using detail::json;
        json j;
        j["format"] = "ris2t-channel";
        j["version"] = 1;
        j["h_rb"] = detail::to_json(r.h_rb);
        j["vr_matrix"] = detail::to_json(r.vr_matrix);
        j["h_ur_seq"] = json::array();
        j["vr_vector_seq"] = json::array();
        for (const auto &h : r.h_ur_seq)
            j["h_ur_seq"].push_back(detail::to_json(CMatrix(h)));
        for (const auto &f : r.vr_vector_seq)
            j["vr_vector_seq"].push_back(detail::to_json(RMatrix(f)));
        return j.dump();
    }

    ChannelRealization realization_from_json(const std::string &text)
    {
        using detail::json;
        const json j = json::parse(text);
        if (j.value("format", "") != "ris2t-channel")
            throw std::invalid_argument("not a ris2t channel dump");
        RisBsChannel rb{detail::cmatrix_from_json(j.at("h_rb")), detail::rmatrix_from_json(j.at("vr_matrix"))};
        const auto &hs = j.at("h_ur_seq");
        const auto &fs = j.at("vr_vector_seq");
        if (hs.size() != fs.size())
            throw std::invalid_argument("channel dump: h_ur_seq and vr_vector_seq lengths differ");
        std::vector<UserChannel> users(hs.size());
        for (std::size_t t = 0; t < hs.size(); ++t)
        {
            users[t].h_ur = detail::cmatrix_from_json(hs[t]).col(0);
            users[t].vr_vector = detail::rmatrix_from_json(fs[t]).col(0);
        }
        return make_realization(rb, users);
    }

} // namespace ris2t
