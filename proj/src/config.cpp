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

#include "ris2t/config.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ris2t
{
    using nlohmann::json;

    namespace
    {
        void require(bool ok, const std::string &msg)
        {
            if (!ok)
                throw std::invalid_argument("invalid config: " + msg);
        }

        const std::set<std::string> &known_keys()
        {
            static const std::set<std::string> keys = {
                "n_bs", "m_ris", "n_rf", "q_pieces", "carrier_hz", "bs_position", "ris_position",
                "user_distance_range", "user_y", "user_z", "vr_prob", "nlos_paths_rb", "nlos_paths_ur",
                "nlos_attenuation_db", "t_blocks", "seed", "snr_db", "b_subframes", "trials",
                "combiner_row_offset", "spreading", "rank_rule", "initial_accuracy_db", "pilot_power"};
            return keys;
        }

        json to_json_object(const SystemConfig &c)
        {
            json j;
            j["n_bs"] = c.n_bs;
            j["m_ris"] = c.m_ris;
            j["n_rf"] = c.n_rf;
            j["q_pieces"] = c.q_pieces;
            j["carrier_hz"] = c.carrier_hz;
            j["bs_position"] = c.bs_position;
            j["ris_position"] = c.ris_position;
            j["user_distance_range"] = {c.user_distance_range.min, c.user_distance_range.max};
            j["user_y"] = c.user_y;
            j["user_z"] = c.user_z;
            j["vr_prob"] = c.vr_prob;
            j["nlos_paths_rb"] = c.nlos_paths_rb;
            j["nlos_paths_ur"] = c.nlos_paths_ur;
            j["nlos_attenuation_db"] = c.nlos_attenuation_db;
            j["t_blocks"] = c.t_blocks;
            j["seed"] = c.seed;
            j["snr_db"] = std::isinf(c.snr_db) ? json("noiseless") : json(c.snr_db);
            j["b_subframes"] = c.b_subframes;
            j["trials"] = c.trials;
            j["combiner_row_offset"] = c.combiner_row_offset;
            j["spreading"] = c.spreading == Spreading::dft ? "dft" : "hadamard";
            if (c.rank_rule.kind == RankRule::Kind::fixed)
                j["rank_rule"] = {{"fixed", c.rank_rule.rank}};
            else
                j["rank_rule"] = {{"threshold", c.rank_rule.threshold}};
            j["initial_accuracy_db"] = c.initial_accuracy_db ? json(*c.initial_accuracy_db) : json("perfect");
            j["pilot_power"] = c.pilot_power;
            return j;
        }
    } // namespace

    void SystemConfig::validate() const
    {
        require(n_bs >= 1, "n_bs must be >= 1");
        require(m_ris >= 1, "m_ris must be >= 1");
        require(n_rf >= 1, "n_rf must be >= 1");
        require(q_pieces >= 1, "q_pieces must be >= 1");
        require(t_blocks >= 1, "t_blocks must be >= 1");
        require(n_rf <= n_bs, "n_rf must not exceed n_bs");
        require(m_ris % q_pieces == 0, "q_pieces must divide m_ris");
        require(vr_prob >= 0.0 && vr_prob <= 1.0, "vr_prob must lie in [0,1]");
        require(carrier_hz > 0.0, "carrier_hz must be positive");
        require(nlos_paths_rb >= 0 && nlos_paths_ur >= 0, "nlos path counts must be >= 0");
        require(user_distance_range.min > 0.0 && user_distance_range.min <= user_distance_range.max,
                "user_distance_range must be a positive, ordered interval");
        require(b_subframes >= 0 && b_subframes <= m_sub(), "b_subframes must lie in [0, M/Q]");
        require(trials >= 1, "trials must be >= 1");
        require(!std::isnan(snr_db) && snr_db > -std::numeric_limits<double>::infinity(),
                "snr_db must be a number or +inf");
        require(combiner_row_offset >= 0, "combiner_row_offset must be >= 0");
        require(pilot_power > 0.0, "pilot_power must be positive");
        require(!initial_accuracy_db || *initial_accuracy_db <= 0.0, "initial_accuracy_db must be <= 0 dB");
        if (rank_rule.kind == RankRule::Kind::fixed)
            require(rank_rule.rank >= 1, "fixed rank must be >= 1");
        else
            require(rank_rule.threshold >= 0.0 && rank_rule.threshold < 1.0, "rank threshold must lie in [0,1)");
    }

    SystemConfig desk_preset()
    {
        return SystemConfig{};
    }

    SystemConfig paper_preset()
    {
        SystemConfig c;
        c.n_bs = 128;
        c.m_ris = 512;
        c.n_rf = 16;
        c.q_pieces = 16;
        c.trials = 1000;
        return c;
    }

    SystemConfig preset(const std::string &name)
    {
        if (name == "desk")
            return desk_preset();
        if (name == "paper")
            return paper_preset();
        throw std::invalid_argument("unknown preset '" + name + "' (expected desk or paper)");
    }

    SystemConfig config_from_json(const std::string &text, const SystemConfig &base)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
        }
        require(j.is_object(), "top level must be an object");
        for (auto it = j.begin(); it != j.end(); ++it)
            require(known_keys().count(it.key()) == 1, "unknown key '" + it.key() + "'");

        SystemConfig c = base;
        try
        {
            auto get = [&](const char *key, auto &field) {
                if (j.contains(key))
                    field = j.at(key).get<std::decay_t<decltype(field)>>();
            };
            get("n_bs", c.n_bs);
            get("m_ris", c.m_ris);
            get("n_rf", c.n_rf);
            get("q_pieces", c.q_pieces);
            get("carrier_hz", c.carrier_hz);
            get("bs_position", c.bs_position);
            get("ris_position", c.ris_position);
            if (j.contains("user_distance_range"))
            {
                auto r = j.at("user_distance_range").get<std::array<double, 2>>();
                c.user_distance_range = {r[0], r[1]};
            }
            get("user_y", c.user_y);
            get("user_z", c.user_z);
            get("vr_prob", c.vr_prob);
            get("nlos_paths_rb", c.nlos_paths_rb);
            get("nlos_paths_ur", c.nlos_paths_ur);
            get("nlos_attenuation_db", c.nlos_attenuation_db);
            get("t_blocks", c.t_blocks);
            get("seed", c.seed);
            if (j.contains("snr_db") && j.at("snr_db").is_string())
            {
                require(j.at("snr_db").get<std::string>() == "noiseless", "snr_db must be a number or \"noiseless\"");
                c.snr_db = std::numeric_limits<double>::infinity();
            }
            else
                get("snr_db", c.snr_db);
            get("b_subframes", c.b_subframes);
            get("trials", c.trials);
            get("combiner_row_offset", c.combiner_row_offset);
            get("pilot_power", c.pilot_power);
            if (j.contains("spreading"))
            {
                const auto s = j.at("spreading").get<std::string>();
                require(s == "dft" || s == "hadamard", "spreading must be dft or hadamard");
                c.spreading = s == "dft" ? Spreading::dft : Spreading::hadamard;
            }
            if (j.contains("rank_rule"))
            {
                const auto &r = j.at("rank_rule");
                require(r.is_object() && r.size() == 1, "rank_rule must be {\"fixed\": r} or {\"threshold\": tau}");
                if (r.contains("fixed"))
                    c.rank_rule = RankRule::fixed_rank(r.at("fixed").get<int>());
                else if (r.contains("threshold"))
                    c.rank_rule = RankRule::relative(r.at("threshold").get<double>());
                else
                    require(false, "rank_rule must be {\"fixed\": r} or {\"threshold\": tau}");
            }
            if (j.contains("initial_accuracy_db"))
            {
                const auto &ia = j.at("initial_accuracy_db");
                if (ia.is_string())
                {
                    require(ia.get<std::string>() == "perfect", "initial_accuracy_db must be a number or \"perfect\"");
                    c.initial_accuracy_db.reset();
                }
                else
                    c.initial_accuracy_db = ia.get<double>();
            }
        }
        catch (const json::exception &e)
        {
            throw std::invalid_argument(std::string("invalid config value: ") + e.what());
        }
        c.validate();
        return c;
    }

    SystemConfig load_config(const std::string &path, const SystemConfig &base)
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("cannot open config file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return config_from_json(ss.str(), base);
    }

    std::string config_to_json(const SystemConfig &cfg)
    {
        return to_json_object(cfg).dump(2);
    }

    std::string config_hash(const SystemConfig &cfg)
    {
        // FNV-1a, 64 bit
        const std::string text = to_json_object(cfg).dump();
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : text)
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

} // namespace ris2t
