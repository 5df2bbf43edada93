// SPDX-License-Identifier: Apache-2.0
//
// ris-hst: link-level simulator for RIS-assisted high-speed-train MISO downlinks
// Copyright (C) 2026 The ris-hst authors
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

#include "rishst/config.hpp"
#include "rishst/result_table.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace rishst
{
    using nlohmann::json;

    namespace
    {
        [[noreturn]] void fail(const std::string &path, const std::string &message)
        {
            throw ConfigError(path + ": " + message);
        }

        void reject_unknown(const json &obj, const std::string &path, const std::set<std::string> &known)
        {
            for (auto it = obj.begin(); it != obj.end(); ++it)
                if (!known.count(it.key()))
                    fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
        }

        std::string join(const std::string &path, const std::string &key)
        {
            return path.empty() ? key : path + "." + key;
        }

        double get_number(const json &obj, const std::string &path, const std::string &key, double fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const json &v = obj.at(key);
            if (!v.is_number())
                fail(join(path, key), "expected a number");
            const double x = v.get<double>();
            if (!std::isfinite(x))
                fail(join(path, key), "must be finite");
            return x;
        }

        std::uint64_t get_count(const json &obj, const std::string &path, const std::string &key, std::uint64_t fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const json &v = obj.at(key);
            if (v.is_number_unsigned())
                return v.get<std::uint64_t>();
            if (v.is_number_integer())
                fail(join(path, key), "must be non-negative");
            if (v.is_number_float())
            {
                const double x = v.get<double>();
                if (x >= 0.0 && x == std::floor(x) && x < 1.8e19)
                    return std::uint64_t(x);
            }
            fail(join(path, key), "expected a non-negative integer");
        }

        bool get_bool(const json &obj, const std::string &path, const std::string &key, bool fallback)
        {
            if (!obj.contains(key))
                return fallback;
            if (!obj.at(key).is_boolean())
                fail(join(path, key), "expected true or false");
            return obj.at(key).get<bool>();
        }

        std::string get_string(const json &obj, const std::string &path, const std::string &key)
        {
            if (!obj.at(key).is_string())
                fail(join(path, key), "expected a string");
            return obj.at(key).get<std::string>();
        }

        Eigen::Vector3d get_position(const json &obj, const std::string &path, const std::string &key,
                                     const Eigen::Vector3d &fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const json &v = obj.at(key);
            if (!v.is_array() || v.size() != 3)
                fail(join(path, key), "expected [x, y, z] in meters");
            Eigen::Vector3d p;
            for (int i = 0; i < 3; ++i)
            {
                if (!v[std::size_t(i)].is_number())
                    fail(join(path, key), "coordinates must be numbers");
                p[i] = v[std::size_t(i)].get<double>();
            }
            return p;
        }

        std::size_t perfect_square_root(double n_el)
        {
            if (!(n_el >= 1.0) || n_el != std::floor(n_el) || n_el > 1e12)
                return 0;
            const auto side = std::size_t(std::llround(std::sqrt(n_el)));
            return double(side) * double(side) == n_el ? side : 0;
        }

        ScenarioParams parse_scenario(const json &s, const std::string &path)
        {
            if (!s.is_object())
                fail(path, "expected an object");
            reject_unknown(s, path,
                           {"train_speed_kmh", "train_speed_mps", "carrier_hz", "bandwidth_hz", "noise_power_dbm",
                            "transmit_power_dbm", "num_tx", "ris_elements", "frame_s", "num_slots", "rician_k",
                            "ref_loss_db", "ref_distance_m", "pl_exp_direct", "pl_exp_bs_ris", "pl_exp_ris_ap",
                            "bs_pos", "ris_pos", "ap_pos", "cap_gap", "snr_threshold_db", "num_sinusoids",
                            "direct_los_doppler", "direct_link"});

            ScenarioParams p;
            if (s.contains("train_speed_kmh") && s.contains("train_speed_mps"))
                fail(join(path, "train_speed_kmh"), "give either train_speed_kmh or train_speed_mps, not both");
            if (s.contains("train_speed_kmh"))
                p.train_speed_mps = get_number(s, path, "train_speed_kmh", 360.0) / 3.6;
            p.train_speed_mps = get_number(s, path, "train_speed_mps", p.train_speed_mps);
            p.carrier_hz = get_number(s, path, "carrier_hz", p.carrier_hz);
            p.bandwidth_hz = get_number(s, path, "bandwidth_hz", p.bandwidth_hz);
            p.noise_power_w = dbm_to_watts(get_number(s, path, "noise_power_dbm", -90.0));
            p.tx_power_w = dbm_to_watts(get_number(s, path, "transmit_power_dbm", 40.0));
            p.num_tx = get_count(s, path, "num_tx", p.num_tx);

            const double n_el = get_number(s, path, "ris_elements", double(p.num_elements()));
            p.ris_side = perfect_square_root(n_el);
            if (p.ris_side == 0)
                fail(join(path, "ris_elements"), "must be a positive perfect square (the RIS is N x N)");

            p.frame_s = get_number(s, path, "frame_s", p.frame_s);
            p.num_slots = get_count(s, path, "num_slots", p.num_slots);

            if (s.contains("rician_k") && s.at("rician_k").is_string())
            {
                if (s.at("rician_k").get<std::string>() != "inf")
                    fail(join(path, "rician_k"), "expected a number or \"inf\"");
                p.rician_k = std::numeric_limits<double>::infinity();
            }
            else
                p.rician_k = get_number(s, path, "rician_k", p.rician_k);

            p.ref_loss = db_to_linear(-get_number(s, path, "ref_loss_db", 30.0));
            p.ref_distance_m = get_number(s, path, "ref_distance_m", p.ref_distance_m);
            p.pl_exp_direct = get_number(s, path, "pl_exp_direct", p.pl_exp_direct);
            p.pl_exp_bs_ris = get_number(s, path, "pl_exp_bs_ris", p.pl_exp_bs_ris);
            p.pl_exp_ris_ap = get_number(s, path, "pl_exp_ris_ap", p.pl_exp_ris_ap);
            p.bs_pos = get_position(s, path, "bs_pos", p.bs_pos);
            p.ris_pos = get_position(s, path, "ris_pos", p.ris_pos);
            p.ap_pos = get_position(s, path, "ap_pos", p.ap_pos);
            p.cap_gap = get_number(s, path, "cap_gap", p.cap_gap);
            p.snr_threshold = db_to_linear(get_number(s, path, "snr_threshold_db", 10.0));
            p.num_sinusoids = get_count(s, path, "num_sinusoids", p.num_sinusoids);
            p.direct_los_doppler = get_bool(s, path, "direct_los_doppler", p.direct_los_doppler);
            p.direct_link = get_bool(s, path, "direct_link", p.direct_link);
            return p;
        }

        ExperimentFlags parse_flags(const json &f, const std::string &path)
        {
            if (!f.is_object())
                fail(path, "expected an object");
            reject_unknown(f, path,
                           {"outage_convention", "no_ris_mode", "rate_model", "paper_literal_pathloss", "angle_mode"});
            ExperimentFlags flags;
            if (f.contains("outage_convention"))
            {
                const auto v = get_string(f, path, "outage_convention");
                if (v == "paper")
                    flags.outage_convention = OutageConvention::paper;
                else if (v == "standard")
                    flags.outage_convention = OutageConvention::standard;
                else
                    fail(join(path, "outage_convention"), "expected \"paper\" or \"standard\"");
            }
            if (f.contains("no_ris_mode"))
            {
                const auto v = get_string(f, path, "no_ris_mode");
                if (v == "remove")
                    flags.no_ris_mode = NoRisMode::remove;
                else if (v == "identity_phase")
                    flags.no_ris_mode = NoRisMode::identity_phase;
                else
                    fail(join(path, "no_ris_mode"), "expected \"remove\" or \"identity_phase\"");
            }
            if (f.contains("rate_model"))
            {
                const auto v = get_string(f, path, "rate_model");
                if (v == "gap")
                    flags.rate_model = RateModel::gap;
                else if (v == "multiplier")
                    flags.rate_model = RateModel::multiplier;
                else
                    fail(join(path, "rate_model"), "expected \"gap\" or \"multiplier\"");
            }
            if (f.contains("angle_mode"))
            {
                const auto v = get_string(f, path, "angle_mode");
                if (v == "geometric")
                    flags.angle_mode = AngleMode::geometric;
                else if (v == "stochastic")
                    flags.angle_mode = AngleMode::stochastic;
                else
                    fail(join(path, "angle_mode"), "expected \"geometric\" or \"stochastic\"");
            }
            flags.paper_literal_pathloss = get_bool(f, path, "paper_literal_pathloss", false);
            return flags;
        }

        Scheme parse_scheme(const std::string &name, const std::string &path)
        {
            if (name == "bcd")
                return Scheme::bcd;
            if (name == "random_phase")
                return Scheme::random_phase;
            if (name == "no_ris")
                return Scheme::no_ris;
            fail(path, "unknown scheme '" + name + "' (bcd, random_phase, no_ris)");
        }
    }

    std::string_view to_string(ExperimentKind e)
    {
        switch (e)
        {
        case ExperimentKind::gain_vs_time:
            return "gain_vs_time";
        case ExperimentKind::rate_vs_elements:
            return "rate_vs_elements";
        case ExperimentKind::capacity_vs_time:
            return "capacity_vs_time";
        case ExperimentKind::ber_vs_position:
            return "ber_vs_position";
        case ExperimentKind::outage_vs_time:
            return "outage_vs_time";
        }
        return "unknown";
    }

    ExperimentKind parse_experiment(std::string_view name)
    {
        for (auto e : {ExperimentKind::gain_vs_time, ExperimentKind::rate_vs_elements, ExperimentKind::capacity_vs_time,
                       ExperimentKind::ber_vs_position, ExperimentKind::outage_vs_time})
            if (to_string(e) == name)
                return e;
        throw ConfigError("experiment: unknown experiment '" + std::string(name) +
                          "' (gain_vs_time, rate_vs_elements, capacity_vs_time, ber_vs_position, outage_vs_time)");
    }

    bool requires_sweep(ExperimentKind e)
    {
        return e == ExperimentKind::rate_vs_elements || e == ExperimentKind::ber_vs_position;
    }

    std::size_t default_trials(ExperimentKind e)
    {
        return e == ExperimentKind::ber_vs_position ? 2000 : 500;
    }

    std::vector<double> default_sweep(ExperimentKind e)
    {
        if (e == ExperimentKind::rate_vs_elements)
            return {100.0, 400.0, 900.0, 1600.0};
        if (e == ExperimentKind::ber_vs_position)
        {
            std::vector<double> ys;
            for (int y = 0; y <= 300; y += 20)
                ys.push_back(double(y));
            return ys;
        }
        return {};
    }

    double db_to_linear(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    double dbm_to_watts(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    void ExperimentConfig::validate() const
    {
        try
        {
            scenario.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string("scenario: ") + e.what());
        }
        if (experiment != ExperimentKind::ber_vs_position || true)
        {
            try
            {
                if (scenario.angle_mode == AngleMode::geometric)
                    geometric_angles(scenario);
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(std::string("scenario: ") + e.what());
            }
        }
        if (trials < 1)
            throw ConfigError("trials: must be >= 1");
        if (schemes.empty())
            throw ConfigError("schemes: at least one scheme is required");
        if (!(bcd.tol > 0.0))
            throw ConfigError("bcd.tol: must be positive");
        if (bcd.max_iter < 1)
            throw ConfigError("bcd.max_iter: must be >= 1");
        if (scenario.angle_mode != flags.angle_mode ||
            scenario.paper_literal_pathloss != flags.paper_literal_pathloss)
            throw ConfigError("flags: scenario and flags disagree on angle_mode/paper_literal_pathloss");

        if (requires_sweep(experiment) && sweep.empty())
            throw ConfigError("sweep: " + std::string(to_string(experiment)) + " needs a non-empty sweep");
        if (!requires_sweep(experiment) && !sweep.empty())
            throw ConfigError("sweep: " + std::string(to_string(experiment)) + " does not take a sweep");

        for (std::size_t i = 0; i < sweep.size(); ++i)
        {
            const std::string path = "sweep[" + std::to_string(i) + "]";
            if (!std::isfinite(sweep[i]))
                throw ConfigError(path + ": must be finite");
            if (experiment == ExperimentKind::rate_vs_elements && perfect_square_root(sweep[i]) == 0)
                throw ConfigError(path + ": RIS element count must be a positive perfect square");
            if (experiment == ExperimentKind::ber_vs_position)
            {
                ScenarioParams moved = scenario;
                moved.ap_pos.y() = sweep[i];
                try
                {
                    moved.validate();
                    if (moved.angle_mode == AngleMode::geometric)
                        geometric_angles(moved);
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError(path + ": " + e.what());
                }
            }
        }
    }

    ExperimentConfig parse_config(std::string_view json_text, const ConfigOverrides &overrides)
    {
        json root;
        if (json_text.find_first_not_of(" \t\r\n") == std::string_view::npos)
            root = json::object();
        else
        {
            try
            {
                root = json::parse(json_text.begin(), json_text.end());
            }
            catch (const json::parse_error &e)
            {
                throw ConfigError(std::string("(document): JSON parse error: ") + e.what());
            }
        }
        if (!root.is_object())
            throw ConfigError("(document): top level must be a JSON object");
        reject_unknown(root, "",
                       {"experiment", "schemes", "trials", "seed", "sweep", "output_path", "scenario", "flags", "bcd"});

        ExperimentConfig cfg;

        if (overrides.experiment)
            cfg.experiment = parse_experiment(*overrides.experiment);
        else if (root.contains("experiment"))
            cfg.experiment = parse_experiment(get_string(root, "", "experiment"));
        else
            throw ConfigError("experiment: required field is missing");

        if (root.contains("scenario"))
            cfg.scenario = parse_scenario(root.at("scenario"), "scenario");
        if (root.contains("flags"))
            cfg.flags = parse_flags(root.at("flags"), "flags");
        cfg.scenario.angle_mode = cfg.flags.angle_mode;
        cfg.scenario.paper_literal_pathloss = cfg.flags.paper_literal_pathloss;

        if (root.contains("bcd"))
        {
            const json &b = root.at("bcd");
            if (!b.is_object())
                fail("bcd", "expected an object");
            reject_unknown(b, "bcd", {"tol", "max_iter"});
            cfg.bcd.tol = get_number(b, "bcd", "tol", cfg.bcd.tol);
            cfg.bcd.max_iter = get_count(b, "bcd", "max_iter", cfg.bcd.max_iter);
        }

        if (root.contains("schemes"))
        {
            const json &s = root.at("schemes");
            if (!s.is_array())
                fail("schemes", "expected an array of scheme names");
            cfg.schemes.clear();
            std::set<Scheme> seen;
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                const std::string path = "schemes[" + std::to_string(i) + "]";
                if (!s[i].is_string())
                    fail(path, "expected a string");
                const Scheme sc = parse_scheme(s[i].get<std::string>(), path);
                if (!seen.insert(sc).second)
                    fail(path, "duplicate scheme");
                cfg.schemes.push_back(sc);
            }
        }

        cfg.trials = overrides.trials ? *overrides.trials : get_count(root, "", "trials", default_trials(cfg.experiment));
        cfg.seed = overrides.seed ? *overrides.seed : get_count(root, "", "seed", cfg.seed);
        if (overrides.output_path)
            cfg.output_path = *overrides.output_path;
        else if (root.contains("output_path"))
            cfg.output_path = get_string(root, "", "output_path");

        if (root.contains("sweep"))
        {
            const json &s = root.at("sweep");
            if (!s.is_array())
                fail("sweep", "expected an array of numbers");
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                if (!s[i].is_number())
                    fail("sweep[" + std::to_string(i) + "]", "expected a number");
                cfg.sweep.push_back(s[i].get<double>());
            }
        }
        else
            cfg.sweep = default_sweep(cfg.experiment);

        cfg.validate();
        return cfg;
    }

    ExperimentConfig load_config(const std::string &path, const ConfigOverrides &overrides)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot read configuration file '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str(), overrides);
    }

    std::string canonical_json(const ExperimentConfig &cfg)
    {
        const ScenarioParams &s = cfg.scenario;
        auto pos = [](const Eigen::Vector3d &p) { return json::array({p.x(), p.y(), p.z()}); };

        json j;
        j["experiment"] = std::string(to_string(cfg.experiment));
        json schemes = json::array();
        for (Scheme sc : cfg.schemes)
            schemes.push_back(std::string(to_string(sc)));
        j["schemes"] = schemes;
        j["trials"] = cfg.trials;
        j["seed"] = cfg.seed;
        j["sweep"] = cfg.sweep;
        j["scenario"] = {
            {"train_speed_mps", s.train_speed_mps},
            {"carrier_hz", s.carrier_hz},
            {"bandwidth_hz", s.bandwidth_hz},
            {"noise_power_w", s.noise_power_w},
            {"tx_power_w", s.tx_power_w},
            {"num_tx", s.num_tx},
            {"ris_side", s.ris_side},
            {"frame_s", s.frame_s},
            {"num_slots", s.num_slots},
            {"rician_k", std::isinf(s.rician_k) ? json("inf") : json(s.rician_k)},
            {"ref_loss", s.ref_loss},
            {"ref_distance_m", s.ref_distance_m},
            {"pl_exp_direct", s.pl_exp_direct},
            {"pl_exp_bs_ris", s.pl_exp_bs_ris},
            {"pl_exp_ris_ap", s.pl_exp_ris_ap},
            {"bs_pos", pos(s.bs_pos)},
            {"ris_pos", pos(s.ris_pos)},
            {"ap_pos", pos(s.ap_pos)},
            {"cap_gap", s.cap_gap},
            {"snr_threshold", s.snr_threshold},
            {"num_sinusoids", s.num_sinusoids},
            {"direct_los_doppler", s.direct_los_doppler},
            {"direct_link", s.direct_link},
        };
        j["flags"] = {
            {"outage_convention", std::string(to_string(cfg.flags.outage_convention))},
            {"no_ris_mode", cfg.flags.no_ris_mode == NoRisMode::remove ? "remove" : "identity_phase"},
            {"rate_model", std::string(to_string(cfg.flags.rate_model))},
            {"paper_literal_pathloss", cfg.flags.paper_literal_pathloss},
            {"angle_mode", cfg.flags.angle_mode == AngleMode::geometric ? "geometric" : "stochastic"},
        };
        j["bcd"] = {{"tol", cfg.bcd.tol}, {"max_iter", cfg.bcd.max_iter}};
        return j.dump();
    }

    std::string config_hash(const ExperimentConfig &cfg)
    {
        return fnv1a_hex(canonical_json(cfg));
    }
}
