// SPDX-License-Identifier: Apache-2.0
#include "isacpn/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>

#include "isacpn/errors.hpp"

namespace isacpn {

PnMode ScenarioConfig::pn_mode() const {
    const double g = db_to_lin(gamma_db);
    if (architecture == Architecture::Monostatic) return PnMode::monostatic(PnPsdModel::scaled(pn_tx, g));
    return PnMode::bistatic(PnPsdModel::scaled(pn_tx, g), PnPsdModel::scaled(pn_rx, g));
}

double ScenarioConfig::base_combined_level() const {
    const double f_max = waveform.bandwidth / 2.0;
    if (architecture == Architecture::Monostatic) {
        const double tau = paths.paths.empty() ? 0.0 : static_cast<double>(paths.paths.front().delay_samples) / waveform.bandwidth;
        return combined_level(pn_tx, pn_tx, CombineMode::monostatic(tau), f_max, f_min);
    }
    return combined_level(pn_tx, pn_rx, CombineMode::bistatic(), f_max, f_min);
}

void ScenarioConfig::validate() const {
    waveform.validate();
    if (paths.paths.empty()) throw ConfigError("scenario needs at least one path");
    if (n_realizations == 0) throw ConfigError("n_realizations must be positive");
    if (!(f_min > 0)) throw ConfigError("f_min must be positive");
    for (const auto& p : paths.paths) {
        if (std::abs(p.doppler_hz) > waveform.bandwidth / 2) throw ConfigError("|f_D| must not exceed B/2");
        if (p.delay_samples >= waveform.n_subcarriers) throw ConfigError("path delay beyond the unambiguous range");
    }
}

namespace {

std::vector<std::pair<double, double>> parse_pz_list(const YAML::Node& n) {
    std::vector<std::pair<double, double>> out;
    for (const auto& e : n) {
        if (e.IsSequence()) out.emplace_back(e[0].as<double>(), e[1].as<double>());
        else out.emplace_back(e["f_hz"].as<double>(), e["exponent"].as<double>(2.0));
    }
    return out;
}

}  // namespace

PnPsdModel parse_psd_model(const YAML::Node& node) {
    const auto variant = node["variant"].as<std::string>("pll");
    PnPsdModel model = reference_pll_model();
    if (variant == "pll") {
        PllPsdParams p{db_to_lin(node["l0_dbchz"].as<double>(-105.0)), db_to_lin(node["l_floor_dbchz"].as<double>(-155.0)),
                       node["f_corner_hz"].as<double>(10e3), node["b_pll_hz"].as<double>(150e3)};
        model = PnPsdModel::pll(p);
    } else if (variant == "pole_zero") {
        PoleZeroPsdParams p{db_to_lin(node["psd0_dbchz"].as<double>()), parse_pz_list(node["zeros"]),
                            parse_pz_list(node["poles"])};
        model = PnPsdModel::pole_zero(p);
    } else {
        throw ConfigError("unknown PSD variant: " + variant);
    }
    if (node["gamma_db"]) model = PnPsdModel::scaled(model, db_to_lin(node["gamma_db"].as<double>()));
    return model;
}

PnPsdModel load_psd_model(const std::string& path) {
    try {
        return parse_psd_model(YAML::LoadFile(path));
    } catch (const YAML::Exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

CpeCorrection parse_cpe_correction(const std::string& s) {
    if (s == "off" || s == "none") return CpeCorrection::Off;
    if (s == "full-frame" || s == "full_frame") return CpeCorrection::FullFrame;
    if (s == "reference-path" || s == "reference_path") return CpeCorrection::ReferencePath;
    throw ConfigError("unknown cpe_correction: " + s);
}

std::string to_string(CpeCorrection c) {
    switch (c) {
        case CpeCorrection::Off: return "off";
        case CpeCorrection::FullFrame: return "full-frame";
        case CpeCorrection::ReferencePath: return "reference-path";
    }
    return "?";
}

Path path_from_range(const WaveformConfig& c, Architecture arch, double range_m, double doppler_hz, double gain_db,
                     double psi) {
    const double dr = axes(c, arch).range_resolution;
    Path p;
    p.delay_samples = static_cast<std::size_t>(std::llround(std::max(range_m, 0.0) / dr));
    p.doppler_hz = doppler_hz;
    p.alpha = std::pow(10.0, gain_db / 20.0);
    p.psi = psi;
    return p;
}

namespace {

PnPsdModel psd_from(const YAML::Node& n, const std::string& base_dir) {
    if (n.IsScalar()) {
        const auto v = n.as<std::string>();
        if (v == "reference-pll") return reference_pll_model();
        std::filesystem::path p(v);
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        return load_psd_model(p.string());
    }
    return parse_psd_model(n);
}

WindowSpec window_from(const YAML::Node& n) {
    const auto kind = n.IsScalar() ? n.as<std::string>() : n["kind"].as<std::string>("rectangular");
    if (kind == "rectangular") return WindowSpec::rectangular();
    if (kind == "chebyshev")
        return WindowSpec::chebyshev(n.IsMap() ? n["attenuation_db"].as<double>(100.0) : 100.0);
    throw ConfigError("unknown window: " + kind);
}

}  // namespace

void apply_overrides(ScenarioConfig& cfg, const YAML::Node& node, const std::string& base_dir) {
    try {
        if (node["id"]) cfg.id = node["id"].as<std::string>();
        if (const auto w = node["waveform"]) {
            auto& c = cfg.waveform;
            if (w["fc_hz"]) c.fc = w["fc_hz"].as<double>();
            if (w["bandwidth_hz"]) c.bandwidth = w["bandwidth_hz"].as<double>();
            if (w["n_subcarriers"]) c.n_subcarriers = w["n_subcarriers"].as<std::size_t>();
            if (w["cp_length"]) c.cp_length = w["cp_length"].as<std::size_t>();
            if (w["n_symbols"]) c.n_symbols = w["n_symbols"].as<std::size_t>();
            if (w["modulation"]) c.modulation = parse_modulation(w["modulation"].as<std::string>());
        }
        if (const auto pn = node["pn"]) {
            if (pn["tx"]) cfg.pn_tx = psd_from(pn["tx"], base_dir);
            if (pn["rx"]) cfg.pn_rx = psd_from(pn["rx"], base_dir);
            if (pn["model"]) cfg.pn_tx = cfg.pn_rx = psd_from(pn["model"], base_dir);
            if (pn["gamma_db"]) cfg.gamma_db = pn["gamma_db"].as<double>();
            if (pn["f_min_hz"]) cfg.f_min = pn["f_min_hz"].as<double>();
            if (pn["application"]) {
                const auto a = pn["application"].as<std::string>();
                if (a == "exact") cfg.application = PnApplication::Exact;
                else if (a == "small_angle" || a == "small-angle") cfg.application = PnApplication::SmallAngle;
                else throw ConfigError("unknown pn application: " + a);
            }
        }
        if (node["architecture"]) {
            const auto a = node["architecture"].as<std::string>();
            if (a == "monostatic") cfg.architecture = Architecture::Monostatic;
            else if (a == "bistatic") cfg.architecture = Architecture::Bistatic;
            else throw ConfigError("unknown architecture: " + a);
            cfg.paths.architecture = cfg.architecture;
        }
        if (const auto ps = node["paths"]) {
            cfg.paths.paths.clear();
            cfg.paths.architecture = cfg.architecture;
            for (const auto& p : ps) {
                double fd = p["doppler_hz"].as<double>(0.0);
                if (p["doppler_over_delta_f"])
                    fd = p["doppler_over_delta_f"].as<double>() * cfg.waveform.subcarrier_spacing();
                cfg.paths.paths.push_back(path_from_range(cfg.waveform, cfg.architecture, p["range_m"].as<double>(0.0), fd,
                                                          p["gain_db"].as<double>(0.0), p["psi_rad"].as<double>(0.0)));
            }
        }
        if (const auto w = node["windows"]) {
            if (w["range"]) cfg.win_range = window_from(w["range"]);
            if (w["doppler"]) cfg.win_doppler = window_from(w["doppler"]);
        }
        if (node["cpe_correction"]) cfg.cpe_correction = parse_cpe_correction(node["cpe_correction"].as<std::string>());
        if (node["n_realizations"]) cfg.n_realizations = node["n_realizations"].as<std::size_t>();
        if (node["seed"]) cfg.seed = node["seed"].as<std::uint64_t>();
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ScenarioConfig load_scenario(const std::string& path, ScenarioConfig base) {
    YAML::Node node;
    try {
        node = YAML::LoadFile(path);
    } catch (const YAML::Exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    apply_overrides(base, node, std::filesystem::path(path).parent_path().string());
    base.validate();
    return base;
}

}  // namespace isacpn
