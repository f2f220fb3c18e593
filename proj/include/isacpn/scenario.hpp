// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isacpn/channel.hpp"
#include "isacpn/cpe.hpp"
#include "isacpn/metrics.hpp"
#include "isacpn/ofdm.hpp"
#include "isacpn/pn_model.hpp"
#include "isacpn/radar.hpp"

namespace YAML {
class Node;
}

namespace isacpn {

enum class CpeCorrection { Off, FullFrame, ReferencePath };

struct ScenarioConfig {
    std::string id = "generic";
    WaveformConfig waveform;
    PnPsdModel pn_tx = reference_pll_model();
    PnPsdModel pn_rx = reference_pll_model();
    double gamma_db = 0.0;
    Architecture architecture = Architecture::Bistatic;
    PathSet paths{Architecture::Bistatic, {Path{}}};
    WindowSpec win_range;
    WindowSpec win_doppler;
    CpeCorrection cpe_correction = CpeCorrection::Off;
    std::size_t n_realizations = 20;
    std::uint64_t seed = 1;
    PnApplication application = PnApplication::Exact;
    double f_min = kDefaultFMin;

    PnMode pn_mode() const;
    /// Combined Tx/Rx level in rad^2 at gamma = 0 dB for the first path.
    double base_combined_level() const;
    void validate() const;
};

PnPsdModel parse_psd_model(const YAML::Node& node);
PnPsdModel load_psd_model(const std::string& path);

/// Applies the keys present in `node` on top of `cfg`.
void apply_overrides(ScenarioConfig& cfg, const YAML::Node& node, const std::string& base_dir = ".");
ScenarioConfig load_scenario(const std::string& path, ScenarioConfig base = {});

/// Path with range snapped to the nearest bin of the architecture.
Path path_from_range(const WaveformConfig& c, Architecture arch, double range_m, double doppler_hz, double gain_db,
                     double psi = 0.0);

CpeCorrection parse_cpe_correction(const std::string& s);
std::string to_string(CpeCorrection c);

}  // namespace isacpn
