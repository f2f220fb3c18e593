// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "isacpn/scenario.hpp"

namespace isacpn {

struct Stat {
    double mean = 0.0;
    double std = 0.0;
    std::size_t n = 0;
};

Stat summarize(const std::vector<double>& v);

/// gamma (dB) that brings the scenario's base combined level to `dbc`.
double gamma_for_level(const ScenarioConfig& cfg, double dbc);

struct CommPoint {
    double gamma_db;
    double combined_dbc;
    Stat evm_db;
    Stat evm_corrected_db;  // after full-frame CPE correction
};

std::vector<CommPoint> comm_sweep(const ScenarioConfig& cfg, const std::vector<double>& gammas_db,
                                  bool with_correction = false);

struct SensingOptions {
    bool cuts = true;
    bool sir = false;
    WindowSpec sir_window = WindowSpec::chebyshev(100.0);
};

struct SensingPoint {
    double gamma_db;
    double combined_dbc;
    Stat pplr, range_pslr, range_islr, doppler_pslr, doppler_islr, sir_mean, sir_min;
};

std::vector<SensingPoint> sensing_sweep(const ScenarioConfig& cfg, const std::vector<double>& gammas_db,
                                        SensingOptions opt = {});

struct CpeRangePoint {
    double range_m;
    Stat rmse;        // rad
    Stat std_ref;     // rad
    Stat std_target;  // rad
};

/// Reference path at bin 0 plus an equal-gain target at each range.
std::vector<CpeRangePoint> cpe_rmse_vs_range(const ScenarioConfig& cfg, const std::vector<double>& ranges_m);

/// Received frame for `known` under `pn` scaled to gamma, after the
/// scenario's CPE correction.
FreqFrame receive(const ScenarioConfig& cfg, const FreqFrame& known, const TimeFrame& tx, const PnPair& unit_pn,
                  double gamma_db);

}  // namespace isacpn
