// SPDX-License-Identifier: Apache-2.0
#include "isacpn/studies.hpp"

#include <cmath>
#include <numeric>

#include "isacpn/errors.hpp"

namespace isacpn {
namespace {

ScenarioConfig unit_gamma(ScenarioConfig cfg) {
    cfg.gamma_db = 0.0;
    return cfg;
}

double std_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

Stat summarize(const std::vector<double>& v) {
    Stat s;
    s.n = v.size();
    if (v.empty()) return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    s.std = std_of(v);
    return s;
}

double gamma_for_level(const ScenarioConfig& cfg, double dbc) {
    const double base = cfg.base_combined_level();
    if (!(base > 0.0)) throw DomainError("scenario has no PN to scale");
    return dbc - lin_to_db(base);
}

FreqFrame receive(const ScenarioConfig& cfg, const FreqFrame& known, const TimeFrame& tx, const PnPair& unit_pn,
                  double gamma_db) {
    PnPair pn = unit_pn;
    pn.scale = std::sqrt(db_to_lin(gamma_db));
    ChannelOptions opt{cfg.application, cfg.f_min};
    auto y = demodulate(apply_channel(tx, cfg.paths, pn, opt));
    switch (cfg.cpe_correction) {
        case CpeCorrection::Off: break;
        case CpeCorrection::FullFrame: y = correct_cpe(y, estimate_cpe(y, known)); break;
        case CpeCorrection::ReferencePath:
            y = correct_cpe(y, estimate_cpe_from_reference(y, known, WindowSpec::chebyshev(100.0)));
            break;
    }
    return y;
}

std::vector<CommPoint> comm_sweep(const ScenarioConfig& cfg, const std::vector<double>& gammas_db,
                                  bool with_correction) {
    const auto unit = unit_gamma(cfg);
    const double base = cfg.base_combined_level();
    std::vector<std::vector<double>> evm_raw(gammas_db.size()), evm_corr(gammas_db.size());
    for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
        const auto seed = derive_seed(cfg.seed, r);
        const auto known = random_frame(cfg.waveform, derive_seed(seed, 7));
        const auto tx = modulate(known);
        const auto pn = draw_pn(cfg.waveform, cfg.paths, unit.pn_mode(), seed, cfg.f_min);
        for (std::size_t g = 0; g < gammas_db.size(); ++g) {
            auto plain = unit;
            plain.cpe_correction = CpeCorrection::Off;
            const auto y = receive(plain, known, tx, pn, gammas_db[g]);
            evm_raw[g].push_back(evm(y, known));
            if (with_correction) evm_corr[g].push_back(evm(correct_cpe(y, estimate_cpe(y, known)), known));
        }
    }
    std::vector<CommPoint> out;
    for (std::size_t g = 0; g < gammas_db.size(); ++g)
        out.push_back({gammas_db[g], lin_to_db(base) + gammas_db[g], summarize(evm_raw[g]), summarize(evm_corr[g])});
    return out;
}

std::vector<SensingPoint> sensing_sweep(const ScenarioConfig& cfg, const std::vector<double>& gammas_db,
                                        SensingOptions opt) {
    const auto unit = unit_gamma(cfg);
    const double base = cfg.base_combined_level();
    const auto& target_path = cfg.paths.paths.front();
    const Bin target{target_path.delay_samples, doppler_column(cfg.waveform, target_path.doppler_hz)};
    const std::size_t G = gammas_db.size();
    std::vector<std::vector<double>> pp(G), rps(G), ris(G), dps(G), dis(G), sm(G), sn(G);

    for (std::size_t r = 0; r < cfg.n_realizations; ++r) {
        const auto seed = derive_seed(cfg.seed, r);
        const auto known = random_frame(cfg.waveform, derive_seed(seed, 7));
        const auto tx = modulate(known);
        const auto ideal_y = demodulate(apply_channel(tx, cfg.paths, PnPair{}, {cfg.application, cfg.f_min}));
        RadarImage ideal_cut;
        if (opt.cuts) ideal_cut = form_image(ideal_y, known, cfg.win_range, cfg.win_doppler, cfg.architecture);
        const auto pn = draw_pn(cfg.waveform, cfg.paths, unit.pn_mode(), seed, cfg.f_min);

        for (std::size_t g = 0; g < G; ++g) {
            const auto y = receive(unit, known, tx, pn, gammas_db[g]);
            if (opt.cuts) {
                const auto img = form_image(y, known, cfg.win_range, cfg.win_doppler, cfg.architecture);
                const Bin peak = find_peak(img);
                pp[g].push_back(pplr(img, ideal_cut, target));
                const auto rm = range_metrics(img, peak);
                const auto dm = doppler_metrics(img, peak);
                rps[g].push_back(rm.pslr_db);
                ris[g].push_back(rm.islr_db);
                dps[g].push_back(dm.pslr_db);
                dis[g].push_back(dm.islr_db);
            }
            if (opt.sir) {
                const auto img = form_image(y, known, opt.sir_window, opt.sir_window, cfg.architecture);
                const auto s = image_sir(img, mainlobe_mask(img, target));
                sm[g].push_back(s.mean_db);
                sn[g].push_back(s.min_db);
            }
        }
    }
    std::vector<SensingPoint> out;
    for (std::size_t g = 0; g < G; ++g)
        out.push_back({gammas_db[g], lin_to_db(base) + gammas_db[g], summarize(pp[g]), summarize(rps[g]), summarize(ris[g]),
                       summarize(dps[g]), summarize(dis[g]), summarize(sm[g]), summarize(sn[g])});
    return out;
}

std::vector<CpeRangePoint> cpe_rmse_vs_range(const ScenarioConfig& cfg, const std::vector<double>& ranges_m) {
    const auto& c = cfg.waveform;
    const auto win = WindowSpec::chebyshev(100.0);

    std::vector<Path> targets;
    std::size_t max_d = 0;
    for (double r : ranges_m) {
        targets.push_back(path_from_range(c, Architecture::Bistatic, r, 0.0, 0.0));
        max_d = std::max(max_d, targets.back().delay_samples);
    }
    PathSet span{Architecture::Bistatic, {Path{}, Path{}}};
    span.paths[1].delay_samples = max_d;

    const std::size_t R = ranges_m.size();
    std::vector<std::vector<double>> rmse(R), sref(R), stgt(R);
    const double scale = std::sqrt(db_to_lin(cfg.gamma_db));
    for (std::size_t rz = 0; rz < cfg.n_realizations; ++rz) {
        const auto seed = derive_seed(cfg.seed, rz);
        const auto known = random_frame(c, derive_seed(seed, 7));
        const auto tx = modulate(known);
        auto pn = draw_pn(c, span, PnMode::bistatic(cfg.pn_tx, cfg.pn_rx), seed, cfg.f_min);
        pn.scale = scale;
        for (std::size_t i = 0; i < R; ++i) {
            PathSet ps{Architecture::Bistatic, {Path{}, targets[i]}};
            const auto y = demodulate(apply_channel(tx, ps, pn, {cfg.application, cfg.f_min}));
            const auto ref = cir_bin_phase(y, known, win, 0);
            const auto tgt = cir_bin_phase(y, known, win, targets[i].delay_samples);
            double acc = 0.0;
            for (std::size_t m = 0; m < ref.size(); ++m) {
                const double d = wrap_phase(tgt[m] - ref[m]);
                acc += d * d;
            }
            rmse[i].push_back(std::sqrt(acc / static_cast<double>(ref.size())));
            sref[i].push_back(std_of(ref));
            stgt[i].push_back(std_of(tgt));
        }
    }
    std::vector<CpeRangePoint> out;
    for (std::size_t i = 0; i < R; ++i)
        out.push_back({ranges_m[i], summarize(rmse[i]), summarize(sref[i]), summarize(stgt[i])});
    return out;
}

}  // namespace isacpn
