// SPDX-License-Identifier: Apache-2.0
#include "isacpn/experiments.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "isacpn/errors.hpp"
#include "isacpn/studies.hpp"

#ifndef ISACPN_DATA_DIR
#define ISACPN_DATA_DIR "data"
#endif

namespace fs = std::filesystem;

namespace isacpn {

CsvTable::CsvTable(std::string experiment, std::string anchor, std::vector<std::string> columns)
    : experiment_(std::move(experiment)), anchor_(std::move(anchor)), columns_(std::move(columns)) {}

void CsvTable::meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }

void CsvTable::row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) throw std::logic_error("row width does not match header");
    rows_.push_back(std::move(cells));
}

void CsvTable::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "# experiment: " << experiment_ << "\n# anchor: " << anchor_ << "\n";
    for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << "\n";
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
}

std::string fmt_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string data_dir() {
    if (const char* env = std::getenv("ISACPN_DATA_DIR")) return env;
    return ISACPN_DATA_DIR;
}

namespace {

struct Context {
    std::string name;
    ExperimentOptions opt;
    ScenarioConfig base;
    std::optional<YAML::Node> file;
    std::string file_dir;
    std::vector<std::string> written;

    fs::path out(const std::string& file) const { return fs::path(opt.out_dir) / file; }

    void emit(CsvTable& t, const std::string& file) {
        t.meta("seed", std::to_string(base.seed));
        t.meta("realizations", std::to_string(base.n_realizations));
        t.meta("scale", std::to_string(opt.scale));
        const auto p = out(file).string();
        t.write(p);
        written.push_back(p);
    }
};

std::vector<std::string> metric_columns() {
    return {"scenario_id", "gamma_db", "combined_pn_dbc", "metric", "value_db", "std_db", "n_realizations"};
}

void metric_row(CsvTable& t, const std::string& id, double gamma_db, double dbc, const std::string& metric,
                const Stat& s) {
    t.row({id, fmt_num(gamma_db), fmt_num(dbc), metric, fmt_num(s.mean), fmt_num(s.std), std::to_string(s.n)});
}

std::vector<double> range_steps(double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
}

std::size_t scaled_m(const Context& ctx, std::size_t m) { return std::max<std::size_t>(4, m / ctx.opt.scale); }

// Scenario with the experiment's own defaults, then the user's file, then CLI flags.
ScenarioConfig derive(const Context& ctx, const std::function<void(ScenarioConfig&)>& defaults) {
    ScenarioConfig c;
    defaults(c);
    c.paths.architecture = c.architecture;
    if (ctx.file) apply_overrides(c, *ctx.file, ctx.file_dir);
    if (ctx.opt.seed) c.seed = *ctx.opt.seed;
    if (ctx.opt.realizations) c.n_realizations = *ctx.opt.realizations;
    c.n_realizations = std::max<std::size_t>(1, c.n_realizations / ctx.opt.scale);
    c.waveform.n_symbols = scaled_m(ctx, c.waveform.n_symbols);
    c.validate();
    return c;
}

std::string wf_id(const WaveformConfig& w) {
    return "N=" + std::to_string(w.n_subcarriers) + ";NCP=" + std::to_string(w.cp_length) +
           ";M=" + std::to_string(w.n_symbols) + ";" + to_string(w.modulation);
}

const std::vector<std::size_t> kTableIN{256, 512, 1024, 2048, 4096, 8192, 16384};
const std::vector<std::size_t> kSensingN{256, 2048, 16384};
const std::vector<Modulation> kAllMods{Modulation::QPSK, Modulation::QAM16, Modulation::QAM64, Modulation::QAM256};
const std::vector<Modulation> kSensingMods{Modulation::QPSK, Modulation::QAM256};

void sensing_rows(CsvTable& t, const std::string& id, const std::vector<SensingPoint>& pts, bool cuts, bool sir) {
    for (const auto& p : pts) {
        if (cuts) {
            metric_row(t, id, p.gamma_db, p.combined_dbc, "pplr", p.pplr);
            metric_row(t, id, p.gamma_db, p.combined_dbc, "range_pslr", p.range_pslr);
            metric_row(t, id, p.gamma_db, p.combined_dbc, "range_islr", p.range_islr);
            metric_row(t, id, p.gamma_db, p.combined_dbc, "doppler_pslr", p.doppler_pslr);
            metric_row(t, id, p.gamma_db, p.combined_dbc, "doppler_islr", p.doppler_islr);
        }
        if (sir) {
            metric_row(t, id, p.gamma_db, p.combined_dbc, "image_sir_mean", p.sir_mean);
            metric_row(t, id, p.gamma_db, p.combined_dbc, "image_sir_min", p.sir_min);
        }
    }
}

std::vector<double> gammas_for_levels(const ScenarioConfig& c, const std::vector<double>& levels) {
    std::vector<double> g;
    for (double l : levels) g.push_back(gamma_for_level(c, l));
    return g;
}

// ---------------------------------------------------------------- experiments

void exp_evm_vs_n(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), metric_columns());
    const auto gammas = range_steps(0, 60, 10);
    for (auto mod : kAllMods)
        for (auto n : kTableIN) {
            auto c = derive(ctx, [&](ScenarioConfig& s) {
                s.waveform.n_subcarriers = n;
                s.waveform.cp_length = 0;
                s.waveform.n_symbols = 128;
                s.waveform.modulation = mod;
            });
            const auto id = wf_id(c.waveform);
            for (const auto& p : comm_sweep(c, gammas, true)) {
                metric_row(t, id, p.gamma_db, p.combined_dbc, "evm", p.evm_db);
                metric_row(t, id, p.gamma_db, p.combined_dbc, "evm_cpe_corrected", p.evm_corrected_db);
            }
        }
    t.meta("gamma_points_db", "0:10:60");
    ctx.emit(t, ctx.name + ".csv");
}

void exp_sir_vs_pn(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), metric_columns());
    const auto levels = range_steps(-45, 35, 5);
    for (auto mod : kSensingMods)
        for (auto n : kSensingN) {
            auto c = derive(ctx, [&](ScenarioConfig& s) {
                s.waveform.n_subcarriers = n;
                s.waveform.cp_length = 0;
                s.waveform.n_symbols = 128;
                s.waveform.modulation = mod;
            });
            const auto id = wf_id(c.waveform);
            for (const auto& p : comm_sweep(c, gammas_for_levels(c, levels), true)) {
                Stat s = p.evm_db, sc = p.evm_corrected_db;
                s.mean = -s.mean;
                sc.mean = -sc.mean;
                metric_row(t, id, p.gamma_db, p.combined_dbc, "subcarrier_sir", s);
                metric_row(t, id, p.gamma_db, p.combined_dbc, "subcarrier_sir_cpe_corrected", sc);
            }
        }
    t.meta("level_points_dbc", "-45:5:35");
    ctx.emit(t, ctx.name + ".csv");
}

void exp_constellations(Context& ctx) {
    CsvTable idx(ctx.name, experiment_anchor(ctx.name), {"file", "n", "modulation", "combined_pn_dbc", "cpe_corrected", "evm_db"});
    for (auto n : std::vector<std::size_t>{256, 16384})
        for (auto mod : kSensingMods)
            for (double level : {-15.0, 0.0, 10.0})
                for (bool corr : {false, true}) {
                    auto c = derive(ctx, [&](ScenarioConfig& s) {
                        s.waveform.n_subcarriers = n;
                        s.waveform.cp_length = 0;
                        s.waveform.n_symbols = 16;
                        s.waveform.modulation = mod;
                        s.cpe_correction = corr ? CpeCorrection::FullFrame : CpeCorrection::Off;
                    });
                    const auto known = random_frame(c.waveform, derive_seed(c.seed, 7));
                    const auto pn = draw_pn(c.waveform, c.paths, c.pn_mode(), c.seed, c.f_min);
                    const auto y = receive(c, known, modulate(known), pn, gamma_for_level(c, level));
                    char name[128];
                    std::snprintf(name, sizeof name, "constellation_N%zu_%s_%+.0fdBc%s.csv", n,
                                  mod == Modulation::QPSK ? "qpsk" : "qam256", level, corr ? "_cpe" : "");
                    const auto path = ctx.out(name).string();
                    write_constellation_csv(y, path, "# experiment: constellations\n# anchor: " + experiment_anchor(ctx.name) + "\n");
                    ctx.written.push_back(path);
                    idx.row({name, std::to_string(n), to_string(mod), fmt_num(level), corr ? "1" : "0", fmt_num(evm(y, known))});
                }
    ctx.emit(idx, ctx.name + "_index.csv");
}

void exp_pn_psd_and_pdf(Context& ctx) {
    const auto& m = ctx.base.pn_tx;
    const double fs = ctx.base.waveform.bandwidth;
    const double fmin = ctx.base.f_min;

    const std::size_t n = 1u << 22, seg = 1u << 16;
    const std::size_t reps = std::max<std::size_t>(1, ctx.base.n_realizations / ctx.opt.scale);
    std::vector<double> welch;
    std::vector<double> freq;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto pr = synthesize(m, fs, n, derive_seed(ctx.base.seed, r), fmin);
        const auto e = estimate_psd_welch(pr, seg, 0.5);
        if (welch.empty()) {
            welch.assign(e.psd.size(), 0.0);
            freq = e.freq;
        }
        for (std::size_t i = 0; i < e.psd.size(); ++i) welch[i] += e.psd[i] / static_cast<double>(reps);
    }

    CsvTable psd(ctx.name, experiment_anchor(ctx.name), {"f_hz", "psd_dbchz", "welch_dbchz", "integrated_dbc"});
    std::size_t wi = 1;
    for (double lf = 2.0; lf <= std::log10(fs / 2) + 1e-9; lf += 0.05) {
        const double f = std::pow(10.0, lf);
        while (wi + 1 < freq.size() && freq[wi] < f) ++wi;
        const double w = (f >= freq[1] && welch[wi] > 0) ? lin_to_db(welch[wi]) : std::numeric_limits<double>::quiet_NaN();
        const double integ = f > fmin ? lin_to_db(integrate_psd(m, f, fmin)) : std::numeric_limits<double>::quiet_NaN();
        psd.row({fmt_num(f), fmt_num(lin_to_db(eval_psd(m, f))), fmt_num(w), fmt_num(integ)});
    }
    psd.meta("f_min_hz", fmt_num(fmin));
    psd.meta("total_level_dbc", fmt_num(lin_to_db(integrate_psd(m, fs / 2, fmin))));
    ctx.emit(psd, ctx.name + "_psd.csv");

    // Amplitude PDFs of the phase, unscaled and at a strongly scaled level (wrapped).
    CsvTable pdf(ctx.name, experiment_anchor(ctx.name), {"case", "bin_center_rad", "density"});
    const auto pr = synthesize(m, fs, n, derive_seed(ctx.base.seed, 999), fmin);
    const double base = 2.0 * integrate_psd(m, fs / 2, fmin);
    for (double level : {lin_to_db(base), 34.0}) {
        const double s = std::sqrt(db_to_lin(level) / base);
        const bool wrap = level > 0;
        std::vector<double> v;
        for (double x : pr.samples) v.push_back(wrap ? wrap_phase(s * x) : s * x);
        const double lo = wrap ? -std::numbers::pi : *std::min_element(v.begin(), v.end());
        const double hi = wrap ? std::numbers::pi : *std::max_element(v.begin(), v.end());
        const std::size_t bins = 101;
        std::vector<double> h(bins, 0.0);
        const double bw = (hi - lo) / bins;
        for (double x : v) h[std::min(bins - 1, static_cast<std::size_t>((x - lo) / bw))] += 1.0;
        for (std::size_t b = 0; b < bins; ++b)
            pdf.row({fmt_num(level) + "dBc", fmt_num(lo + (b + 0.5) * bw), fmt_num(h[b] / (v.size() * bw))});
    }
    ctx.emit(pdf, ctx.name + "_pdf.csv");
}

void exp_combined_level_vs_range(Context& ctx) {
    const auto& m = ctx.base.pn_tx;
    const double fs = ctx.base.waveform.bandwidth;
    const double fmin = ctx.base.f_min;
    CsvTable t(ctx.name, experiment_anchor(ctx.name),
               {"range_m", "delay_samples", "monostatic_dbc", "monostatic_empirical_dbc", "bistatic_dbc"});
    const double bist = lin_to_db(combined_level(m, ctx.base.pn_rx, CombineMode::bistatic(), fs / 2, fmin));
    const std::size_t reps = std::max<std::size_t>(1, ctx.base.n_realizations / ctx.opt.scale);
    const std::size_t n = fft::fast_size(static_cast<std::size_t>(fs / fmin) * 4);
    std::vector<PnRealization> real;
    for (std::size_t r = 0; r < reps; ++r) real.push_back(synthesize(m, fs, n, derive_seed(ctx.base.seed, r), fmin));
    for (double lr = -1.0; lr <= 5.0 + 1e-9; lr += 0.25) {
        const double range = std::pow(10.0, lr);
        const double tau = 2.0 * range / kSpeedOfLight;
        const double mono = combined_level(m, m, CombineMode::monostatic(tau), fs / 2, fmin);
        const auto d = static_cast<std::size_t>(std::llround(tau * fs));
        double emp = std::numeric_limits<double>::quiet_NaN();
        if (d > 0 && d < n / 4) {
            double acc = 0.0;
            std::size_t cnt = 0;
            for (const auto& pr : real)
                for (std::size_t i = d; i < n; ++i) {
                    const double x = pr.samples[i - d] - pr.samples[i];
                    acc += x * x;
                    ++cnt;
                }
            emp = lin_to_db(acc / static_cast<double>(cnt));
        }
        t.row({fmt_num(range), std::to_string(d), mono > 0 ? fmt_num(lin_to_db(mono)) : "-inf", fmt_num(emp), fmt_num(bist)});
    }
    ctx.emit(t, ctx.name + ".csv");
}

void exp_max_ua_range(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name),
               {"n_subcarriers", "delta_f_hz", "monostatic_range_res_m", "monostatic_rmax_km", "bistatic_range_res_m", "bistatic_rmax_km"});
    for (auto n : kTableIN) {
        auto w = ctx.base.waveform;
        w.n_subcarriers = n;
        const auto mo = axes(w, Architecture::Monostatic);
        const auto bi = axes(w, Architecture::Bistatic);
        t.row({std::to_string(n), fmt_num(w.subcarrier_spacing()), fmt_num(mo.range_resolution), fmt_num(mo.r_max_ua / 1e3),
               fmt_num(bi.range_resolution), fmt_num(bi.r_max_ua / 1e3)});
    }
    ctx.emit(t, ctx.name + ".csv");
}

void sidelobe_study(Context& ctx, CpeCorrection corr, bool cuts, bool sir) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), metric_columns());
    const auto levels = range_steps(-45, 35, 5);
    for (auto mod : kSensingMods)
        for (auto n : kSensingN) {
            auto c = derive(ctx, [&](ScenarioConfig& s) {
                s.waveform.n_subcarriers = n;
                s.waveform.cp_length = n;
                s.waveform.n_symbols = 128;
                s.waveform.modulation = mod;
                s.cpe_correction = corr;
            });
            SensingOptions so;
            so.cuts = cuts;
            so.sir = sir;
            sensing_rows(t, wf_id(c.waveform), sensing_sweep(c, gammas_for_levels(c, levels), so), cuts, sir);
        }
    t.meta("level_points_dbc", "-45:5:35");
    t.meta("cpe_correction", to_string(corr));
    ctx.emit(t, ctx.name + ".csv");
}

void exp_sidelobes_vs_pn(Context& ctx) { sidelobe_study(ctx, CpeCorrection::Off, true, false); }
void exp_sidelobes_vs_pn_cpe(Context& ctx) { sidelobe_study(ctx, CpeCorrection::FullFrame, true, false); }
void exp_image_sir(Context& ctx) { sidelobe_study(ctx, CpeCorrection::Off, false, true); }
void exp_image_sir_cpe(Context& ctx) { sidelobe_study(ctx, CpeCorrection::FullFrame, false, true); }

void exp_sidelobes_vs_m(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), metric_columns());
    const auto levels = range_steps(-45, 35, 5);
    for (std::size_t m : {32u, 128u, 512u, 2048u}) {
        auto c = derive(ctx, [&](ScenarioConfig& s) {
            s.waveform.n_subcarriers = 2048;
            s.waveform.cp_length = 2048;
            s.waveform.n_symbols = m;
            s.waveform.modulation = Modulation::QPSK;
        });
        sensing_rows(t, wf_id(c.waveform), sensing_sweep(c, gammas_for_levels(c, levels)), true, false);
    }
    t.meta("level_points_dbc", "-45:5:35");
    ctx.emit(t, ctx.name + ".csv");
}

void exp_pplr_vs_doppler(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), metric_columns());
    const auto levels = range_steps(-45, 35, 5);
    for (double frac : {0.0, 0.1, -0.1, 0.5, -0.5}) {
        auto c = derive(ctx, [&](ScenarioConfig& s) {
            s.waveform.n_subcarriers = 2048;
            s.waveform.cp_length = 2048;
            s.waveform.n_symbols = 128;
            s.waveform.modulation = Modulation::QPSK;
            s.paths.paths.assign(1, Path{});
            s.paths.paths[0].doppler_hz = frac * s.waveform.subcarrier_spacing();
        });
        sensing_rows(t, wf_id(c.waveform) + ";fD/df=" + fmt_num(frac), sensing_sweep(c, gammas_for_levels(c, levels)), true,
                     false);
    }
    t.meta("level_points_dbc", "-45:5:35");
    ctx.emit(t, ctx.name + ".csv");
}

void exp_doppler_cut(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), {"combined_pn_dbc", "doppler_over_delta_f", "magnitude_db"});
    auto c = derive(ctx, [&](ScenarioConfig& s) {
        s.waveform.n_subcarriers = 2048;
        s.waveform.cp_length = 512;
        s.waveform.n_symbols = 128;
        s.waveform.modulation = Modulation::QPSK;
    });
    const auto known = random_frame(c.waveform, derive_seed(c.seed, 7));
    const auto tx = modulate(known);
    auto unit = c;
    unit.gamma_db = 0;
    const auto pn = draw_pn(c.waveform, c.paths, unit.pn_mode(), c.seed, c.f_min);
    const std::size_t os = kCutOversampling;
    const double dres = axes(c.waveform, c.architecture).doppler_resolution;
    for (double level : {-15.0, 0.0, 10.0}) {
        const auto y = receive(unit, known, tx, pn, gamma_for_level(c, level));
        const auto img = form_image(y, known, c.win_range, c.win_doppler, c.architecture);
        const auto col = doppler_column(c.waveform, 0.0);
        const auto cut = doppler_cut(img, 0, os);
        const double ref = cut[col * os];
        for (std::size_t i = 0; i < cut.size(); ++i) {
            const double fd = (static_cast<double>(i) / os - static_cast<double>(c.waveform.n_symbols / 2)) * dres;
            t.row({fmt_num(level), fmt_num(fd / c.waveform.subcarrier_spacing()), fmt_num(lin_to_db(cut[i] / ref))});
        }
    }
    ctx.emit(t, ctx.name + ".csv");
}

void exp_two_target_images(Context& ctx) {
    auto c = derive(ctx, [&](ScenarioConfig& s) {
        s.waveform.n_subcarriers = 2048;
        s.waveform.cp_length = 512;
        s.waveform.n_symbols = 128;
        s.waveform.modulation = Modulation::QPSK;
        s.gamma_db = 30.0;
        s.paths.paths = {path_from_range(s.waveform, Architecture::Bistatic, 10.0, 0.0, 0.0),
                         path_from_range(s.waveform, Architecture::Bistatic, 15.0, 0.1 * s.waveform.subcarrier_spacing(), 0.0)};
    });
    const auto known = random_frame(c.waveform, derive_seed(c.seed, 7));
    const auto pn = draw_pn(c.waveform, c.paths, c.pn_mode(), c.seed, c.f_min);
    auto plain = c;
    plain.gamma_db = 0;
    const auto y = receive(plain, known, modulate(known), pn, 0.0);
    const std::string hdr = "# experiment: two-target-images\n# anchor: " + experiment_anchor(ctx.name) + "\n";
    for (auto [label, w] : {std::pair{"rectangular", WindowSpec::rectangular()}, std::pair{"chebyshev", WindowSpec::chebyshev(100)}}) {
        const auto img = form_image(y, known, w, w, Architecture::Bistatic);
        // Normalized to the static target peak.
        const double ref = std::norm(img.at(c.paths.paths[0].delay_samples, doppler_column(c.waveform, 0.0)));
        const auto path = ctx.out(std::string("two_target_image_") + label + ".csv").string();
        write_image_csv(img, path, ref, hdr);
        ctx.written.push_back(path);
    }
}

void exp_cpe_rmse_vs_range(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name),
               {"n_subcarriers", "range_m", "rmse_rad", "rmse_std_rad", "std_ref_rad", "std_target_rad", "n_realizations"});
    for (auto n : kSensingN) {
        auto c = derive(ctx, [&](ScenarioConfig& s) {
            s.waveform.n_subcarriers = n;
            s.waveform.cp_length = n;
            s.waveform.n_symbols = 128;
            s.waveform.modulation = Modulation::QPSK;
        });
        const double rmax = axes(c.waveform, Architecture::Bistatic).r_max_ua;
        std::vector<double> ranges;
        for (double f = 0.05; f <= 0.95 + 1e-9; f += 0.10) ranges.push_back(f * rmax);
        for (const auto& p : cpe_rmse_vs_range(c, ranges))
            t.row({std::to_string(n), fmt_num(p.range_m), fmt_num(p.rmse.mean), fmt_num(p.rmse.std), fmt_num(p.std_ref.mean),
                   fmt_num(p.std_target.mean), std::to_string(p.rmse.n)});
    }
    t.meta("gamma_db", fmt_num(ctx.base.gamma_db));
    ctx.emit(t, ctx.name + ".csv");
}

struct TableIIIScenario {
    std::string id;
    WaveformConfig waveform;
    Architecture arch;
    std::string tx_file, rx_file;
};

std::vector<TableIIIScenario> table_iii_scenarios() {
    auto wf = [](double fc, double b, std::size_t n, std::size_t ncp, std::size_t m) {
        WaveformConfig w;
        w.fc = fc;
        w.bandwidth = b;
        w.n_subcarriers = n;
        w.cp_length = ncp;
        w.n_symbols = m;
        w.modulation = Modulation::QPSK;
        return w;
    };
    return {{"#1", wf(28e9, 1.6e9, 12672, 1600, 384), Architecture::Monostatic, "tr38803_gnb.yaml", "tr38803_gnb.yaml"},
            {"#2", wf(27.4e9, 190e6, 1584, 112, 1120), Architecture::Bistatic, "tr38803_gnb.yaml", "tr38803_gnb.yaml"},
            {"#3", wf(27.4e9, 190e6, 1584, 112, 1120), Architecture::Bistatic, "tr38803_gnb.yaml", "tr38803_ue.yaml"},
            {"#4", wf(27.4e9, 190e6, 1584, 112, 1120), Architecture::Bistatic, "tr38803_ue.yaml", "tr38803_ue.yaml"}};
}

void exp_table_iii(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), metric_columns());
    for (const auto& sc : table_iii_scenarios()) {
        auto c = derive(ctx, [&](ScenarioConfig& s) {
            s.id = sc.id;
            s.waveform = sc.waveform;
            s.architecture = sc.arch;
            s.paths = PathSet{sc.arch, {Path{}}};
            s.pn_tx = load_psd_model((fs::path(data_dir()) / "pn" / sc.tx_file).string());
            s.pn_rx = load_psd_model((fs::path(data_dir()) / "pn" / sc.rx_file).string());
            s.gamma_db = 0;
        });
        const double f_max = c.waveform.bandwidth / 2;
        const double ltx = integrate_psd(c.pn_tx, f_max, c.f_min), lrx = integrate_psd(c.pn_rx, f_max, c.f_min);
        const double comb = c.base_combined_level();
        auto level = [](double v) { return v > 0 ? lin_to_db(v) : -300.0; };
        metric_row(t, sc.id, 0, level(comb), "tx_level_dbc", Stat{level(ltx), 0, 1});
        metric_row(t, sc.id, 0, level(comb), "rx_level_dbc", Stat{level(lrx), 0, 1});
        metric_row(t, sc.id, 0, level(comb), "combined_level_dbc", Stat{level(comb), 0, 1});
        // With zero combined PN (monostatic, zero delay) one realization says everything.
        if (!(comb > 0)) c.n_realizations = 1;
        SensingOptions so;
        so.cuts = true;
        so.sir = true;
        const auto pts = sensing_sweep(c, {0.0}, so);
        auto p = pts.front();
        p.combined_dbc = level(comb);
        sensing_rows(t, sc.id, {p}, true, true);
    }
    ctx.emit(t, ctx.name + ".csv");
}

void exp_null(Context& ctx) {
    CsvTable t(ctx.name, experiment_anchor(ctx.name), metric_columns());
    auto c = derive(ctx, [&](ScenarioConfig& s) {
        s.waveform.n_subcarriers = 2048;
        s.waveform.cp_length = 512;
        s.waveform.n_symbols = 128;
    });
    const auto known = random_frame(c.waveform, derive_seed(c.seed, 7));
    const auto y = demodulate(apply_channel(modulate(known), c.paths, PnPair{}, {c.application, c.f_min}));
    const auto img = form_image(y, known, WindowSpec::rectangular(), WindowSpec::rectangular(), c.architecture);
    const auto& p0 = c.paths.paths.front();
    const Bin target{p0.delay_samples, doppler_column(c.waveform, p0.doppler_hz)};
    const auto rm = range_metrics(img, target);
    const auto dm = doppler_metrics(img, target);
    const auto cheb = form_image(y, known, WindowSpec::chebyshev(100), WindowSpec::chebyshev(100), c.architecture);
    const auto sir = image_sir(cheb, mainlobe_mask(cheb, target));
    const double ninf = -std::numeric_limits<double>::infinity();
    auto row = [&](const std::string& m, double v) { metric_row(t, wf_id(c.waveform), ninf, ninf, m, Stat{v, 0, 1}); };
    row("pplr", pplr(img, img, target));
    row("range_pslr", rm.pslr_db);
    row("range_islr", rm.islr_db);
    row("doppler_pslr", dm.pslr_db);
    row("doppler_islr", dm.islr_db);
    row("image_sir_mean", sir.mean_db);
    row("image_sir_min", sir.min_db);
    row("evm", evm(y, known));
    ctx.emit(t, ctx.name + ".csv");
}

struct Entry {
    const char* anchor;
    void (*fn)(Context&);
};

const std::map<std::string, Entry>& registry() {
    static const std::map<std::string, Entry> r{
        {"evm-vs-n", {"Fig. 5", exp_evm_vs_n}},
        {"sir-vs-pn", {"Fig. 6", exp_sir_vs_pn}},
        {"constellations", {"Figs. 7-8", exp_constellations}},
        {"pn-psd-and-pdf", {"Figs. 3-4", exp_pn_psd_and_pdf}},
        {"combined-level-vs-range", {"Fig. 8", exp_combined_level_vs_range}},
        {"max-ua-range", {"Fig. 9", exp_max_ua_range}},
        {"sidelobes-vs-pn", {"Fig. 10", exp_sidelobes_vs_pn}},
        {"doppler-cut", {"Fig. 11 (Doppler cuts)", exp_doppler_cut}},
        {"sidelobes-vs-m", {"Fig. 12 (M sweep)", exp_sidelobes_vs_m}},
        {"pplr-vs-doppler", {"Fig. 13 (Doppler shifts)", exp_pplr_vs_doppler}},
        {"two-target-images", {"Figs. 15-16", exp_two_target_images}},
        {"image-sir", {"Fig. 14 (image SIR)", exp_image_sir}},
        {"sidelobes-vs-pn-cpe-corrected", {"Fig. 17", exp_sidelobes_vs_pn_cpe}},
        {"image-sir-cpe-corrected", {"Fig. 18", exp_image_sir_cpe}},
        {"cpe-rmse-vs-range", {"Fig. 19", exp_cpe_rmse_vs_range}},
        {"table-iii", {"Table III", exp_table_iii}},
        {"null", {"Table III Scenario #1 (PN off)", exp_null}},
    };
    return r;
}

}  // namespace

std::vector<std::string> experiment_names() {
    std::vector<std::string> v;
    for (const auto& [k, e] : registry()) v.push_back(k);
    return v;
}

std::string experiment_anchor(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw ConfigError("unknown experiment: " + name);
    return it->second.anchor;
}

std::vector<std::string> run_experiment(const std::string& name, const ExperimentOptions& opt) {
    auto it = registry().find(name);
    if (it == registry().end()) throw ConfigError("unknown experiment: " + name);
    if (opt.scale == 0) throw ConfigError("scale must be positive");

    Context ctx;
    ctx.name = name;
    ctx.opt = opt;
    if (opt.config_file) {
        try {
            ctx.file = YAML::LoadFile(*opt.config_file);
        } catch (const YAML::Exception& e) {
            throw ConfigError(*opt.config_file + ": " + e.what());
        }
        ctx.file_dir = fs::path(*opt.config_file).parent_path().string();
    }
    ctx.base = derive(ctx, [](ScenarioConfig&) {});
    fs::create_directories(opt.out_dir);

    it->second.fn(ctx);

    if (opt.plots) {
        const auto script = ctx.out("plot_" + name + ".py").string();
        std::ofstream os(script);
        os << "# Renders every CSV written by `" << name << "` to a PNG next to it.\n"
           << "import sys, pandas as pd, matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n"
           << "for path in " << "[";
        for (const auto& f : ctx.written) os << "'" << fs::path(f).filename().string() << "',";
        os << "]:\n"
           << "    df = pd.read_csv(path, comment='#')\n"
           << "    fig, ax = plt.subplots()\n"
           << "    if 'metric' in df.columns:\n"
           << "        for (sid, met), g in df.groupby(['scenario_id', 'metric']):\n"
           << "            ax.plot(g['combined_pn_dbc'], g['value_db'], marker='o', label=f'{sid} {met}')\n"
           << "        ax.legend(fontsize=5)\n"
           << "    else:\n"
           << "        df.plot(x=df.columns[0], ax=ax)\n"
           << "    fig.savefig(path.replace('.csv', '.png'), dpi=120)\n"
           << "    plt.close(fig)\n";
        ctx.written.push_back(script);
    }
    return ctx.written;
}

}  // namespace isacpn
