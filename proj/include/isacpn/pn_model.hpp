// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace isacpn {

/// Default lower integration cutoff in Hz.
inline constexpr double kDefaultFMin = 1e4;

struct PllPsdParams {
    double l0;        // in-band level, rad^2/Hz
    double l_floor;   // floor level, rad^2/Hz
    double f_corner;  // Hz
    double b_pll;     // Hz
};

struct PoleZeroPsdParams {
    double psd0;                                 // rad^2/Hz
    std::vector<std::pair<double, double>> zeros;  // (frequency Hz, exponent)
    std::vector<std::pair<double, double>> poles;
};

class PnPsdModel;

struct ScaledPsd {
    std::shared_ptr<const PnPsdModel> inner;
    double gamma;  // linear power factor
};

class PnPsdModel {
public:
    using Variant = std::variant<PllPsdParams, PoleZeroPsdParams, ScaledPsd>;

    static PnPsdModel pll(const PllPsdParams& p);
    static PnPsdModel pole_zero(const PoleZeroPsdParams& p);
    static PnPsdModel scaled(const PnPsdModel& inner, double gamma);

    const Variant& variant() const { return v_; }

    /// Overall linear scale applied on top of the innermost model.
    double gamma() const;
    /// Innermost unscaled model.
    const PnPsdModel& base() const;

    std::string describe() const;

    bool operator==(const PnPsdModel& other) const;

private:
    explicit PnPsdModel(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// L0 = -105, L_floor = -155 dBc/Hz, f_corner = 10 kHz, B_PLL = 150 kHz.
PnPsdModel reference_pll_model();

double db_to_lin(double db);
double lin_to_db(double lin);

double eval_psd(const PnPsdModel& model, double f);

/// 2 * integral of S(f) over [f_min, f_max] in rad^2.
double integrate_psd(const PnPsdModel& model, double f_max, double f_min = kDefaultFMin);

struct CombineMode {
    enum class Kind { Monostatic, Bistatic } kind;
    double tau = 0.0;  // s, monostatic only

    static CombineMode monostatic(double tau) { return {Kind::Monostatic, tau}; }
    static CombineMode bistatic() { return {Kind::Bistatic, 0.0}; }
};

double combined_level(const PnPsdModel& tx, const PnPsdModel& rx, CombineMode mode, double f_max,
                      double f_min = kDefaultFMin);

}  // namespace isacpn
