#pragma once

// Closed-form evaluation of the lower-tail and deviation envelopes with
// explicit constants.

#include <string>
#include <utility>
#include <vector>

namespace kpze::bounds {

struct BoundConstants {
    double C = 1.0;
    double K1 = 1.0;
    double K2 = 1.0 / 24.0;
    double eta = 1.0;
    double kappa = 1.0;
    double S0 = 5.0;
    double block_rate = 1.0;  // the rate in exp(-rate l^{1-delta})

    void validate() const;

    /// Documented defaults.
    static BoundConstants defaults() { return {}; }
    /// Constants calibrated against the desk-scale Monte Carlo campaigns.
    static BoundConstants calibrated();
};

enum class Regime { deep_tail, crossover, goe_regime };
std::string to_string(Regime r);

inline constexpr double kRegimeThreshold = 3.0;

Regime classify_regime(double s, double T, double threshold = kRegimeThreshold);

struct Term {
    std::string label;
    double value;
};

struct BoundReport {
    double s = 0.0;
    double T = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    std::vector<Term> terms_lower;
    std::vector<Term> terms_upper;
    std::string dominant_lower;
    std::string dominant_upper;
    Regime regime = Regime::crossover;

    /// Sums of the terms, clamped to 1.
    double lower() const;
    double upper() const;
};

/// Lower: exp(-2(1+C eps)/(15 pi) T^{1/3} s^{5/2}) + exp(-K2 s^3).
/// Upper: exp(-2(1-C eps)/(15 pi) T^{1/3} s^{5/2}) + exp(-(eps/2) s T^{1/3} - eta s^{3/2})
///        + exp(-(1-C eps)/24 s^3).
BoundReport kpz_tail_bounds(double s, double T, double eps, double delta, const BoundConstants& constants,
                            double threshold = kRegimeThreshold);

/// exp(-(1/(3 pi)) s^{3-delta}); conditional on the Stokes-region conjecture.
double f1_bound_curve(double s, double delta);

struct DeviationCurves {
    double weak = 0.0;    // exp(-eta s^{3/2})
    double strong = 0.0;  // exp(-(c/2) s^{3-delta}), conditional
    double block = 0.0;   // exp(-rate l^{1-delta})
    double crossing = 0.0;  // s* with eta s^{3/2} = (c/2) s^{3-delta}
    bool strong_conditional = true;
};

DeviationCurves deviation_bound_curves(double s_or_l, double c, double delta, double eta,
                                       const BoundConstants& constants);

/// kappa exp(-kappa s^{1-delta}) clamped to 1: shape of the tail of C_eps.
double c_eps_envelope(double s, double delta, const BoundConstants& constants);

}  // namespace kpze::bounds
