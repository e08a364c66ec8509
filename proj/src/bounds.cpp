#include "kpze/bounds.hpp"

#include "kpze/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kpze::bounds {
namespace {

void positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(name) + " must be positive and finite");
}

const Term& dominant(const std::vector<Term>& terms) {
    return *std::max_element(terms.begin(), terms.end(),
                             [](const Term& a, const Term& b) { return a.value < b.value; });
}

double clamp_prob(double x) { return std::min(x, 1.0); }

}  // namespace

void BoundConstants::validate() const {
    positive(C, "BoundConstants.C");
    positive(K1, "BoundConstants.K1");
    positive(K2, "BoundConstants.K2");
    positive(eta, "BoundConstants.eta");
    positive(kappa, "BoundConstants.kappa");
    positive(S0, "BoundConstants.S0");
    positive(block_rate, "BoundConstants.block_rate");
}

BoundConstants BoundConstants::calibrated() {
    BoundConstants c;
    c.C = 9.5;
    c.K2 = 1.0;
    c.eta = 0.4;
    c.S0 = 1.0;
    c.block_rate = 1.0;
    return c;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::deep_tail: return "deep_tail";
        case Regime::crossover: return "crossover";
        case Regime::goe_regime: return "goe_regime";
    }
    return "unknown";
}

Regime classify_regime(double s, double T, double threshold) {
    positive(s, "classify_regime: s");
    positive(T, "classify_regime: T");
    if (!(threshold >= 1.0)) throw InvalidArgument("classify_regime: threshold must be >= 1");
    const double scale = std::pow(T, 2.0 / 3.0);
    if (s > scale * threshold) return Regime::deep_tail;
    if (s < scale / threshold) return Regime::goe_regime;
    return Regime::crossover;
}

double BoundReport::lower() const {
    double sum = 0.0;
    for (const auto& t : terms_lower) sum += t.value;
    return clamp_prob(sum);
}

double BoundReport::upper() const {
    double sum = 0.0;
    for (const auto& t : terms_upper) sum += t.value;
    return clamp_prob(sum);
}

BoundReport kpz_tail_bounds(double s, double T, double eps, double delta, const BoundConstants& constants,
                            double threshold) {
    constants.validate();
    if (!(s >= constants.S0) || !std::isfinite(s)) {
        throw InvalidArgument("kpz_tail_bounds: s must be >= S0 = " + std::to_string(constants.S0));
    }
    positive(T, "kpz_tail_bounds: T");
    if (!(eps > 0.0 && eps < 1.0 / 3.0)) throw InvalidArgument("kpz_tail_bounds: eps must lie in (0, 1/3)");
    if (!(delta > 0.0 && delta < 0.25)) throw InvalidArgument("kpz_tail_bounds: delta must lie in (0, 1/4)");

    const double t13 = std::cbrt(T);
    const double five_halves = 2.0 / (15.0 * std::numbers::pi) * t13 * std::pow(s, 2.5);
    const double ce = constants.C * eps;

    BoundReport r;
    r.s = s;
    r.T = T;
    r.eps = eps;
    r.delta = delta;
    r.terms_lower = {
        {"lower_five_halves", clamp_prob(std::exp(-(1.0 + ce) * five_halves))},
        {"lower_cubic", clamp_prob(std::exp(-constants.K2 * s * s * s))},
    };
    r.terms_upper = {
        {"upper_five_halves", clamp_prob(std::exp(-(1.0 - ce) * five_halves))},
        {"upper_mixed", clamp_prob(std::exp(-0.5 * eps * s * t13 - constants.eta * std::pow(s, 1.5)))},
        {"upper_cubic", clamp_prob(std::exp(-(1.0 - ce) / 24.0 * s * s * s))},
    };
    r.dominant_lower = dominant(r.terms_lower).label;
    r.dominant_upper = dominant(r.terms_upper).label;
    r.regime = classify_regime(s, T, threshold);
    return r;
}

double f1_bound_curve(double s, double delta) {
    if (!(s >= 1.0) || !std::isfinite(s)) throw InvalidArgument("f1_bound_curve: s must be >= 1");
    if (!(delta > 0.0 && delta < 0.4)) throw InvalidArgument("f1_bound_curve: delta must lie in (0, 2/5)");
    return std::exp(-std::pow(s, 3.0 - delta) / (3.0 * std::numbers::pi));
}

DeviationCurves deviation_bound_curves(double s_or_l, double c, double delta, double eta,
                                       const BoundConstants& constants) {
    positive(s_or_l, "deviation_bound_curves: s");
    positive(c, "deviation_bound_curves: c");
    positive(eta, "deviation_bound_curves: eta");
    if (!(delta > 0.0 && delta < 0.4)) {
        throw InvalidArgument("deviation_bound_curves: delta must lie in (0, 2/5)");
    }
    constants.validate();
    DeviationCurves d;
    d.weak = std::exp(-eta * std::pow(s_or_l, 1.5));
    d.strong = std::exp(-0.5 * c * std::pow(s_or_l, 3.0 - delta));
    d.block = std::exp(-constants.block_rate * std::pow(s_or_l, 1.0 - delta));
    d.crossing = std::pow(2.0 * eta / c, 1.0 / (1.5 - delta));
    return d;
}

double c_eps_envelope(double s, double delta, const BoundConstants& constants) {
    positive(s, "c_eps_envelope: s");
    constants.validate();
    return clamp_prob(constants.kappa * std::exp(-constants.kappa * std::pow(s, 1.0 - delta)));
}

}  // namespace kpze::bounds
