#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lyap/errors.hpp"
#include "lyap/pressure_model.hpp"
#include "lyap/roots.hpp"

namespace lyap {

/// One sample of the thermodynamic profile along the parameter t.
///
/// entropy = pressure + t * alpha and spectrum_value = entropy / alpha, the
/// latter being the Lyapunov spectrum evaluated at alpha(t).
template <std::floating_point Real>
struct ThermoPoint {
    Real t;
    Real pressure;
    Real alpha;
    Real sigma2;
    Real entropy;
    Real spectrum_value;
    bool degenerate = false;
};

template <PressureModel Model>
ThermoPoint<typename Model::value_type> thermo_point(const Model& model, typename Model::value_type t) {
    const auto s = model.evaluate(t);
    return {t, s.pressure, s.alpha, s.sigma2, s.entropy, s.entropy / s.alpha, static_cast<bool>(model.degenerate())};
}

/// Zero of t -> P(t). For a valid cookie-cutter this is the Hausdorff
/// dimension of the repeller, in (0, 1].
template <PressureModel Model>
typename Model::value_type bowen_root(const Model& model,
                                      const RootOptions<typename Model::value_type>& opts = {}) {
    using Real = typename Model::value_type;
    auto p = [&](Real t) { return model.evaluate(t).pressure; };
    auto dp = [&](Real t) { return -model.evaluate(t).alpha; };

    Real hi = 1;
    while (!(p(hi) < 0)) {
        if (p(hi) == 0) return hi;
        hi *= 2;
        if (hi > Real(1e6)) throw InvalidModel("bowen_root: pressure has no zero (non-expanding model?)");
    }
    if (!(p(Real(0)) > 0)) throw InvalidModel("bowen_root: pressure at t = 0 must be positive");
    return solve_decreasing<Real>(p, dp, Real(0), hi, opts);
}

/// Inverse of t -> alpha(t) on the open exponent interval.
template <PressureModel Model>
typename Model::value_type t_of_alpha(const Model& model, typename Model::value_type alpha,
                                      const RootOptions<typename Model::value_type>& opts = {}) {
    using Real = typename Model::value_type;
    const auto [lo_alpha, hi_alpha] = model.exponent_range();
    if (model.degenerate()) {
        if (alpha == lo_alpha) return Real(0);
        throw DegenerateModel("t_of_alpha: exponent map is constant for an equal-slope model");
    }
    if (!(alpha > lo_alpha && alpha < hi_alpha)) {
        throw DomainError("t_of_alpha: alpha must lie strictly inside (alpha_min, alpha_max)");
    }

    auto f = [&](Real t) { return model.evaluate(t).alpha - alpha; };
    auto df = [&](Real t) { return -model.evaluate(t).sigma2; };

    constexpr Real limit = Real(1e8);
    Real lo = -1;
    Real hi = 1;
    while (!(f(lo) > 0)) {
        if (f(lo) == 0) return lo;
        lo *= 2;
        if (lo < -limit) throw DomainError("t_of_alpha: alpha is numerically indistinguishable from alpha_max");
    }
    while (!(f(hi) < 0)) {
        if (f(hi) == 0) return hi;
        hi *= 2;
        if (hi > limit) throw DomainError("t_of_alpha: alpha is numerically indistinguishable from alpha_min");
    }
    RootOptions<Real> scaled = opts;
    scaled.tolerance = opts.tolerance * std::max(Real(1), std::abs(alpha));
    return solve_decreasing<Real>(f, df, lo, hi, scaled);
}

template <std::floating_point Real>
struct SpectrumDomain {
    Real alpha_min;
    Real alpha_max;
    Real alpha_M;    // exponent of the measure of maximal entropy, alpha(0)
    Real t_d;        // Bowen root
    Real alpha_d;    // alpha(t_d), where the spectrum peaks
    Real dimension;  // = t_d
};

template <PressureModel Model>
SpectrumDomain<typename Model::value_type> spectrum_domain(const Model& model) {
    const auto [lo, hi] = model.exponent_range();
    const auto t_d = bowen_root(model);
    return {lo, hi, model.evaluate(0).alpha, t_d, model.evaluate(t_d).alpha, t_d};
}

template <std::floating_point Real>
struct SpectrumCurve {
    std::vector<ThermoPoint<Real>> samples;  // strictly increasing alpha
    SpectrumDomain<Real> domain;
    std::string source;
    bool degenerate = false;
};

/// Default sampling window: `count` uniform points on [t_d - 15, t_d + 15],
/// shrunk wherever alpha(t) comes within `boundary_gap` of alpha_min/alpha_max.
template <PressureModel Model>
std::vector<typename Model::value_type> default_grid(const Model& model, std::size_t count = 2001,
                                                     typename Model::value_type half_width = 15,
                                                     typename Model::value_type boundary_gap = 1e-9) {
    using Real = typename Model::value_type;
    const Real t_d = bowen_root(model);
    Real lo = t_d - half_width;
    Real hi = t_d + half_width;
    if (!model.degenerate()) {
        const auto [a_min, a_max] = model.exponent_range();
        if (model.evaluate(lo).alpha > a_max - boundary_gap) lo = t_of_alpha(model, a_max - boundary_gap);
        if (model.evaluate(hi).alpha < a_min + boundary_gap) hi = t_of_alpha(model, a_min + boundary_gap);
    }
    std::vector<Real> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<Real>(i) / static_cast<Real>(count - 1);
    }
    return grid;
}

/// Samples (alpha(t), L(alpha(t))) on a t-grid, reordered by increasing alpha.
///
/// Samples whose alpha does not strictly exceed the previous one (plateaus
/// at extreme t) are dropped. A degenerate model yields a single point.
template <PressureModel Model>
SpectrumCurve<typename Model::value_type> sample_spectrum(const Model& model,
                                                          std::span<const typename Model::value_type> t_grid,
                                                          std::string source = {}) {
    using Real = typename Model::value_type;
    SpectrumCurve<Real> curve;
    curve.domain = spectrum_domain(model);
    curve.source = std::move(source);
    curve.degenerate = model.degenerate();
    if (t_grid.empty()) return curve;

    if (curve.degenerate) {
        curve.samples.push_back(thermo_point(model, curve.domain.t_d));
        return curve;
    }

    std::vector<ThermoPoint<Real>> points;
    points.reserve(t_grid.size());
    for (Real t : t_grid) points.push_back(thermo_point(model, t));
    std::sort(points.begin(), points.end(), [](const auto& x, const auto& y) { return x.alpha < y.alpha; });
    for (const auto& p : points) {
        if (curve.samples.empty() || p.alpha > curve.samples.back().alpha) curve.samples.push_back(p);
    }
    return curve;
}

}  // namespace lyap
