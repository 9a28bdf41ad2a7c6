#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lyap/detail/gibbs.hpp"
#include "lyap/errors.hpp"
#include "lyap/pressure_model.hpp"

namespace lyap {

/// Full-branch affine interval map, described by its slope magnitudes.
///
/// The map is stored through log|m_i|, the only quantity any thermodynamic
/// formula uses. Slope order is irrelevant. Construction enforces n >= 2,
/// |m_i| > 1 and Σ 1/|m_i| <= 1 (the branch domains fit disjointly in [0,1]).
template <std::floating_point Real = double>
class BasicLinearCookieCutter {
public:
    using value_type = Real;

    /// Signed slopes are accepted; only their magnitudes are kept.
    explicit BasicLinearCookieCutter(std::span<const Real> slopes) {
        log_slopes_.reserve(slopes.size());
        for (Real m : slopes) {
            if (!std::isfinite(m) || !(std::abs(m) > 1)) {
                throw InvalidModel("linear cookie-cutter: every slope magnitude must exceed 1");
            }
            log_slopes_.push_back(std::log(std::abs(m)));
        }
        validate();
    }

    BasicLinearCookieCutter(std::initializer_list<Real> slopes)
        : BasicLinearCookieCutter(std::span<const Real>(slopes.begin(), slopes.size())) {}

    /// Build from log|m_i| directly; exact for exponential slopes such as e^45.
    static BasicLinearCookieCutter from_log_slopes(std::span<const Real> logs) {
        BasicLinearCookieCutter map;
        for (Real l : logs) {
            if (!std::isfinite(l) || !(l > 0)) {
                throw InvalidModel("linear cookie-cutter: every log-slope must be positive");
            }
            map.log_slopes_.push_back(l);
        }
        map.validate();
        return map;
    }

    static BasicLinearCookieCutter from_log_slopes(std::initializer_list<Real> logs) {
        return from_log_slopes(std::span<const Real>(logs.begin(), logs.size()));
    }

    std::size_t branches() const noexcept { return log_slopes_.size(); }
    std::span<const Real> log_slopes() const noexcept { return log_slopes_; }

    std::vector<Real> slopes() const {
        std::vector<Real> out;
        out.reserve(log_slopes_.size());
        for (Real l : log_slopes_) out.push_back(std::exp(l));
        return out;
    }

    Real min_log_slope() const { return *std::min_element(log_slopes_.begin(), log_slopes_.end()); }
    Real max_log_slope() const { return *std::max_element(log_slopes_.begin(), log_slopes_.end()); }

    /// All slopes equal: log|T'| is constant and sigma² vanishes identically.
    bool degenerate() const { return min_log_slope() == max_log_slope(); }

private:
    BasicLinearCookieCutter() = default;

    void validate() const {
        if (log_slopes_.size() < 2) {
            throw InvalidModel("linear cookie-cutter: at least two branches are required");
        }
        Real total_length = 0;
        for (Real l : log_slopes_) total_length += std::exp(-l);
        if (total_length > Real(1) + Real(1e-12)) {
            throw InvalidModel("linear cookie-cutter: branch lengths sum(1/|m_i|) exceed 1");
        }
    }

    std::vector<Real> log_slopes_;
};

using LinearCookieCutter = BasicLinearCookieCutter<double>;

/// Closed-form pressure model of a linear cookie-cutter map:
/// P(t) = log Σ m_i^(-t), whose equilibrium states are Bernoulli.
template <std::floating_point Real = double>
class BasicLinearPressure {
public:
    using value_type = Real;

    explicit BasicLinearPressure(BasicLinearCookieCutter<Real> map) : map_(std::move(map)) {}

    PressureSample<Real> evaluate(Real t) const {
        const auto m = detail::gibbs_moments<Real>(map_.log_slopes(), t);
        return {m.log_partition, m.mean, m.variance, m.entropy};
    }

    std::pair<Real, Real> exponent_range() const { return {map_.min_log_slope(), map_.max_log_slope()}; }
    bool degenerate() const { return map_.degenerate(); }
    const BasicLinearCookieCutter<Real>& map() const noexcept { return map_; }

private:
    BasicLinearCookieCutter<Real> map_;
};

using LinearPressure = BasicLinearPressure<double>;

template <std::floating_point Real>
Real pressure(const BasicLinearCookieCutter<Real>& map, Real t) {
    return detail::gibbs_moments<Real>(map.log_slopes(), t).log_partition;
}

/// Bernoulli weights of the equilibrium state for -t log|T'|:
/// p_i = m_i^(-t) / Σ_j m_j^(-t), in the order of map.log_slopes().
template <std::floating_point Real>
std::vector<Real> equilibrium_weights(const BasicLinearCookieCutter<Real>& map, Real t) {
    const Real log_z = pressure(map, t);
    std::vector<Real> p;
    p.reserve(map.branches());
    for (Real l : map.log_slopes()) p.push_back(std::exp(-t * l - log_z));
    return p;
}

}  // namespace lyap
