#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "lyap/errors.hpp"
#include "lyap/linear_map.hpp"

namespace lyap {

/// Two affine branches x -> a x on [0, 1/a] and x -> b x + 1 - b on
/// [1 - 1/b, 1], with 1 < a < b.
///
/// On [log a, log b] the equilibrium state with exponent alpha is the
/// Bernoulli measure with weights
///   p = (log b - alpha) / log(b/a),   q = (alpha - log a) / log(b/a),
/// which gives every closed form below.
template <std::floating_point Real = double>
class BasicTwoBranchMap {
public:
    using value_type = Real;

    BasicTwoBranchMap(Real a, Real b) : BasicTwoBranchMap(std::log(a), std::log(b), a, b) {}

    static BasicTwoBranchMap from_logs(Real log_a, Real log_b) {
        return BasicTwoBranchMap(log_a, log_b, std::exp(log_a), std::exp(log_b));
    }

    Real a() const noexcept { return a_; }
    Real b() const noexcept { return b_; }
    Real log_a() const noexcept { return la_; }
    Real log_b() const noexcept { return lb_; }
    Real log_ratio() const noexcept { return lb_ - la_; }  // log(b/a)
    Real ratio() const noexcept { return lb_ / la_; }       // log b / log a
    Real alpha_M() const noexcept { return (la_ + lb_) / 2; }

    BasicLinearCookieCutter<Real> as_linear() const {
        return BasicLinearCookieCutter<Real>::from_log_slopes({la_, lb_});
    }

private:
    BasicTwoBranchMap(Real log_a, Real log_b, Real a, Real b) : a_(a), b_(b), la_(log_a), lb_(log_b) {
        if (!(la_ > 0) || !(lb_ > la_) || !std::isfinite(lb_)) {
            throw InvalidModel("two-branch map: slopes must satisfy 1 < a < b");
        }
        if (std::exp(-la_) + std::exp(-lb_) > Real(1) + Real(1e-12)) {
            throw InvalidModel("two-branch map: 1/a + 1/b must not exceed 1");
        }
    }

    Real a_, b_, la_, lb_;
};

using TwoBranchMap = BasicTwoBranchMap<double>;

namespace detail {

template <std::floating_point Real>
void require_closed(const BasicTwoBranchMap<Real>& map, Real alpha, const char* what) {
    if (!(alpha >= map.log_a() && alpha <= map.log_b())) {
        throw DomainError(std::string(what) + ": alpha must lie in [log a, log b]");
    }
}

template <std::floating_point Real>
void require_open(const BasicTwoBranchMap<Real>& map, Real alpha, const char* what) {
    if (!(alpha > map.log_a() && alpha < map.log_b())) {
        throw DomainError(std::string(what) + ": alpha must lie strictly inside (log a, log b)");
    }
}

template <std::floating_point Real>
Real xlogx(Real x) {
    return x > 0 ? x * std::log(x) : Real(0);
}

}  // namespace detail

/// Entropy of the Bernoulli equilibrium state with exponent alpha, using 0 log 0 = 0.
template <std::floating_point Real>
Real entropy_of_alpha(const BasicTwoBranchMap<Real>& map, Real alpha) {
    detail::require_closed(map, alpha, "entropy_of_alpha");
    const Real d = map.log_ratio();
    const Real p = (map.log_b() - alpha) / d;
    const Real q = (alpha - map.log_a()) / d;
    return -detail::xlogx(p) - detail::xlogx(q);
}

/// Explicit spectrum L(alpha) = h(alpha) / alpha on [log a, log b].
template <std::floating_point Real>
Real spectrum_closed_form(const BasicTwoBranchMap<Real>& map, Real alpha) {
    detail::require_closed(map, alpha, "spectrum_closed_form");
    return entropy_of_alpha(map, alpha) / alpha;
}

/// d^k h / d alpha^k for k = 1..4 on the open interval.
///
/// With u = alpha - log a and v = log b - alpha:
///   h'    = log(v/u) / log(b/a)
///   h''   = -(1/u + 1/v) / log(b/a)
///   h'''  = (1/u² - 1/v²) / log(b/a)
///   h'''' = -2 (1/u³ + 1/v³) / log(b/a)
template <std::floating_point Real>
Real entropy_derivative(const BasicTwoBranchMap<Real>& map, Real alpha, int order) {
    detail::require_open(map, alpha, "entropy_derivative");
    const Real d = map.log_ratio();
    const Real u = alpha - map.log_a();
    const Real v = map.log_b() - alpha;
    switch (order) {
        case 1: return (std::log(v) - std::log(u)) / d;
        case 2: return -(1 / u + 1 / v) / d;
        case 3: return (1 / (u * u) - 1 / (v * v)) / d;
        case 4: return -2 * (1 / (u * u * u) + 1 / (v * v * v)) / d;
        default: throw PreconditionError("entropy_derivative: order must be 1, 2, 3 or 4");
    }
}

/// 2 dL/dalpha = 2 [log b log p - log a log q] / (alpha² log(b/a)).
template <std::floating_point Real>
Real two_dL_dalpha(const BasicTwoBranchMap<Real>& map, Real alpha) {
    detail::require_open(map, alpha, "two_dL_dalpha");
    const Real d = map.log_ratio();
    const Real log_p = std::log((map.log_b() - alpha) / d);
    const Real log_q = std::log((alpha - map.log_a()) / d);
    return 2 * (map.log_b() * log_p - map.log_a() * log_q) / (alpha * alpha * d);
}

/// d²L/dalpha² = (h'' - 2 L') / alpha, from L = h / alpha.
template <std::floating_point Real>
Real d2L_dalpha2_closed_form(const BasicTwoBranchMap<Real>& map, Real alpha) {
    return (entropy_derivative(map, alpha, 2) - two_dL_dalpha(map, alpha)) / alpha;
}

/// F(alpha) = h''(alpha) - 2 dL/dalpha(alpha) = alpha * L''(alpha).
///
/// Zeros of F are exactly the inflection points of the spectrum; the
/// spectrum is concave iff F <= 0 on the whole interval, and F -> -inf at
/// both endpoints.
template <std::floating_point Real>
Real inflection_equation(const BasicTwoBranchMap<Real>& map, Real alpha) {
    return entropy_derivative(map, alpha, 2) - two_dL_dalpha(map, alpha);
}

/// (sqrt(2 log 2) + 1) / (sqrt(2 log 2) - 1).
template <std::floating_point Real = double>
Real critical_ratio() {
    const Real s = std::sqrt(2 * std::numbers::ln2_v<Real>);
    return (s + 1) / (s - 1);
}

template <std::floating_point Real>
struct TheoremAVerdict {
    Real ratio;
    Real critical_ratio;
    bool concave;
    bool boundary;  // |margin| <= tolerance
    Real margin;    // critical_ratio - ratio
};

/// Concave iff log b / log a <= critical_ratio (non-strict at the threshold).
template <std::floating_point Real>
TheoremAVerdict<Real> theorem_a_check(const BasicTwoBranchMap<Real>& map, Real tolerance = Real(1e-9)) {
    const Real crit = critical_ratio<Real>();
    const Real margin = crit - map.ratio();
    return {map.ratio(), crit, margin >= -tolerance, std::abs(margin) <= tolerance, margin};
}

/// b* = a^critical_ratio: the second slope at which concavity is lost.
template <std::floating_point Real>
Real bifurcation_slope(Real a) {
    if (!(a > 1) || !std::isfinite(a)) throw InvalidModel("bifurcation_slope: slope a must exceed 1");
    return std::exp(critical_ratio<Real>() * std::log(a));
}

/// |2 L''(alpha_i) - h'''(alpha_i)| at a zero alpha_i of the inflection
/// equation: the slope of F there, hence a non-degeneracy certificate.
///
/// Returns nullopt at alpha_M, where a zero can be tangential. Throws
/// PreconditionError when alpha_i is not a zero of F.
template <std::floating_point Real>
std::optional<Real> transversality_check(const BasicTwoBranchMap<Real>& map, Real alpha_i,
                                         Real root_tolerance = Real(1e-6)) {
    detail::require_open(map, alpha_i, "transversality_check");
    const Real h2 = entropy_derivative(map, alpha_i, 2);
    const Real dl2 = two_dL_dalpha(map, alpha_i);
    if (std::abs(h2 - dl2) > root_tolerance * (std::abs(h2) + std::abs(dl2))) {
        throw PreconditionError("transversality_check: alpha is not a zero of the inflection equation");
    }
    if (std::abs(alpha_i - map.alpha_M()) <= Real(1e-9) * map.log_ratio()) return std::nullopt;
    const Real l2 = (h2 - dl2) / alpha_i;
    return std::abs(2 * l2 - entropy_derivative(map, alpha_i, 3));
}

}  // namespace lyap
