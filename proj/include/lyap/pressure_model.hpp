#pragma once

#include <concepts>
#include <utility>

namespace lyap {

/// Pressure of the potential -t log|T'| together with its first two
/// t-derivatives and the entropy of the equilibrium state.
///
/// Sign convention: pressure(t) = log Σ m_i^(-t) in the linear case, so
/// alpha = -dP/dt > 0 and sigma2 = d²P/dt² >= 0.
template <std::floating_point Real>
struct PressureSample {
    Real pressure;
    Real alpha;
    Real sigma2;
    Real entropy;
};

/// Anything that can report P, -P', P'' (and the equilibrium entropy) at a
/// real parameter t. Both the closed-form linear backend and the cylinder
/// approximation satisfy it.
template <class M>
concept PressureModel = requires(const M& model, typename M::value_type t) {
    typename M::value_type;
    requires std::floating_point<typename M::value_type>;
    { model.evaluate(t) } -> std::same_as<PressureSample<typename M::value_type>>;
    // closed interval [alpha_min, alpha_max] of attainable exponents
    { model.exponent_range() } -> std::same_as<std::pair<typename M::value_type, typename M::value_type>>;
    { model.degenerate() } -> std::convertible_to<bool>;
};

}  // namespace lyap
