#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>

namespace lyap::detail {

// Moments of the finite Gibbs family p_i ∝ exp(-t v_i).
template <std::floating_point Real>
struct GibbsMoments {
    Real log_partition;  // log Σ exp(-t v_i)
    Real mean;           // E_p[v]
    Real variance;       // E_p[(v - mean)^2]
    Real entropy;        // -Σ p_i log p_i
};

// Max-shifted log-sum-exp. The dominant term is kept out of the remainder so
// that log1p recovers contributions far below one ulp of the total.
template <std::floating_point Real>
GibbsMoments<Real> gibbs_moments(std::span<const Real> energies, Real t) {
    std::size_t top = 0;
    Real shift = -std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const Real x = -t * energies[i];
        if (x > shift) {
            shift = x;
            top = i;
        }
    }

    Real rest = 0;
    Real first = energies[top];
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (i == top) continue;
        const Real w = std::exp(-t * energies[i] - shift);
        rest += w;
        first += w * energies[i];
    }
    const Real z = Real(1) + rest;
    // log1p only where it gains accuracy; log(z) keeps log n exact at t = 0
    const Real log_z = rest < Real(0.5) ? std::log1p(rest) : std::log(z);
    const Real mean = first / z;

    Real second = 0;
    Real plogp = 0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const Real log_w = (i == top) ? Real(0) : (-t * energies[i] - shift);
        const Real w = (i == top) ? Real(1) : std::exp(log_w);
        const Real d = energies[i] - mean;
        second += w * d * d;
        if (w > 0) plogp += w * (log_w - log_z);
    }

    return {shift + log_z, mean, second / z, -plogp / z};
}

}  // namespace lyap::detail
