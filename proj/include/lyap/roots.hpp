#pragma once

#include <cmath>
#include <concepts>

#include "lyap/errors.hpp"

namespace lyap {

template <std::floating_point Real>
struct RootOptions {
    Real tolerance = Real(1e-12);
    int max_iterations = 200;
};

/// Root of a strictly decreasing f on a bracket with f(lo) > 0 > f(hi).
///
/// Bisects until |f| < tolerance (or the bracket collapses to adjacent
/// floats), then takes one Newton step with df, kept only if it stays inside
/// the final bracket and does not increase |f|.
template <std::floating_point Real, class F, class DF>
Real solve_decreasing(F&& f, DF&& df, Real lo, Real hi, const RootOptions<Real>& opts) {
    Real f_lo = f(lo);
    Real f_hi = f(hi);
    if (f_lo == 0) return lo;
    if (f_hi == 0) return hi;
    if (!(f_lo > 0 && f_hi < 0)) {
        throw DomainError("solve_decreasing: root is not bracketed");
    }

    Real mid = lo + (hi - lo) / 2;
    Real f_mid = f(mid);
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (std::abs(f_mid) < opts.tolerance) break;
        if (f_mid > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
        const Real next = lo + (hi - lo) / 2;
        if (next == lo || next == hi) break;
        mid = next;
        f_mid = f(mid);
    }

    const Real slope = df(mid);
    if (slope < 0 && std::isfinite(slope)) {
        const Real polished = mid - f_mid / slope;
        if (polished >= lo && polished <= hi) {
            const Real f_pol = f(polished);
            if (std::abs(f_pol) <= std::abs(f_mid)) return polished;
        }
    }
    return mid;
}

}  // namespace lyap
