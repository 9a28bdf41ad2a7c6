#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include "lyap/errors.hpp"
#include "lyap/linear_map.hpp"
#include "lyap/pressure_model.hpp"
#include "lyap/thermo.hpp"
#include "lyap/two_branch.hpp"

namespace lyap {

/// G(t) = 2 σ²(t) P(t) - α(t)². The spectrum is locally concave at α(t)
/// iff G(t) <= 0; G(t_d) = -α_d² and G < 0 for every t > t_d.
template <PressureModel Model>
typename Model::value_type criterion_G(const Model& model, typename Model::value_type t) {
    const auto s = model.evaluate(t);
    return 2 * s.sigma2 * s.pressure - s.alpha * s.alpha;
}

/// Exact d²L/dα² at α(t): (α² - 2σ²P) / (-σ² α³) = G / (σ² α³).
template <PressureModel Model>
typename Model::value_type d2L_dalpha2(const Model& model, typename Model::value_type t) {
    const auto s = model.evaluate(t);
    if (model.degenerate() || !(s.sigma2 > 0)) {
        throw DegenerateModel("d2L_dalpha2: asymptotic variance vanishes");
    }
    const auto g = 2 * s.sigma2 * s.pressure - s.alpha * s.alpha;
    return g / (s.sigma2 * s.alpha * s.alpha * s.alpha);
}

enum class Verdict { Concave, ConcaveBoundary, NonConcave };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Concave: return "concave";
        case Verdict::ConcaveBoundary: return "concave_boundary";
        case Verdict::NonConcave: return "non_concave";
    }
    return "unknown";
}

inline bool is_concave(Verdict v) { return v != Verdict::NonConcave; }

template <std::floating_point Real>
struct ScanOptions {
    Real tolerance = Real(1e-9);       // G <= tolerance counts as concave
    std::size_t base_points = 4001;    // per window segment
    std::size_t refine_factor = 8;
    Real refine_fraction = Real(0.05); // refine where |G| < fraction * median|G|
    Real min_window = 40;              // first segment is [t_d - min_window, t_d]
    int max_doublings = 20;
    Real tail_ratio = Real(1e-12);     // stop once σ² <= tail_ratio * α²
    Real root_tolerance = Real(1e-11);
};

template <std::floating_point Real>
struct InflectionPoint {
    Real t_star;
    Real alpha_star;
    Real bracket_lo;  // G(bracket_lo) * G(bracket_hi) < 0
    Real bracket_hi;
    std::optional<Real> transversality;  // two-branch linear maps only
};

template <std::floating_point Real>
struct ConcavityReport {
    Verdict verdict = Verdict::Concave;
    std::vector<InflectionPoint<Real>> inflections;
    Real worst_margin = 0;  // max of G over the scan
    Real worst_t = 0;
    Real t_lo = 0;
    Real t_hi = 0;
    std::size_t evaluations = 0;
    bool truncated = false;   // window hit max_doublings before the tail test passed
    bool degenerate = false;

    bool even_inflection_count() const { return inflections.size() % 2 == 0; }
};

namespace detail {

template <std::floating_point Real, class F>
std::pair<Real, Real> golden_maximize(F&& f, Real lo, Real hi, int iterations = 200) {
    const Real inv_phi = (std::sqrt(Real(5)) - 1) / 2;
    Real x1 = hi - inv_phi * (hi - lo);
    Real x2 = lo + inv_phi * (hi - lo);
    Real f1 = f(x1);
    Real f2 = f(x2);
    for (int i = 0; i < iterations && hi - lo > std::numeric_limits<Real>::epsilon() * (1 + std::abs(lo)); ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

// Maximum of f over a sorted grid, polished by golden section in the two
// cells adjacent to the best grid point.
template <std::floating_point Real, class F>
std::pair<Real, Real> refined_max(F&& f, const std::vector<Real>& ts, const std::vector<Real>& values) {
    const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    const Real lo = ts[best == 0 ? 0 : best - 1];
    const Real hi = ts[std::min(best + 1, ts.size() - 1)];
    auto polished = golden_maximize<Real>(f, lo, hi);
    if (polished.second < values[best]) return {ts[best], values[best]};
    return polished;
}

// Scan points on [t_lo, t_d], ascending. Segments of base_points points are
// added below t_d with doubling width until σ² becomes negligible against α²
// (past that point G stays negative).
template <PressureModel Model>
std::vector<typename Model::value_type> scan_points(const Model& model, typename Model::value_type t_d,
                                                     const ScanOptions<typename Model::value_type>& opts,
                                                     bool& truncated) {
    using Real = typename Model::value_type;
    std::vector<Real> ts;
    Real hi = t_d;
    Real width = opts.min_window;
    truncated = false;
    for (int k = 0;; ++k) {
        const Real lo = t_d - width;
        const std::size_t n = opts.base_points;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            ts.push_back(hi - (hi - lo) * static_cast<Real>(i) / static_cast<Real>(n - 1));
        }
        const auto s = model.evaluate(lo);
        const bool tail_safe = s.sigma2 <= opts.tail_ratio * s.alpha * s.alpha &&
                               2 * s.sigma2 * s.pressure - s.alpha * s.alpha < 0;
        if (tail_safe) {
            ts.push_back(lo);
            break;
        }
        if (k == opts.max_doublings) {
            ts.push_back(lo);
            truncated = true;
            break;
        }
        hi = lo;
        width *= 2;
    }
    std::reverse(ts.begin(), ts.end());
    return ts;
}

template <std::floating_point Real>
Real median_abs(std::vector<Real> v) {
    for (auto& x : v) x = std::abs(x);
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

template <class T>
struct is_linear_pressure : std::false_type {};
template <class R>
struct is_linear_pressure<BasicLinearPressure<R>> : std::true_type {};

}  // namespace detail

/// Full concavity classification of the spectrum of `model`.
///
/// Scans G over t <= t_d only (for t > t_d the pressure is negative and G
/// cannot be positive), refines near small |G|, bisects every sign change,
/// and polishes the maximum of G to decide boundary cases. For two-branch
/// linear maps each inflection carries a transversality certificate.
template <PressureModel Model>
ConcavityReport<typename Model::value_type> classify(const Model& model,
                                                     const ScanOptions<typename Model::value_type>& opts = {}) {
    using Real = typename Model::value_type;
    ConcavityReport<Real> report;
    if (model.degenerate()) {
        report.degenerate = true;
        report.verdict = Verdict::Concave;
        report.worst_margin = -model.evaluate(0).alpha * model.evaluate(0).alpha;
        return report;
    }

    const Real t_d = bowen_root(model);
    auto g = [&](Real t) { return criterion_G(model, t); };

    std::vector<Real> ts = detail::scan_points(model, t_d, opts, report.truncated);
    std::vector<Real> gs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) gs[i] = g(ts[i]);

    // local refinement near small |G|
    const Real typical = detail::median_abs(gs);
    std::vector<Real> rts;
    std::vector<Real> rgs;
    rts.reserve(ts.size());
    rgs.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        rts.push_back(ts[i]);
        rgs.push_back(gs[i]);
        if (i + 1 == ts.size()) break;
        if (std::min(std::abs(gs[i]), std::abs(gs[i + 1])) < opts.refine_fraction * typical) {
            for (std::size_t j = 1; j < opts.refine_factor; ++j) {
                const Real t = ts[i] + (ts[i + 1] - ts[i]) * static_cast<Real>(j) / static_cast<Real>(opts.refine_factor);
                rts.push_back(t);
                rgs.push_back(g(t));
            }
        }
    }

    auto [worst_t, worst] = detail::refined_max<Real>(g, rts, rgs);
    report.worst_t = worst_t;
    report.worst_margin = worst;
    if (worst > opts.tolerance) {
        // make sure the polished maximum participates in the sign-change search
        auto pos = std::lower_bound(rts.begin(), rts.end(), worst_t);
        if (pos == rts.end() || *pos != worst_t) {
            const auto k = pos - rts.begin();
            rts.insert(pos, worst_t);
            rgs.insert(rgs.begin() + k, worst);
        }
    }
    report.evaluations = rts.size();
    report.t_lo = rts.front();
    report.t_hi = rts.back();

    if (worst > opts.tolerance) {
        report.verdict = Verdict::NonConcave;
    } else if (worst >= -opts.tolerance) {
        report.verdict = Verdict::ConcaveBoundary;
    } else {
        report.verdict = Verdict::Concave;
    }

    if (report.verdict == Verdict::NonConcave) {
        for (std::size_t i = 0; i + 1 < rts.size(); ++i) {
            if ((rgs[i] > 0) == (rgs[i + 1] > 0)) continue;
            Real lo = rts[i], hi = rts[i + 1];
            Real g_lo = rgs[i];
            Real mid = lo + (hi - lo) / 2;
            Real g_mid = g(mid);
            for (int it = 0; it < 200; ++it) {
                if (std::abs(g_mid) < opts.root_tolerance) break;
                if ((g_mid > 0) == (g_lo > 0)) {
                    lo = mid;
                    g_lo = g_mid;
                } else {
                    hi = mid;
                }
                const Real next = lo + (hi - lo) / 2;
                if (next == lo || next == hi) break;
                mid = next;
                g_mid = g(mid);
            }
            report.inflections.push_back({mid, model.evaluate(mid).alpha, lo, hi, std::nullopt});
        }
    }

    if constexpr (detail::is_linear_pressure<Model>::value) {
        const auto& map = model.map();
        if (map.branches() == 2) {
            const auto logs = map.log_slopes();
            const auto two = BasicTwoBranchMap<Real>::from_logs(std::min(logs[0], logs[1]), std::max(logs[0], logs[1]));
            for (auto& ip : report.inflections) {
                try {
                    ip.transversality = transversality_check(two, ip.alpha_star);
                } catch (const PreconditionError&) {
                    ip.transversality = std::nullopt;
                }
            }
        }
    }
    return report;
}

/// Left-hand side of the slope criterion for linear maps,
///   2 log(Σ m_i^u) [ (Σ m_i^u log² m_i)(Σ m_i^u) / (Σ m_i^u log m_i)² - 1 ],
/// evaluated at u = -t (the power sums are written in the m^u form).
/// The spectrum is concave iff this never exceeds 1.
template <std::floating_point Real>
Real corollary_c_lhs(const BasicLinearCookieCutter<Real>& map, Real t) {
    const Real u = -t;
    Real shift = -std::numeric_limits<Real>::infinity();
    for (Real l : map.log_slopes()) shift = std::max(shift, u * l);
    Real s0 = 0, s1 = 0, s2 = 0;
    for (Real l : map.log_slopes()) {
        const Real w = std::exp(u * l - shift);
        s0 += w;
        s1 += w * l;
        s2 += w * l * l;
    }
    const Real log_sum = shift + std::log(s0);
    return 2 * log_sum * (s2 * s0 / (s1 * s1) - 1);
}

template <std::floating_point Real>
struct CorollaryCResult {
    bool concave;
    bool boundary;
    bool degenerate;
    Real worst_t;    // library t; the power-sum variable is u = -worst_t
    Real worst_lhs;
};

/// Maximizes the slope criterion over the effective window and compares it to 1.
template <std::floating_point Real>
CorollaryCResult<Real> corollary_c_check(const BasicLinearCookieCutter<Real>& map,
                                         const ScanOptions<Real>& opts = {}) {
    if (map.degenerate()) return {true, false, true, Real(0), Real(0)};
    const BasicLinearPressure<Real> model(map);
    const Real t_d = bowen_root(model);
    bool truncated = false;
    std::vector<Real> ts = detail::scan_points(model, t_d, opts, truncated);
    // also cover a stretch beyond t_d, where the criterion holds trivially
    const Real step = opts.min_window / static_cast<Real>(opts.base_points - 1);
    for (Real t = t_d + step; t <= t_d + 15; t += step) ts.push_back(t);

    auto lhs = [&](Real t) { return corollary_c_lhs(map, t); };
    std::vector<Real> values(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) values[i] = lhs(ts[i]);
    const auto [worst_t, worst] = detail::refined_max<Real>(lhs, ts, values);
    return {worst <= 1 + opts.tolerance, std::abs(worst - 1) <= opts.tolerance, false, worst_t, worst};
}

/// Samples d²L/dα² at t_d + 15 k / samples, k = 1..samples (the part of the
/// spectrum left of α_d) and checks every value is <= tolerance.
template <PressureModel Model>
bool verify_left_concavity(const Model& model, std::size_t samples,
                           typename Model::value_type tolerance = 1e-12,
                           typename Model::value_type span = 15) {
    using Real = typename Model::value_type;
    if (model.degenerate()) return true;
    const Real t_d = bowen_root(model);
    for (std::size_t k = 1; k <= samples; ++k) {
        const Real t = t_d + span * static_cast<Real>(k) / static_cast<Real>(samples);
        const auto s = model.evaluate(t);
        if (!(s.sigma2 > 0)) continue;  // underflowed variance far in the tail
        if (d2L_dalpha2(model, t) > tolerance) return false;
    }
    return true;
}

}  // namespace lyap
