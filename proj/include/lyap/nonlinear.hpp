#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lyap/detail/gibbs.hpp"
#include "lyap/errors.hpp"
#include "lyap/pressure_model.hpp"
#include "lyap/thermo.hpp"

// Approximate pressure for non-linear cookie-cutter maps through level-n
// cylinder Birkhoff sums:
//
//   P_n(t) = (1/n) log Σ_{|w| = n} exp(-t S_w),   S_w = Σ_{k<n} log|T'(T^k x_w)|.
//
// This is a diagnostic discretization, not a certified enclosure. On affine
// branches it is exact at every depth (multinomial identity).

namespace lyap {

/// One full branch of a cookie-cutter map: an interval [left, right] mapped
/// onto [0, 1], with the forward map, |T'| and the inverse branch supplied
/// by the caller.
struct BranchSpec {
    double left = 0;
    double right = 1;
    std::function<double(double)> forward;     // on [left, right]
    std::function<double(double)> derivative;  // |T'|, on [left, right]
    std::function<double(double)> inverse;     // [0, 1] -> [left, right]
    bool increasing = true;
    double expansion_margin = 0;  // declared: |T'| >= 1 + margin
};

/// Checks endpoint images, declared expansion on a sample of points, and
/// pairwise disjointness. Throws InvalidModel.
inline void validate_branches(std::span<const BranchSpec> branches) {
    if (branches.size() < 2) throw InvalidModel("branches: at least two are required");
    for (const auto& br : branches) {
        if (!br.forward || !br.derivative || !br.inverse) throw InvalidModel("branches: missing evaluation function");
        if (!(br.left >= -1e-14 && br.right <= 1 + 1e-14 && br.left < br.right)) {
            throw InvalidModel("branches: interval must be a proper subinterval of [0, 1]");
        }
        if (!(br.expansion_margin > 0)) throw InvalidModel("branches: expansion margin must be positive");
        const double y_left = br.forward(br.left);
        const double y_right = br.forward(br.right);
        const double want_left = br.increasing ? 0.0 : 1.0;
        // rounding in x is amplified by |T'| at the endpoint
        auto slack = [&](double x) {
            return 1e-12 + 8 * std::numeric_limits<double>::epsilon() * std::abs(br.derivative(x)) * std::abs(x);
        };
        if (std::abs(y_left - want_left) > slack(br.left) || std::abs(y_right - (1.0 - want_left)) > slack(br.right)) {
            throw InvalidModel("branches: branch must map its interval onto [0, 1]");
        }
        constexpr int probes = 257;
        for (int i = 0; i < probes; ++i) {
            const double x = br.left + (br.right - br.left) * i / (probes - 1);
            if (!(br.derivative(x) >= (1 + br.expansion_margin) * (1 - 1e-12))) {
                throw InvalidModel("branches: |T'| falls below the declared expansion margin");
            }
        }
    }
    std::vector<std::pair<double, double>> spans;
    for (const auto& br : branches) spans.emplace_back(br.left, br.right);
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
        if (!(spans[i].first > spans[i - 1].second)) throw InvalidModel("branches: intervals must be disjoint");
    }
}

namespace detail {

// Left endpoints for branches of lengths 1/m_i laid out left to right with
// equal gaps, the outer ones touching 0 and 1.
inline std::vector<double> branch_layout(std::span<const double> slopes) {
    double total = 0;
    for (double m : slopes) {
        if (!(m > 1) || !std::isfinite(m)) throw InvalidModel("branch family: every slope must exceed 1");
        total += 1 / m;
    }
    if (slopes.size() < 2) throw InvalidModel("branch family: at least two slopes are required");
    if (!(total < 1)) throw InvalidModel("branch family: sum of 1/m_i must be < 1 for disjoint branches");
    const double gap = (1 - total) / static_cast<double>(slopes.size() - 1);
    std::vector<double> lefts;
    double x = 0;
    for (double m : slopes) {
        lefts.push_back(x);
        x += 1 / m + gap;
    }
    lefts.back() = 1 - 1 / slopes.back();
    return lefts;
}

}  // namespace detail

/// Affine branches of the given slopes (x -> m (x - l)).
inline std::vector<BranchSpec> linear_branches(std::span<const double> slopes) {
    const auto lefts = detail::branch_layout(slopes);
    std::vector<BranchSpec> out;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double m = slopes[i], l = lefts[i];
        out.push_back({l, l + 1 / m,
                       [m, l](double x) { return m * (x - l); },
                       [m](double) { return m; },
                       [m, l](double y) { return l + y / m; },
                       true, m - 1});
    }
    return out;
}

/// Möbius-perturbed affine branches: with u = m (x - l),
/// T(x) = (1 + c) u / (1 + c u), so |T'| = m (1 + c) / (1 + c u)².
/// Requires c > -1 and m * min(1 + c, 1 / (1 + c)) > 1.
inline std::vector<BranchSpec> mobius_branches(std::span<const double> slopes, double c) {
    if (!(c > -1)) throw InvalidModel("mobius family: parameter c must exceed -1");
    const auto lefts = detail::branch_layout(slopes);
    std::vector<BranchSpec> out;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double m = slopes[i], l = lefts[i];
        const double min_derivative = m * std::min(1 + c, 1 / (1 + c));
        if (!(min_derivative > 1)) throw InvalidModel("mobius family: perturbation destroys expansion");
        out.push_back({l, l + 1 / m,
                       [m, l, c](double x) {
                           const double u = m * (x - l);
                           return (1 + c) * u / (1 + c * u);
                       },
                       [m, l, c](double x) {
                           const double u = m * (x - l);
                           return m * (1 + c) / ((1 + c * u) * (1 + c * u));
                       },
                       [m, l, c](double y) { return l + y / (1 + c - c * y) / m; },
                       true, min_derivative - 1});
    }
    return out;
}

/// Sine-perturbed affine branches: with u = m (x - l),
/// T(x) = u + (eps / 2π) sin(2π u), so |T'| = m (1 + eps cos(2π u)).
/// Requires |eps| < 1 and m (1 - |eps|) > 1.
inline std::vector<BranchSpec> sine_branches(std::span<const double> slopes, double eps) {
    if (!(std::abs(eps) < 1)) throw InvalidModel("sine family: amplitude must satisfy |eps| < 1");
    const auto lefts = detail::branch_layout(slopes);
    constexpr double two_pi = 2 * std::numbers::pi;
    std::vector<BranchSpec> out;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double m = slopes[i], l = lefts[i];
        const double min_derivative = m * (1 - std::abs(eps));
        if (!(min_derivative > 1)) throw InvalidModel("sine family: perturbation destroys expansion");
        auto unit = [eps](double u) { return u + eps / two_pi * std::sin(two_pi * u); };
        auto inverse_unit = [eps, unit](double y) {
            // safeguarded Newton on the increasing map u -> unit(u)
            double lo = 0, hi = 1, u = y;
            for (int it = 0; it < 100; ++it) {
                const double f = unit(u) - y;
                if (f > 0) hi = u; else lo = u;
                const double step = f / (1 + eps * std::cos(two_pi * u));
                double next = u - step;
                if (!(next > lo && next < hi)) next = (lo + hi) / 2;
                if (std::abs(next - u) <= 1e-17) { u = next; break; }
                u = next;
            }
            return u;
        };
        out.push_back({l, l + 1 / m,
                       [m, l, unit](double x) { return unit(m * (x - l)); },
                       [m, l, eps](double x) { return m * (1 + eps * std::cos(two_pi * m * (x - l))); },
                       [m, l, inverse_unit](double y) { return l + inverse_unit(y) / m; },
                       true, min_derivative - 1});
    }
    return out;
}

struct CylinderTable {
    std::size_t depth = 0;
    std::size_t branches = 0;
    // indexed by word w = w_0 w_1 ... w_{n-1}, w_0 most significant
    std::vector<double> points;  // x_w, inside the cylinder of w
    std::vector<double> sums;    // S_w
};

inline std::size_t max_depth_for_budget(std::size_t branches, std::size_t budget) {
    std::size_t depth = 0;
    std::size_t size = 1;
    while (size <= budget / branches) {
        size *= branches;
        ++depth;
    }
    return depth;
}

/// Enumerates all words of length `depth`. The representative x_w is the
/// anchor pulled back through the inverse branches of w, so T^k x_w stays in
/// the cylinder of the k-shifted word and S_w follows its forward orbit.
inline CylinderTable build_cylinders(std::span<const BranchSpec> branches, std::size_t depth,
                                     std::size_t budget = std::size_t{1} << 20, double anchor = 0.5) {
    validate_branches(branches);
    if (depth < 1) throw InvalidModel("build_cylinders: depth must be at least 1");
    const std::size_t k = branches.size();
    const std::size_t max_depth = max_depth_for_budget(k, budget);
    if (depth > max_depth) {
        throw BudgetExceeded("build_cylinders: " + std::to_string(k) + "^" + std::to_string(depth) +
                                 " cylinders exceed the budget of " + std::to_string(budget) +
                                 "; maximal depth is " + std::to_string(max_depth),
                             max_depth);
    }

    // suffix tables: after step d they hold the points T^{n-d} x_w for all
    // suffixes of length d, together with their partial Birkhoff sums
    std::vector<double> points{anchor};
    std::vector<double> sums{0.0};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<double> next_points(points.size() * k);
        std::vector<double> next_sums(points.size() * k);
        for (std::size_t symbol = 0; symbol < k; ++symbol) {
            const auto& br = branches[symbol];
            for (std::size_t j = 0; j < points.size(); ++j) {
                const double x = br.inverse(points[j]);
                const std::size_t idx = symbol * points.size() + j;
                next_points[idx] = x;
                next_sums[idx] = sums[j] + std::log(br.derivative(x));
            }
        }
        points = std::move(next_points);
        sums = std::move(next_sums);
    }
    return {depth, k, std::move(points), std::move(sums)};
}

/// PressureModel over a cylinder table. alpha and sigma2 are the exact
/// t-derivatives of the approximate pressure P_n, so convexity and the
/// monotonicity of alpha hold by construction.
class CylinderPressure {
public:
    using value_type = double;

    explicit CylinderPressure(CylinderTable table) : table_(std::move(table)) {
        const auto [lo, hi] = std::minmax_element(table_.sums.begin(), table_.sums.end());
        const double n = static_cast<double>(table_.depth);
        range_ = {*lo / n, *hi / n};
        degenerate_ = (*hi - *lo) <= 1e-12 * std::max(1.0, std::abs(*hi));
    }

    PressureSample<double> evaluate(double t) const {
        const auto m = detail::gibbs_moments<double>(table_.sums, t);
        const double n = static_cast<double>(table_.depth);
        if (degenerate_) return {m.log_partition / n, range_.first, 0.0, m.entropy / n};
        return {m.log_partition / n, m.mean / n, m.variance / n, m.entropy / n};
    }

    std::pair<double, double> exponent_range() const { return range_; }
    bool degenerate() const { return degenerate_; }
    const CylinderTable& table() const noexcept { return table_; }

private:
    CylinderTable table_;
    std::pair<double, double> range_;
    bool degenerate_ = false;
};

inline double pressure_approx(const CylinderTable& table, double t) {
    return detail::gibbs_moments<double>(table.sums, t).log_partition / static_cast<double>(table.depth);
}

inline CylinderPressure model_from_cylinders(CylinderTable table) { return CylinderPressure(std::move(table)); }

struct ConvergenceReport {
    std::vector<std::size_t> depths;
    std::vector<double> probes;
    std::vector<std::vector<double>> pressure;    // [depth][probe]
    std::vector<std::vector<double>> difference;  // [i][probe] = |P_{d_i} - P_{d_{i+1}}|
};

/// Successive differences of P_n at each probe t. Reported, not asserted:
/// under bounded distortion they decay, but no rate is guaranteed here.
inline ConvergenceReport convergence_report(std::span<const BranchSpec> branches, std::span<const double> probes,
                                            std::span<const std::size_t> depths) {
    if (!std::is_sorted(depths.begin(), depths.end()) ||
        std::adjacent_find(depths.begin(), depths.end()) != depths.end()) {
        throw PreconditionError("convergence_report: depths must be strictly increasing");
    }
    ConvergenceReport report;
    report.depths.assign(depths.begin(), depths.end());
    report.probes.assign(probes.begin(), probes.end());
    for (std::size_t d : depths) {
        const auto table = build_cylinders(branches, d);
        std::vector<double> row;
        for (double t : probes) row.push_back(pressure_approx(table, t));
        report.pressure.push_back(std::move(row));
    }
    for (std::size_t i = 0; i + 1 < report.pressure.size(); ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < probes.size(); ++j) {
            row.push_back(std::abs(report.pressure[i][j] - report.pressure[i + 1][j]));
        }
        report.difference.push_back(std::move(row));
    }
    return report;
}

/// Desk-scale default depth: 10 for two branches, 7 for three, and the
/// largest depth with at most 2187 cylinders otherwise.
inline std::size_t default_depth(std::size_t branches) {
    if (branches <= 2) return 10;
    if (branches == 3) return 7;
    return std::max<std::size_t>(1, max_depth_for_budget(branches, 2187));
}

}  // namespace lyap
