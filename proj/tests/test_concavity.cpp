#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lyap/lyap.hpp"
#include "oracles.hpp"

using lyap::LinearCookieCutter;
using lyap::LinearPressure;
using lyap::Verdict;

namespace {

LinearPressure from_logs(std::vector<double> logs) {
    return LinearPressure(LinearCookieCutter::from_log_slopes(std::span<const double>(logs)));
}

void expect_well_formed(const lyap::ConcavityReport<double>& r, const LinearPressure& model) {
    const double t_d = lyap::bowen_root(model);
    EXPECT_TRUE(r.even_inflection_count());
    EXPECT_FALSE(r.truncated);
    for (const auto& ip : r.inflections) {
        EXPECT_LT(lyap::criterion_G(model, ip.bracket_lo) * lyap::criterion_G(model, ip.bracket_hi), 0.0);
        EXPECT_LE(ip.bracket_lo, ip.t_star);
        EXPECT_GE(ip.bracket_hi, ip.t_star);
        EXPECT_LT(ip.t_star, t_d);
        EXPECT_NEAR(ip.alpha_star, model.evaluate(ip.t_star).alpha, 1e-15 * ip.alpha_star);
    }
    if (r.verdict == Verdict::NonConcave) { EXPECT_FALSE(r.inflections.empty()); }
    if (r.verdict == Verdict::Concave) { EXPECT_LT(r.worst_margin, 0.0); }
}

}  // namespace

TEST(CriterionG, Examples) {
    const LinearPressure flat(LinearCookieCutter({2.0, 2.0}));
    for (double t : {-3.0, 0.0, 1.0, 4.0}) EXPECT_NEAR(lyap::criterion_G(flat, t), -std::pow(std::log(2.0), 2), 1e-15);

    // σ²(0) = 22², P(0) = log 2, α(0) = 23
    EXPECT_NEAR(lyap::criterion_G(from_logs({1.0, 45.0}), 0.0), 141.96647078202706, 1e-11);

    for (auto logs : {std::vector<double>{1.0, 45.0}, {0.7, 2.0, 5.0}}) {
        const auto model = from_logs(logs);
        const auto d = lyap::spectrum_domain(model);
        EXPECT_NEAR(lyap::criterion_G(model, d.t_d), -d.alpha_d * d.alpha_d, 1e-10);
    }
}

TEST(D2LDAlpha2, Examples) {
    const auto model = from_logs({1.0, 10.0});
    const auto d = lyap::spectrum_domain(model);
    const auto s = model.evaluate(d.t_d);
    EXPECT_NEAR(lyap::d2L_dalpha2(model, d.t_d), -1 / (s.sigma2 * d.alpha_d), 1e-12);
    EXPECT_LT(lyap::d2L_dalpha2(model, 0.0), 0.0);
    EXPECT_GT(lyap::d2L_dalpha2(from_logs({1.0, 45.0}), 0.0), 0.0);
    EXPECT_THROW(lyap::d2L_dalpha2(LinearPressure(LinearCookieCutter({3.0, 3.0, 3.0})), 0.0), lyap::DegenerateModel);
}

TEST(D2LDAlpha2, AgreesWithTwoBranchClosedForm) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [la, lb] = oracle::random_two_branch(rng, 1.05, 50.0);
        const auto two = lyap::TwoBranchMap::from_logs(la, lb);
        const LinearPressure model(two.as_linear());
        for (double t = -3.0; t <= 3.0; t += 0.25) {
            const double alpha = model.evaluate(t).alpha;
            if (std::min(alpha - la, lb - alpha) < 1e-6 * (lb - la)) continue;
            const double closed = lyap::d2L_dalpha2_closed_form(two, alpha);
            EXPECT_NEAR(lyap::d2L_dalpha2(model, t), closed, 1e-8 * std::max(std::abs(closed), 1e-3));
        }
    }
}

TEST(D2LDAlpha2, MatchesSecondDifferencesOfSpectrum) {
    // L(α ± δ) through the t-inversion, in long double
    for (auto logs : {std::vector<long double>{1.0L, 10.0L}, {1.0L, 2.0L, 8.0L}}) {
        const lyap::BasicLinearPressure<long double> ld(lyap::BasicLinearCookieCutter<long double>::from_log_slopes(logs));
        const LinearPressure model = from_logs({logs.begin(), logs.end()});
        auto spectrum = [&](long double alpha) {
            const long double t = lyap::t_of_alpha(ld, alpha, {1e-18L, 400});
            return ld.evaluate(t).entropy / alpha;
        };
        for (double t = -2.0; t <= 2.0; t += 0.125) {
            const double exact = lyap::d2L_dalpha2(model, t);
            const long double alpha = ld.evaluate(t).alpha;
            const auto span = ld.exponent_range();
            const long double delta = 1e-3L * std::min(alpha - span.first, span.second - alpha);
            const double fd = static_cast<double>(oracle::central_second(spectrum, alpha, delta));
            EXPECT_NEAR(fd, exact, 1e-3 * std::abs(exact) + 1e-9) << "t=" << t;
        }
    }
}

TEST(Classify, ThreeBranchExamples) {
    const auto concave = from_logs({1.0, 2.0, 4.0});
    const auto r4 = lyap::classify(concave);
    EXPECT_EQ(r4.verdict, Verdict::Concave);
    EXPECT_TRUE(r4.inflections.empty());
    expect_well_formed(r4, concave);

    for (double c : {8.0, 16.0}) {
        const auto model = from_logs({1.0, 2.0, c});
        const auto r = lyap::classify(model);
        EXPECT_EQ(r.verdict, Verdict::NonConcave) << "c=e^" << c;
        EXPECT_EQ(r.inflections.size(), 2u);
        expect_well_formed(r, model);
    }
}

TEST(Classify, TwoBranchExamples) {
    EXPECT_EQ(lyap::classify(from_logs({1.0, 10.0})).verdict, Verdict::Concave);
    const auto model = from_logs({1.0, 45.0});
    const auto r = lyap::classify(model);
    EXPECT_EQ(r.verdict, Verdict::NonConcave);
    ASSERT_EQ(r.inflections.size(), 2u);
    expect_well_formed(r, model);
    // roots of G are roots of the two-branch inflection equation
    const auto two = lyap::TwoBranchMap::from_logs(1.0, 45.0);
    for (const auto& ip : r.inflections) EXPECT_NEAR(lyap::inflection_equation(two, ip.alpha_star), 0.0, 1e-12);
    // ordered by t, so alpha decreases; they straddle alpha_M = 23
    EXPECT_GT(r.inflections[0].alpha_star, 23.0);
    EXPECT_LT(r.inflections[1].alpha_star, 23.0);

    const auto boundary = from_logs({1.0, lyap::critical_ratio()});
    EXPECT_EQ(lyap::classify(boundary).verdict, Verdict::ConcaveBoundary);
}

TEST(Classify, DegenerateIsTriviallyConcave) {
    const auto r = lyap::classify(LinearPressure(LinearCookieCutter({2.0, 2.0})));
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.verdict, Verdict::Concave);
}

TEST(Classify, MaximumAtCriticalRatioSitsAtZero) {
    const auto model = from_logs({1.0, lyap::critical_ratio()});
    auto g = [&](double t) { return lyap::criterion_G(model, t); };
    // golden-section search written out here as an independent check
    // G is unimodal only near the peak, so bracket it tightly
    double lo = -0.05, hi = 0.05;
    const double r = (std::sqrt(5.0) - 1) / 2;
    for (int i = 0; i < 200; ++i) {
        const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
        if (g(x1) < g(x2)) lo = x1; else hi = x2;
    }
    const double t_max = 0.5 * (lo + hi);
    EXPECT_LT(std::abs(t_max), 1e-6);
    EXPECT_LT(std::abs(g(t_max)), 1e-8);
    const auto report = lyap::classify(model);
    EXPECT_LT(std::abs(report.worst_t), 1e-6);
    EXPECT_LT(std::abs(report.worst_margin), 1e-8);
}

TEST(Classify, WindowEdgesAreNegative) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const auto logs = oracle::random_log_slopes(rng, 2 + trial % 4, 0.1, 60.0);
        const auto model = from_logs(logs);
        const auto r = lyap::classify(model);
        EXPECT_LT(lyap::criterion_G(model, r.t_lo), 0.0);
        EXPECT_LT(lyap::criterion_G(model, r.t_hi), 0.0);
        EXPECT_NEAR(r.t_hi, lyap::bowen_root(model), 1e-15);
        // far left G tends to -(max log m)²
        const double top = *std::max_element(logs.begin(), logs.end());
        EXPECT_NEAR(lyap::criterion_G(model, r.t_lo - 1e4), -top * top, 1e-6 * top * top);
        expect_well_formed(r, model);
    }
}

TEST(PowerSumCriterion, Examples) {
    EXPECT_TRUE(lyap::corollary_c_check(LinearCookieCutter::from_log_slopes({1.0, 10.0})).concave);
    const auto ex = lyap::corollary_c_check(LinearCookieCutter::from_log_slopes({1.0, 45.0}));
    EXPECT_FALSE(ex.concave);
    EXPECT_GT(ex.worst_lhs, 1.0);
    const auto edge = lyap::corollary_c_check(LinearCookieCutter::from_log_slopes({1.0, lyap::critical_ratio()}));
    EXPECT_TRUE(edge.concave);
    EXPECT_TRUE(edge.boundary);
    EXPECT_LT(std::abs(edge.worst_t), 1e-6);
    EXPECT_TRUE(lyap::corollary_c_check(LinearCookieCutter({5.0, 5.0})).degenerate);
}

TEST(PowerSumCriterion, LhsIsTheVarianceRatio) {
    // 2 P σ² / α² written through the model
    const auto map = LinearCookieCutter::from_log_slopes({0.5, 3.0, 7.5});
    const LinearPressure model(map);
    for (double t = -5.0; t <= 5.0; t += 0.5) {
        const auto s = model.evaluate(t);
        EXPECT_NEAR(lyap::corollary_c_lhs(map, t), 2 * s.pressure * s.sigma2 / (s.alpha * s.alpha), 1e-12);
    }
}

TEST(CriteriaAgree, RandomMaps) {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [la, lb] = oracle::random_two_branch(rng, 1.01, 50.0);
        const auto two = lyap::TwoBranchMap::from_logs(la, lb);
        const auto scan = lyap::is_concave(lyap::classify(LinearPressure(two.as_linear())).verdict);
        EXPECT_EQ(scan, lyap::theorem_a_check(two).concave) << "ratio " << two.ratio();
        EXPECT_EQ(scan, lyap::corollary_c_check(two.as_linear()).concave) << "ratio " << two.ratio();
    }
    for (int trial = 0; trial < 20; ++trial) {
        const auto logs = oracle::random_log_slopes(rng, 3 + trial % 3, 0.1, 60.0);
        const auto model = from_logs(logs);
        const auto r = lyap::classify(model);
        EXPECT_EQ(lyap::is_concave(r.verdict), lyap::corollary_c_check(model.map()).concave);
        expect_well_formed(r, model);
    }
}

TEST(VerifyLeftConcavity, Examples) {
    EXPECT_TRUE(lyap::verify_left_concavity(from_logs({1.0, 45.0}), 200));
    EXPECT_TRUE(lyap::verify_left_concavity(LinearPressure(LinearCookieCutter({2.0, 4.0})), 200));
    EXPECT_TRUE(lyap::verify_left_concavity(from_logs({1.0, 2.0, 16.0}), 200));
}
