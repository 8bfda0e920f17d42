#include "adshor/threshold.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>

using namespace adshor::threshold;

namespace {

std::string sig3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

}  // namespace

TEST(Threshold, SubcircuitBudget) {
    EXPECT_EQ(n_sub(1), 194);
    EXPECT_EQ(n_sub(2), 464);
    EXPECT_EQ(n_sub(3), 784);
    EXPECT_THROW(n_sub(0), std::domain_error);
}

TEST(Threshold, TotalBudget) {
    EXPECT_EQ(n_total(1).total, 388);
    EXPECT_EQ(n_total(2).total, 3252);
    EXPECT_EQ(n_total(4).total, 28110);
    EXPECT_EQ(n_total(3).total, 9408);
    EXPECT_EQ(n_total(5).total, 56940);
    EXPECT_EQ(n_total(2).idle, 78);
    EXPECT_EQ(n_total(4).idle, 275);
    EXPECT_THROW(n_total(0), std::domain_error);
}

TEST(Threshold, BoundCoefficientSmallestCode) {
    // C(780,2) - C(388,2) = 228732
    EXPECT_EQ(bound_coefficient(388, 1).str(), "228732");
}

TEST(Threshold, BoundAtZeroAndMonotonicity) {
    EXPECT_DOUBLE_EQ(infidelity_bound(0.0, 1, 388), 0.0);
    EXPECT_GT(bound_coefficient(388, 1), 0);
    EXPECT_LT(bound_coefficient(300, 1), bound_coefficient(388, 1));
    EXPECT_LT(bound_coefficient(388, 2), bound_coefficient(500, 2));
}

TEST(Threshold, PinnedPseudothresholds) {
    EXPECT_EQ(sig3(pseudothreshold(1)), "1.46e-06");
    EXPECT_EQ(sig3(pseudothreshold(3)), "4.08e-06");
    EXPECT_EQ(sig3(pseudothreshold(8)), "6.73e-07");
}

TEST(Threshold, GoldenTableAllSizes) {
    auto rows = threshold_report(10);
    ASSERT_EQ(rows.size(), 9u);
    for (const auto& r : rows) {
        EXPECT_EQ(sig3(r.p_th), sig3(r.reference)) << "n=" << r.n;
        EXPECT_LT(std::abs(r.relative_deviation), 5e-3) << "n=" << r.n;
    }
}

TEST(Threshold, ClosedFormAgreesWithBisection) {
    for (long t = 1; t <= 9; ++t) {
        const double a = pseudothreshold(t);
        const double b = pseudothreshold_bisect(t);
        EXPECT_LT(std::abs(a - b) / a, 1e-9) << "t=" << t;
    }
}

namespace {

template <typename F>
double loglog_slope(F value, long t_lo, long t_hi, long stride = 1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (long t = t_lo; t <= t_hi; t += stride) {
        const double x = std::log(static_cast<double>(t));
        const double y = std::log(value(t));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

TEST(Threshold, BudgetGrowsAsSixthPower) {
    // worst-case budget over t in [4,40]
    const double s = loglog_slope(
        [](long t) { return static_cast<double>(worst_case_budget(t)); }, 4, 40);
    EXPECT_GT(s, 5.5);
    EXPECT_LT(s, 6.5);
    // the reduced budget reaches the same power once its subleading terms fade
    const double s_red = loglog_slope(
        [](long t) { return static_cast<double>(n_total(t).total); }, 401, 1601, 100);
    EXPECT_GT(s_red, 5.5);
    EXPECT_LT(s_red, 6.5);
}

TEST(Threshold, CurvesAreMonomialsWithCrossings) {
    auto pts = figure_data(1e-8, 1e-4, 200, 2, 10);
    // slope of each curve on log-log axes equals t+1
    for (int n = 2; n <= 10; ++n) {
        double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
        bool first = true;
        for (const auto& pt : pts) {
            if (pt.n != n) continue;
            if (first) {
                x0 = std::log(pt.p);
                y0 = std::log(pt.bound);
                first = false;
            } else {
                x1 = std::log(pt.p);
                y1 = std::log(pt.bound);
            }
        }
        EXPECT_NEAR((y1 - y0) / (x1 - x0), n, 1e-9);
    }
}

TEST(Threshold, OptimalSizeDependsOnP) {
    auto best_n = [](double p) {
        int best = 0;
        double bv = 1e300;
        for (int n = 2; n <= 10; ++n) {
            const long t = n - 1;
            const double b = infidelity_bound(p, t, n_total(t).total);
            if (b < bv) {
                bv = b;
                best = n;
            }
        }
        return best;
    };
    EXPECT_EQ(best_n(3e-6), 4);  // near the n=4 peak threshold
    EXPECT_GT(best_n(1e-7), best_n(1e-6));  // smaller p favors larger lattices
}
