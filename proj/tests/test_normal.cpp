#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eihlab/normal.hpp"

using namespace eihlab;

TEST(NormalCdf, ReferenceValues) {
    EXPECT_DOUBLE_EQ(std_normal_cdf(0.0), 0.5);
    // mpmath, 30 digits.
    EXPECT_NEAR(std_normal_cdf(1.0), 0.841344746068542948585232545632, 4e-16);
    EXPECT_NEAR(std_normal_cdf(-3.0), 0.00134989803163009452665181476759, 4e-18);
    EXPECT_NEAR(std_normal_cdf(-10.0), 7.61985302416052606597334325e-24, 4e-38);
}

TEST(NormalCdf, Symmetry) {
    for (double x = -8.0; x <= 8.0; x += 0.37) {
        EXPECT_NEAR(std_normal_cdf(x) + std_normal_cdf(-x), 1.0, 1e-15);
    }
}

TEST(NormalPdf, ReferenceValue) {
    EXPECT_NEAR(std_normal_pdf(0.0), 0.398942280401432677939946059934, 2e-16);
    EXPECT_NEAR(std_normal_pdf(2.0), 0.0539909665131880519505642004107, 4e-17);
}

TEST(UpperQuantile, ReferenceValues) {
    EXPECT_NEAR(upper_quantile(0.025).finite(), 1.95996398454005423552459443052, 1e-14);
    EXPECT_NEAR(upper_quantile(0.05).finite(), 1.64485362695147271486384890799, 1e-14);
    EXPECT_NEAR(upper_quantile(0.5).finite(), 0.0, 1e-15);
    EXPECT_NEAR(upper_quantile(0.975).finite(), -1.95996398454005423552459443052, 1e-14);
}

TEST(UpperQuantile, InvertsCdfAcrossRange) {
    for (double logp = -30.0; logp < -0.01; logp += 0.173) {
        const double p = std::exp(logp);
        const double z = upper_quantile(p).finite();
        EXPECT_NEAR(std_normal_cdf(-z) / p, 1.0, 1e-12) << "p = " << p;
    }
}

TEST(UpperQuantile, EdgeCases) {
    EXPECT_TRUE(upper_quantile(1.0).is_minus_infinity());
    EXPECT_TRUE(upper_quantile(1.5).is_minus_infinity());
    EXPECT_THROW(upper_quantile(0.0), std::invalid_argument);
    EXPECT_THROW(upper_quantile(-0.1), std::invalid_argument);
    EXPECT_THROW(upper_quantile(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    EXPECT_THROW((void)upper_quantile(1.0).finite(), std::domain_error);
}

TEST(UpperQuantile, DecreasingInP) {
    double prev = upper_quantile(1e-6).finite();
    for (double p = 2e-6; p < 0.999; p *= 1.7) {
        const double z = upper_quantile(p).finite();
        EXPECT_LT(z, prev);
        prev = z;
    }
}

TEST(ExtendedReal, Ordering) {
    EXPECT_LT(ExtendedReal::minus_infinity(), upper_quantile(0.9999));
}
