#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stratsim/stats.hpp"

using namespace stratsim;

namespace {

// Two-sided p-value by Simpson integration of the Student t density.
double t_pvalue_oracle(double t, double df) {
  const double log_c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * std::numbers::pi);
  auto pdf = [&](double x) { return std::exp(log_c - (df + 1) / 2 * std::log1p(x * x / df)); };
  const double a = 0.0, b = std::abs(t);
  const int n = 20000;
  const double h = (b - a) / n;
  double s = pdf(a) + pdf(b);
  for (int i = 1; i < n; ++i) s += pdf(a + i * h) * (i % 2 ? 4.0 : 2.0);
  const double central = s * h / 3.0;
  return 1.0 - 2.0 * central;
}

}  // namespace

TEST(Stats, MeanAndVariance) {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(stats::mean(xs), 5.0);
  EXPECT_DOUBLE_EQ(stats::sample_variance(xs), 32.0 / 7.0);
  EXPECT_EQ(stats::sample_variance(std::vector<double>{3.0}), 0.0);
}

TEST(Stats, PearsonLinearAndUndefined) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> up{3, 5, 7, 9, 11};
  const std::vector<double> down{10, 8, 6, 4, 2};
  EXPECT_NEAR(*stats::pearson(x, up), 1.0, 1e-12);
  EXPECT_NEAR(*stats::pearson(x, down), -1.0, 1e-12);
  EXPECT_FALSE(stats::pearson(x, std::vector<double>{1, 1, 1, 1, 1}).has_value());
  EXPECT_FALSE(stats::pearson(std::vector<double>{1}, std::vector<double>{2}).has_value());
  // sxy = 4, sxx = 10, syy = 3.2.
  EXPECT_NEAR(*stats::pearson(x, std::vector<double>{1, 3, 2, 3, 3}), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Stats, WelchAgainstHandValues) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const auto w = stats::welch_t_test(a, b);
  // var a = 2.5, var b = 10; se^2 = 0.5 + 2 = 2.5.
  EXPECT_NEAR(w.t, -3.0 / std::sqrt(2.5), 1e-12);
  EXPECT_NEAR(w.df, 6.25 / 1.0625, 1e-12);
  EXPECT_NEAR(w.p_value, t_pvalue_oracle(w.t, w.df), 1e-7);
  EXPECT_GT(w.p_value, 0.05);
  EXPECT_LT(w.p_value, 0.15);
}

TEST(Stats, WelchPValueMatchesOracleAcrossShapes) {
  const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases{
      {{0.1, 0.2, 0.15, 0.12}, {0.3, 0.35, 0.31}},
      {{5, 6, 7, 8, 9, 10}, {5.5, 6.5, 7.5}},
      {{1, 1.1}, {3, 3.3, 2.9, 3.1, 3.05}},
  };
  for (const auto& [a, b] : cases) {
    const auto w = stats::welch_t_test(a, b);
    EXPECT_NEAR(w.p_value, t_pvalue_oracle(w.t, w.df), 1e-7);
    const auto r = stats::welch_t_test(b, a);
    EXPECT_NEAR(r.t, -w.t, 1e-12);
    EXPECT_NEAR(r.p_value, w.p_value, 1e-12);
  }
}

TEST(Stats, WelchZeroVariance) {
  const std::vector<double> a{2, 2, 2};
  const auto same = stats::welch_t_test(a, a);
  EXPECT_EQ(same.t, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  const auto diff = stats::welch_t_test(a, std::vector<double>{3, 3});
  EXPECT_TRUE(std::isinf(diff.t));
  EXPECT_LT(diff.t, 0.0);
  EXPECT_EQ(diff.p_value, 0.0);
  EXPECT_THROW(stats::welch_t_test(std::vector<double>{1}, a), std::invalid_argument);
}
