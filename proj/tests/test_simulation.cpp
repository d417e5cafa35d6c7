#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "pitcast/error.hpp"
#include "pitcast/figures.hpp"
#include "pitcast/simulation.hpp"

using namespace pitcast;

namespace {

TEST(Rng, UniformOpenInterval) {
  Rng rng(1);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 200000, 0.5, 0.003);
}

TEST(Rng, NormalMoments) {
  Rng rng(2);
  std::vector<double> x(400000);
  for (auto& v : x) v = rng.normal();
  EXPECT_NEAR(oracle::sample_mean(x), 0.0, 0.006);
  EXPECT_NEAR(oracle::sample_variance(x), 1.0, 0.01);
}

TEST(Rng, BinomialMomentsAndEdges) {
  Rng rng(3);
  for (auto [n, p] : {std::pair<std::uint64_t, double>{100, 0.03}, {10000, 0.2}, {7, 0.9}}) {
    std::vector<double> x(50000);
    for (auto& v : x) v = static_cast<double>(rng.binomial(n, p));
    const double mean = n * p, var = n * p * (1 - p);
    EXPECT_NEAR(oracle::sample_mean(x), mean, 5.0 * std::sqrt(var / x.size())) << n;
    EXPECT_NEAR(oracle::sample_variance(x) / var, 1.0, 0.04) << n;
  }
  EXPECT_EQ(rng.binomial(50, 0.0), 0u);
  EXPECT_EQ(rng.binomial(50, 1.0), 50u);
  EXPECT_EQ(rng.binomial(0, 0.4), 0u);
  EXPECT_THROW(static_cast<void>(rng.binomial(5, 1.5)), InvalidArgument);
}

TEST(SimulatePaths, Deterministic) {
  const auto p1 = validate_ar1(0.8);
  EXPECT_EQ(simulate_ar1_path(p1, 500, 9), simulate_ar1_path(p1, 500, 9));
  EXPECT_NE(simulate_ar1_path(p1, 500, 9), simulate_ar1_path(p1, 500, 10));
  const auto p2 = validate_ar2(1.3, -0.65);
  EXPECT_EQ(simulate_ar2_path(p2, 500, 9), simulate_ar2_path(p2, 500, 9));
  EXPECT_EQ(simulate_ar2_path(p2, 500, 9).size(), 500u);
}

TEST(SimulatePaths, StationaryMoments) {
  const auto a1 = simulate_ar1_path(validate_ar1(0.8), 200000, 4);
  EXPECT_NEAR(oracle::sample_variance(a1), 1.0, 0.03);
  EXPECT_NEAR(oracle::lag1_autocorrelation(a1), 0.8, 0.02);
  const auto a2 = simulate_ar2_path(validate_ar2(1.3, -0.65), 200000, 4);
  EXPECT_NEAR(oracle::sample_variance(a2), 1.0, 0.03);
  // rho_1 = a1 / (1 - a2)
  EXPECT_NEAR(oracle::lag1_autocorrelation(a2), 1.3 / 1.65, 0.02);
}

TEST(DefaultHistory, BinomialAndAssetReturnMeans) {
  const std::vector<double> psi(4000, -1.0);
  const double pit = oracle::pit(0.03, 0.15, -1.0);
  for (auto method : {DefaultMethod::kBinomial, DefaultMethod::kAssetReturn}) {
    const auto h = simulate_default_history(psi, Probability(0.03), RSquared(0.15), 500, 5, method);
    ASSERT_EQ(h.default_counts.size(), psi.size());
    EXPECT_NEAR(h.pit_pds[0], pit, 1e-14);
    const auto rates = h.default_rates();
    EXPECT_NEAR(oracle::sample_mean(rates), pit, 5.0 * std::sqrt(pit * (1 - pit) / 500 / 4000));
    const auto again = simulate_default_history(psi, Probability(0.03), RSquared(0.15), 500, 5, method);
    EXPECT_EQ(h.default_counts, again.default_counts);
  }
}

TEST(DoubleCrossing, AlternatingPathAndErrors) {
  std::vector<double> alt(20);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 ? -1.0 : 1.0;
  EXPECT_DOUBLE_EQ(double_crossing_period(alt), 2.0);
  EXPECT_THROW(static_cast<void>(double_crossing_period(std::vector<double>(5, 1.0))),
               InvalidArgument);
  EXPECT_THROW(static_cast<void>(double_crossing_period(std::vector<double>(50, 1.0))),
               DomainError);
}

TEST(DoubleCrossing, ArPeriods) {
  const auto a1 = simulate_ar1_path(validate_ar1(0.8), 200000, 6);
  EXPECT_NEAR(double_crossing_period(a1), 9.76, 0.3);
  const auto a2 = simulate_ar2_path(validate_ar2(1.3, -0.65), 200000, 6);
  EXPECT_NEAR(double_crossing_period(a2), 9.47, 0.3);
}

TEST(Figures, Shapes) {
  const auto f1 = replicate_figure({1, 3, 100, 0});
  EXPECT_EQ(f1.table.header, (std::vector<std::string>{"year", "psi"}));
  EXPECT_EQ(f1.table.rows.size(), 100u);
  const auto f3 = replicate_figure({3, 1, 100, 100});
  EXPECT_EQ(f3.table.header.size(), 6u);
  const auto f6 = replicate_figure({6, 2, 50, 30});
  EXPECT_EQ(f6.table.rows.size(), 80u);
  EXPECT_EQ(f6.table.header.back(), "forecast_simple");
  EXPECT_THROW(static_cast<void>(replicate_figure({8, 1, 100, 100})), InvalidArgument);
  const auto a = replicate_figure({4, 11, 100, 40});
  const auto b = replicate_figure({4, 11, 100, 40});
  EXPECT_EQ(a.table.rows, b.table.rows);
}

TEST(SimulatePaths, WhiteNoiseAndLongAr1) {
  const auto w = simulate_ar1_path(validate_ar1(0.0), 1'000'000, 15);
  EXPECT_NEAR(oracle::lag1_autocorrelation(w), 0.0, 0.005);
  const auto a = simulate_ar1_path(validate_ar1(0.8), 1'000'000, 16);
  EXPECT_NEAR(oracle::sample_mean(a), 0.0, 0.01);
  EXPECT_NEAR(oracle::sample_variance(a), 1.0, 0.02);
  EXPECT_NEAR(oracle::lag1_autocorrelation(a), 0.8, 0.02);
  const auto b = simulate_ar2_path(validate_ar2(1.3, -0.65), 1'000'000, 16);
  EXPECT_NEAR(oracle::sample_variance(b), 1.0, 0.03);
  EXPECT_NEAR(oracle::lag1_autocorrelation(b), 1.3 / 1.65, 0.02);
}

TEST(DefaultHistory, ZeroRhoIgnoresFactor) {
  const std::vector<double> psi(20000, -3.0);
  const auto h = simulate_default_history(psi, Probability(0.03), RSquared(0.0), 1000, 17,
                                          DefaultMethod::kBinomial);
  std::vector<double> counts(h.default_counts.begin(), h.default_counts.end());
  EXPECT_NEAR(oracle::sample_mean(counts), 30.0, 5.0 * std::sqrt(29.1 / 20000));
  EXPECT_NEAR(oracle::sample_variance(counts) / 29.1, 1.0, 0.05);
}

TEST(DefaultHistory, MethodsAreDistributionallyEquivalent) {
  const std::vector<double> psi(10000, -1.0);
  const auto a = simulate_default_history(psi, Probability(0.03), RSquared(0.15), 10000, 18,
                                          DefaultMethod::kBinomial).default_rates();
  const auto b = simulate_default_history(psi, Probability(0.03), RSquared(0.15), 10000, 19,
                                          DefaultMethod::kAssetReturn).default_rates();
  const double pooled = std::sqrt((oracle::sample_variance(a) + oracle::sample_variance(b)) / 10000);
  EXPECT_LT(std::abs(oracle::sample_mean(a) - oracle::sample_mean(b)), 4.0 * pooled);
  for (std::size_t t = 0; t < a.size(); ++t) ASSERT_LE(a[t], 1.0);
}

TEST(DefaultHistory, LargePortfolioRateMatchesPit) {
  const std::vector<double> psi{0.0};
  for (auto method : {DefaultMethod::kBinomial, DefaultMethod::kAssetReturn}) {
    const auto h = simulate_default_history(psi, Probability(0.03), RSquared(0.15), 1'000'000,
                                            20, method);
    EXPECT_NEAR(h.default_rates()[0], 0.02068, 5e-4);
  }
}

TEST(DefaultHistory, LongRunMeanRateIsTtc) {
  // batch means absorb the factor autocorrelation
  const auto psi = simulate_ar1_path(validate_ar1(0.8), 100'000, 21);
  const auto rates = simulate_default_history(psi, Probability(0.03), RSquared(0.15), 10'000,
                                              22, DefaultMethod::kBinomial).default_rates();
  std::vector<double> batches;
  for (std::size_t b = 0; b < 100; ++b)
    batches.push_back(oracle::sample_mean(
        std::vector<double>(rates.begin() + b * 1000, rates.begin() + (b + 1) * 1000)));
  const double stderr_ = std::sqrt(oracle::sample_variance(batches) / batches.size());
  EXPECT_NEAR(oracle::sample_mean(rates), 0.03, 3.0 * stderr_);
}
}  // namespace
