#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "erp/capm.hpp"

using namespace erp;

namespace {

// Normal-equations oracle: solves (X'X) b = X'y with partial-pivot Gaussian
// elimination. X carries a leading column of ones.
std::vector<double> normal_equations(const std::vector<double>& y, const std::vector<std::vector<double>>& factors) {
    const std::size_t k = factors.size() + 1;
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    auto x = [&](std::size_t row, std::size_t col) { return col == 0 ? 1.0 : factors[col - 1][row]; };
    for (std::size_t t = 0; t < y.size(); ++t)
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) a[i][j] += x(t, i) * x(t, j);
            a[i][k] += x(t, i) * y[t];
        }
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
        std::swap(a[c], a[pivot]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
        }
    }
    std::vector<double> b(k);
    for (std::size_t i = 0; i < k; ++i) b[i] = a[i][k] / a[i][i];
    return b;
}

std::vector<double> normals(std::mt19937_64& rng, std::size_t n, double sigma) {
    std::normal_distribution<double> d(0.0, sigma);
    std::vector<double> out(n);
    for (auto& v : out) v = d(rng);
    return out;
}

ReturnSeries daily(const std::vector<double>& v) {
    std::vector<Observation> obs;
    for (std::size_t i = 0; i < v.size(); ++i)
        obs.push_back({make_date(2000, 1, 1) + std::chrono::days{static_cast<int>(i)}, v[i]});
    return ReturnSeries(std::move(obs), Period::daily);
}

}  // namespace

TEST(MarketModel, ExactLinearRelation) {
    const std::vector<double> m{0.01, -0.02, 0.03, 0.005, -0.011};
    std::vector<double> a;
    for (const double x : m) a.push_back(1.5 * x);
    const auto fit = fit_market_model(a, m);
    EXPECT_NEAR(fit.beta, 1.5, 1e-14);
    EXPECT_NEAR(fit.intercept, 0.0, 1e-16);
    EXPECT_NEAR(fit.residual_sigma, 0.0, 1e-16);
    EXPECT_EQ(fit.n_obs, 5u);

    EXPECT_NEAR(fit_market_model(m, m).beta, 1.0, 1e-15);
}

TEST(MarketModel, HandComputedSlope) {
    // mean x = 0.02, mean y = 0.10/3; Sxy = 0.0003, Sxx = 0.0002 -> beta 1.5
    // intercept = 0.10/3 - 1.5 * 0.02 = 0.00333...
    const auto fit = fit_market_model(std::vector{0.02, 0.03, 0.05}, std::vector{0.01, 0.02, 0.03});
    EXPECT_NEAR(fit.beta, 1.5, 1e-13);
    EXPECT_NEAR(fit.intercept, 0.1 / 3.0 - 0.03, 1e-15);
}

TEST(MarketModel, Errors) {
    try {
        (void)fit_market_model(std::vector{0.1, 0.2, 0.3}, std::vector{0.01, 0.01, 0.01});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::degenerate_regressor);
    }
    try {
        (void)fit_market_model(std::vector{0.1}, std::vector{0.01});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_few_observations);
    }
}

TEST(MarketModel, AlignsReturnSeriesByDate) {
    const auto market = daily({0.01, 0.02, 0.03, 0.04});
    std::vector<Observation> asset_obs;
    for (std::size_t i = 1; i < market.size(); ++i) asset_obs.push_back({market[i].date, 2.0 * market[i].value});
    const auto fit = fit_market_model(ReturnSeries(asset_obs, Period::daily), market);
    EXPECT_EQ(fit.n_obs, 3u);
    EXPECT_NEAR(fit.beta, 2.0, 1e-13);
}

TEST(MarketModel, InterceptShiftAndScaleProperties) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = normals(rng, 200, 0.02);
        auto a = normals(rng, 200, 0.01);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += 0.8 * m[i];
        const auto base = fit_market_model(a, m);

        std::vector<double> shifted(a), scaled(a);
        for (auto& x : shifted) x += 0.03;
        for (auto& x : scaled) x *= -2.5;
        const auto s = fit_market_model(shifted, m);
        EXPECT_NEAR(s.beta, base.beta, 1e-10);
        EXPECT_NEAR(s.intercept, base.intercept + 0.03, 1e-12);
        EXPECT_NEAR(s.residual_sigma, base.residual_sigma, 1e-12);

        const auto c = fit_market_model(scaled, m);
        EXPECT_NEAR(c.beta, -2.5 * base.beta, 1e-10);
        EXPECT_NEAR(c.intercept, -2.5 * base.intercept, 1e-12);
        EXPECT_NEAR(c.residual_sigma, 2.5 * base.residual_sigma, 1e-12);
    }
}

TEST(RiskDecomposition, Examples) {
    MarketModelFit fit;
    fit.beta = 1.2;
    fit.residual_sigma = 0.07;
    auto r = risk_decomposition(fit, 0.15);
    EXPECT_NEAR(r.systematic, 0.18, 1e-16);
    EXPECT_EQ(r.unsystematic, 0.07);

    fit.beta = 0.0;
    r = risk_decomposition(fit, 0.15);
    EXPECT_EQ(r.systematic, 0.0);
    EXPECT_EQ(r.unsystematic, 0.07);

    fit.residual_sigma = 0.0;
    EXPECT_EQ(risk_decomposition(fit, 0.2).unsystematic, 0.0);

    fit.beta = -0.5;
    EXPECT_NEAR(risk_decomposition(fit, 0.2).systematic, 0.1, 1e-16);

    EXPECT_THROW((void)risk_decomposition(fit, -0.01), Error);
}

TEST(Capm, ExpectedReturnExamples) {
    EXPECT_EQ(capm_expected_return(0.03, 1.0, 0.08), 0.08);
    EXPECT_EQ(capm_expected_return(0.03, 0.0, 0.08), 0.03);
    EXPECT_NEAR(capm_expected_return(0.03, 1.5, 0.08), 0.105, 1e-16);
}

TEST(Capm, ExpectedReturnIsAffineInBeta) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double rf = 0.05 * u(rng), em = 0.2 * u(rng), b1 = 2 * u(rng), b2 = 2 * u(rng), t = u(rng);
        const double mix = capm_expected_return(rf, t * b1 + (1 - t) * b2, em);
        EXPECT_NEAR(mix, t * capm_expected_return(rf, b1, em) + (1 - t) * capm_expected_return(rf, b2, em), 1e-14);
    }
}

TEST(Capm, PortfolioBeta) {
    EXPECT_DOUBLE_EQ(portfolio_beta(std::vector{0.5, 0.5}, std::vector{0.8, 1.2}), 1.0);
    EXPECT_EQ(portfolio_beta(std::vector{1.0}, std::vector{0.73}), 0.73);
    EXPECT_DOUBLE_EQ(portfolio_beta(std::vector{-0.5, 1.5}, std::vector{0.0, 1.0}), 1.5);
    try {
        (void)portfolio_beta(std::vector{0.5, 0.4}, std::vector{1.0, 1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::weights_not_normalized);
    }
    try {
        (void)portfolio_beta(std::vector{0.5, 0.5}, std::vector{1.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::length_mismatch);
    }
}

TEST(Capm, IdenticalBetasGiveThatBeta) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 9;
        std::vector<double> w(n);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) sum += (w[i] = u(rng));
        w.back() = 1.0 - sum;
        const double beta = u(rng);
        EXPECT_NEAR(portfolio_beta(w, std::vector<double>(n, beta)), beta, 1e-12);
    }
}

TEST(Capm, PortfolioRiskPremium) {
    EXPECT_EQ(portfolio_risk_premium(1.0, 0.05), 0.05);
    EXPECT_EQ(portfolio_risk_premium(0.0, 0.05), 0.0);
    EXPECT_EQ(portfolio_risk_premium(2.0, 0.04), 0.08);
}

TEST(Multifactor, Premium) {
    EXPECT_NEAR(multifactor_premium(std::vector{1.0, 2.0}, std::vector{0.01, 0.02}), 0.05, 1e-17);
    EXPECT_EQ(multifactor_premium(std::vector{1.0, 2.0}, std::vector{0.0, 0.0}), 0.0);
    EXPECT_EQ(multifactor_premium(std::vector{1.3}, std::vector{0.05}), portfolio_risk_premium(1.3, 0.05));
    EXPECT_THROW((void)multifactor_premium(std::vector{1.0}, std::vector{0.1, 0.2}), Error);
}

TEST(Multifactor, SingleFactorMatchesMarketModel) {
    std::mt19937_64 rng(6);
    const auto m = normals(rng, 300, 0.02);
    auto a = normals(rng, 300, 0.01);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += 1.3 * m[i] + 0.001;
    const auto mm = fit_market_model(a, m);
    const auto mf = fit_multifactor(a, {m}, {"market"});
    EXPECT_NEAR(mf.betas[0], mm.beta, 1e-12);
    EXPECT_NEAR(mf.intercept, mm.intercept, 1e-14);
    EXPECT_NEAR(mf.residual_sigma, mm.residual_sigma, 1e-14);
    EXPECT_EQ(mf.factor_labels, std::vector<std::string>{"market"});
}

TEST(Multifactor, ExactRelation) {
    std::mt19937_64 rng(7);
    const auto f1 = normals(rng, 50, 0.03), f2 = normals(rng, 50, 0.02);
    std::vector<double> a(50);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 2.0 * f1[i] + 3.0 * f2[i];
    const auto fit = fit_multifactor(a, {f1, f2});
    EXPECT_NEAR(fit.betas[0], 2.0, 1e-12);
    EXPECT_NEAR(fit.betas[1], 3.0, 1e-12);
    EXPECT_NEAR(fit.residual_sigma, 0.0, 1e-14);
    EXPECT_EQ(fit.factor_labels, (std::vector<std::string>{"F1", "F2"}));
}

TEST(Multifactor, NoisyRecoveryAgreesWithNormalEquations) {
    std::mt19937_64 rng(8);
    const std::size_t n = 2000;
    const auto f1 = normals(rng, n, 0.03), f2 = normals(rng, n, 0.02), eps = normals(rng, n, 0.01);
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = 1.0 * f1[i] + 0.5 * f2[i] + eps[i];

    const auto fit = fit_multifactor(a, {f1, f2});
    const auto oracle = normal_equations(a, {f1, f2});
    EXPECT_NEAR(fit.intercept, oracle[0], 1e-10);
    EXPECT_NEAR(fit.betas[0], oracle[1], 1e-9);
    EXPECT_NEAR(fit.betas[1], oracle[2], 1e-9);
    // sampling tolerance: se(beta_j) ~ sigma_eps / (sigma_fj sqrt(n))
    EXPECT_NEAR(fit.betas[0], 1.0, 4 * 0.01 / (0.03 * std::sqrt(double(n))));
    EXPECT_NEAR(fit.betas[1], 0.5, 4 * 0.01 / (0.02 * std::sqrt(double(n))));
    EXPECT_NEAR(fit.residual_sigma, 0.01, 0.001);
}

TEST(Multifactor, Errors) {
    const std::vector<double> f{0.1, 0.2, 0.3, 0.4};
    try {
        (void)fit_multifactor(std::vector{0.1, 0.2, 0.3, 0.5}, {f, f});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::rank_deficient);
    }
    try {
        (void)fit_multifactor(std::vector{0.1, 0.2}, {std::vector{0.1, 0.2}, std::vector{0.3, 0.1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::too_few_observations);
    }
}

TEST(Multifactor, AlignsFactorSeries) {
    std::mt19937_64 rng(10);
    const auto f1 = normals(rng, 40, 0.03), f2 = normals(rng, 40, 0.02);
    std::vector<double> a(40);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.7 * f1[i] - 0.2 * f2[i];
    std::vector<Observation> f2_obs;
    for (std::size_t i = 5; i < 40; ++i) f2_obs.push_back(daily(f2)[i]);
    const auto fit = fit_multifactor(daily(a), {{"mkt", daily(f1)}, {"size", ReturnSeries(f2_obs, Period::daily)}});
    EXPECT_EQ(fit.n_obs, 35u);
    EXPECT_NEAR(fit.betas[0], 0.7, 1e-12);
    EXPECT_NEAR(fit.betas[1], -0.2, 1e-12);
}

TEST(Diversification, ZeroResidualVolatility) {
    const auto r = simulate_diversification(10, 1.2, 0.2, 0.0, 500, 1);
    EXPECT_EQ(r.portfolio_unsystematic, 0.0);
    EXPECT_GT(r.portfolio_systematic, 0.0);
}

TEST(Diversification, SingleAssetKeepsResidualRisk) {
    const auto r = simulate_diversification(1, 1.0, 0.15, 0.30, 10000, 2);
    EXPECT_NEAR(r.portfolio_unsystematic, 0.30, 0.30 * 0.03);
    EXPECT_NEAR(r.portfolio_systematic, 0.15, 0.15 * 0.03);
}

TEST(Diversification, HundredAssets) {
    const auto r = simulate_diversification(100, 1.0, 0.15, 0.30, 10000, 3);
    EXPECT_NEAR(r.portfolio_unsystematic, 0.03, 0.003);
}

TEST(Diversification, DeterministicGivenSeed) {
    const auto a = simulate_diversification(16, 0.9, 0.1, 0.2, 1000, 77);
    const auto b = simulate_diversification(16, 0.9, 0.1, 0.2, 1000, 77);
    EXPECT_EQ(a.portfolio_systematic, b.portfolio_systematic);
    EXPECT_EQ(a.portfolio_unsystematic, b.portfolio_unsystematic);
    const auto c = simulate_diversification(16, 0.9, 0.1, 0.2, 1000, 78);
    EXPECT_NE(a.portfolio_unsystematic, c.portfolio_unsystematic);
}

TEST(Diversification, RegressionRecoversBeta) {
    for (const std::uint64_t seed : {11u, 12u, 13u}) {
        const auto paths = simulate_market_model_paths(20, 1.4, 0.15, 0.30, 5000, seed);
        const auto fit = fit_market_model(paths.portfolio, paths.market);
        EXPECT_LT(std::abs(fit.beta - 1.4), 3 * fit.beta_std_error) << "seed " << seed;
        EXPECT_NEAR(fit.intercept, 0.0, 3 * 0.30 / std::sqrt(20.0 * 5000));
    }
}

TEST(Diversification, ScaledUnsystematicRiskIsFlat) {
    const double base = simulate_diversification(1, 1.0, 0.15, 0.30, 10000, 21).portfolio_unsystematic;
    for (const int n : {4, 16, 64}) {
        const double scaled = simulate_diversification(n, 1.0, 0.15, 0.30, 10000, 21).portfolio_unsystematic *
                              std::sqrt(static_cast<double>(n));
        EXPECT_NEAR(scaled, base, 0.15 * base) << "n=" << n;
    }
}

TEST(Diversification, InvalidParameters) {
    EXPECT_THROW((void)simulate_diversification(0, 1.0, 0.1, 0.1, 100, 1), Error);
    EXPECT_THROW((void)simulate_diversification(5, 1.0, 0.1, 0.1, 29, 1), Error);
    EXPECT_THROW((void)simulate_diversification(5, 1.0, -0.1, 0.1, 100, 1), Error);
}
