#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "erp/timeseries.hpp"

namespace erp {

/// Least-squares fit of R = intercept + beta * R_m + eps.
struct MarketModelFit {
    double beta = 0.0;
    double intercept = 0.0;
    double residual_sigma = 0.0;  // population convention (divide by n)
    std::size_t n_obs = 0;
    /// OLS standard error of beta with n - 2 degrees of freedom; NaN when n_obs == 2.
    double beta_std_error = std::numeric_limits<double>::quiet_NaN();
};

struct FactorModelFit {
    std::vector<double> betas;
    std::vector<std::string> factor_labels;
    double intercept = 0.0;
    double residual_sigma = 0.0;
    std::size_t n_obs = 0;
};

struct RiskDecomposition {
    double systematic = 0.0;
    double unsystematic = 0.0;
};

namespace detail {

inline double population_sigma(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (const double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

inline double root_mean_square(std::span<const double> xs) {
    double ss = 0.0;
    for (const double x : xs) ss += x * x;
    return xs.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace detail

inline MarketModelFit fit_market_model(std::span<const double> asset, std::span<const double> market) {
    require(asset.size() == market.size(), Errc::length_mismatch, "asset and market lengths differ");
    require(asset.size() >= 2, Errc::too_few_observations, "need at least two observations");
    const auto n = static_cast<double>(asset.size());

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < asset.size(); ++i) {
        mx += market[i];
        my += asset[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < asset.size(); ++i) {
        const double dx = market[i] - mx;
        sxx += dx * dx;
        sxy += dx * (asset[i] - my);
    }
    require(sxx > 0.0, Errc::degenerate_regressor, "market returns have zero variance");

    MarketModelFit fit;
    fit.beta = sxy / sxx;
    fit.intercept = my - fit.beta * mx;
    fit.n_obs = asset.size();

    std::vector<double> residuals(asset.size());
    for (std::size_t i = 0; i < asset.size(); ++i)
        residuals[i] = asset[i] - fit.intercept - fit.beta * market[i];
    // Residuals have zero mean by construction when an intercept is fitted.
    fit.residual_sigma = detail::root_mean_square(residuals);
    if (asset.size() > 2) {
        double sse = 0.0;
        for (const double e : residuals) sse += e * e;
        fit.beta_std_error = std::sqrt(sse / (n - 2.0) / sxx);
    }
    return fit;
}

inline MarketModelFit fit_market_model(const ReturnSeries& asset, const ReturnSeries& market) {
    std::vector<double> y, x;
    for (const auto& p : align(asset, market)) {
        y.push_back(p.a);
        x.push_back(p.b);
    }
    return fit_market_model(y, x);
}

/// systematic = |beta| * sigma_m, unsystematic = residual sigma.
inline RiskDecomposition risk_decomposition(const MarketModelFit& fit, double sigma_m) {
    require(sigma_m >= 0.0, Errc::negative_sigma, "market sigma must be non-negative");
    return {std::abs(fit.beta) * sigma_m, fit.residual_sigma};
}

/// E(R_p) = R_f + beta * (E(R_m) - R_f).
inline double capm_expected_return(double riskfree, double beta, double expected_market) {
    return riskfree + beta * (expected_market - riskfree);
}

/// r_p = beta_p * r_m.
inline double portfolio_risk_premium(double portfolio_beta, double market_premium) {
    return portfolio_beta * market_premium;
}

/// Weighted average of component betas. Negative weights (borrowing or
/// shorting) are allowed; the weights must sum to one.
inline double portfolio_beta(std::span<const double> weights, std::span<const double> betas) {
    require(weights.size() == betas.size(), Errc::length_mismatch, "weights and betas differ in length");
    require(!weights.empty(), Errc::length_mismatch, "portfolio has no components");
    double total = 0.0, beta = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        beta += weights[i] * betas[i];
    }
    require(std::abs(total - 1.0) <= 1e-9, Errc::weights_not_normalized,
            "weights sum to " + std::to_string(total));
    return beta;
}

/// r_s = sum_i beta_i * r_i.
inline double multifactor_premium(std::span<const double> betas, std::span<const double> factor_premia) {
    require(betas.size() == factor_premia.size(), Errc::length_mismatch,
            "betas and factor premia differ in length");
    double sum = 0.0;
    for (std::size_t i = 0; i < betas.size(); ++i) sum += betas[i] * factor_premia[i];
    return sum;
}

/// Multiple regression with intercept. `factors[j]` holds the j-th factor's
/// observations, aligned with `asset`.
inline FactorModelFit fit_multifactor(std::span<const double> asset,
                                      const std::vector<std::vector<double>>& factors,
                                      std::vector<std::string> labels = {}) {
    require(!factors.empty(), Errc::invalid_argument, "need at least one factor");
    const auto n_obs = static_cast<Eigen::Index>(asset.size());
    const auto n_factors = static_cast<Eigen::Index>(factors.size());
    for (const auto& f : factors)
        require(f.size() == asset.size(), Errc::length_mismatch, "factor length differs from asset");
    require(n_obs >= n_factors + 1, Errc::too_few_observations,
            std::to_string(n_obs) + " observations for " + std::to_string(n_factors) + " factors");
    if (labels.empty())
        for (Eigen::Index j = 0; j < n_factors; ++j) labels.push_back("F" + std::to_string(j + 1));
    require(static_cast<Eigen::Index>(labels.size()) == n_factors, Errc::length_mismatch,
            "one label per factor required");

    Eigen::MatrixXd design(n_obs, n_factors + 1);
    Eigen::VectorXd y(n_obs);
    for (Eigen::Index i = 0; i < n_obs; ++i) {
        design(i, 0) = 1.0;
        for (Eigen::Index j = 0; j < n_factors; ++j)
            design(i, j + 1) = factors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        y(i) = asset[static_cast<std::size_t>(i)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    require(qr.rank() == n_factors + 1, Errc::rank_deficient,
            "design matrix rank " + std::to_string(qr.rank()) + " < " + std::to_string(n_factors + 1));
    const Eigen::VectorXd coef = qr.solve(y);

    FactorModelFit fit;
    fit.intercept = coef(0);
    for (Eigen::Index j = 0; j < n_factors; ++j) fit.betas.push_back(coef(j + 1));
    fit.factor_labels = std::move(labels);
    fit.n_obs = asset.size();
    const Eigen::VectorXd residuals = y - design * coef;
    fit.residual_sigma = std::sqrt(residuals.squaredNorm() / static_cast<double>(n_obs));
    return fit;
}

struct Factor {
    std::string label;
    ReturnSeries returns;
};

/// Aligns asset and all factors on their common dates before fitting.
inline FactorModelFit fit_multifactor(const ReturnSeries& asset, const std::vector<Factor>& factors) {
    require(!factors.empty(), Errc::invalid_argument, "need at least one factor");
    std::vector<Observation> common(asset.begin(), asset.end());
    for (const auto& f : factors) {
        std::vector<Observation> next;
        for (const auto& p : align(DatedSeries(common), f.returns)) next.push_back({p.date, p.a});
        common = std::move(next);
    }
    std::vector<double> y;
    std::vector<std::vector<double>> xs(factors.size());
    const DatedSeries calendar(common);
    for (const auto& o : common) y.push_back(o.value);
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        for (const auto& p : align(calendar, factors[j].returns)) xs[j].push_back(p.b);
        labels.push_back(factors[j].label);
    }
    return fit_multifactor(y, xs, std::move(labels));
}

struct SimulatedPaths {
    std::vector<double> market;
    std::vector<double> portfolio;
};

struct DiversificationResult {
    double portfolio_systematic = 0.0;
    double portfolio_unsystematic = 0.0;
};

/// Draws market returns N(0, sigma_m) and independent zero-mean residuals
/// N(0, sigma_eps) for each asset, and forms the equal-weight portfolio
/// R_p = beta * R_m + mean_i(eps_i). Deterministic for a given seed.
inline SimulatedPaths simulate_market_model_paths(int n_assets, double beta, double sigma_m,
                                                  double sigma_eps, int n_periods, std::uint64_t seed) {
    require(n_assets >= 1, Errc::invalid_parameters, "n_assets must be >= 1");
    require(n_periods >= 30, Errc::invalid_parameters, "n_periods must be >= 30");
    require(sigma_m >= 0.0 && sigma_eps >= 0.0, Errc::invalid_parameters, "sigmas must be >= 0");
    require(std::isfinite(beta) && std::isfinite(sigma_m) && std::isfinite(sigma_eps),
            Errc::invalid_parameters, "parameters must be finite");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> standard_normal(0.0, 1.0);

    SimulatedPaths paths;
    paths.market.reserve(static_cast<std::size_t>(n_periods));
    paths.portfolio.reserve(static_cast<std::size_t>(n_periods));
    for (int t = 0; t < n_periods; ++t) {
        const double market = sigma_m * standard_normal(rng);
        double eps_sum = 0.0;
        for (int i = 0; i < n_assets; ++i) eps_sum += sigma_eps * standard_normal(rng);
        paths.market.push_back(market);
        paths.portfolio.push_back(beta * market + eps_sum / n_assets);
    }
    return paths;
}

inline DiversificationResult simulate_diversification(int n_assets, double beta, double sigma_m,
                                                       double sigma_eps, int n_periods, std::uint64_t seed) {
    const auto paths = simulate_market_model_paths(n_assets, beta, sigma_m, sigma_eps, n_periods, seed);
    std::vector<double> residual(paths.portfolio.size());
    for (std::size_t t = 0; t < residual.size(); ++t)
        residual[t] = paths.portfolio[t] - beta * paths.market[t];
    return {std::abs(beta) * detail::population_sigma(paths.market), detail::population_sigma(residual)};
}

}  // namespace erp
