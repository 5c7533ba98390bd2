#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "armakit/arma.hpp"
#include "armakit/optimize.hpp"

namespace armakit {

/// Optimiser trace summary attached to a fit.
struct FitReport {
    int starts = 0;
    int restarts = 0;
    int evaluations = 0;
    /// Which start produced the optimum (0 = CSS estimate).
    int best_start = 0;
    double css_loglik = 0.0;
    double final_diameter = 0.0;
};

struct FittedModel {
    ModelOrder order;
    ArmaParameters params;
    double loglik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    Eigen::Index n_used = 0;
    bool converged = false;
    FitReport fit_report;
    /// Experimental: profile-likelihood standard errors of (ar, ma, mean).
    std::optional<Eigen::VectorXd> standard_errors;

    /// Number of estimated parameters, including the innovation variance.
    [[nodiscard]] int parameter_count() const {
        return order.p + order.q + (order.include_constant ? 1 : 0) + 1;
    }
};

/// Builds a FittedModel around known parameters (loglik and criteria are
/// evaluated on `series`). Useful for forecasting or diagnosing a fixed model.
[[nodiscard]] FittedModel make_fitted(const ModelOrder& order, const ArmaParameters& params, const TimeSeries& series);

class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, std::optional<FittedModel> best)
        : Error(what), best_(std::move(best)) {}
    [[nodiscard]] const std::optional<FittedModel>& best_so_far() const noexcept { return best_; }

private:
    std::optional<FittedModel> best_;
};

struct FitOptions {
    NelderMeadOptions simplex{0.1, 1e-8, 20000};
    /// Offset applied to every transformed coordinate to build extra starts.
    double perturbation = 0.5;
    int max_restarts = 6;
    bool compute_standard_errors = false;
};

/// Exact maximum likelihood for ARIMA(p, d, q). The innovation variance is
/// concentrated out; AR and MA coefficients are optimised through their
/// partial autocorrelations (tanh map) so every trial point is admissible.
[[nodiscard]] FittedModel fit(const TimeSeries& series, const ModelOrder& order, const FitOptions& options = {});

/// Conditional sum-of-squares estimate (pre-sample values zero). Used as the
/// first start of `fit`.
[[nodiscard]] ArmaParameters fit_css(const Eigen::Ref<const Eigen::VectorXd>& differenced, const ModelOrder& order,
                                     const NelderMeadOptions& simplex = {});

// Reparameterisation between coefficient vectors and unconstrained space.

/// AR coefficients from partial autocorrelations (|r_k| < 1 gives a stationary polynomial).
[[nodiscard]] Eigen::VectorXd pacf_to_ar(const Eigen::Ref<const Eigen::VectorXd>& pacf);
/// Inverse of pacf_to_ar; throws AdmissibilityError outside the stationary region.
[[nodiscard]] Eigen::VectorXd ar_to_pacf(const Eigen::Ref<const Eigen::VectorXd>& ar);

[[nodiscard]] Eigen::VectorXd constrain_ar(const Eigen::Ref<const Eigen::VectorXd>& u);
[[nodiscard]] Eigen::VectorXd unconstrain_ar(const Eigen::Ref<const Eigen::VectorXd>& ar);
[[nodiscard]] Eigen::VectorXd constrain_ma(const Eigen::Ref<const Eigen::VectorXd>& u);
[[nodiscard]] Eigen::VectorXd unconstrain_ma(const Eigen::Ref<const Eigen::VectorXd>& ma);

enum class Criterion { aic, bic };

struct AutoSelectOptions {
    int max_p = 1;
    int max_d = 1;
    int max_q = 1;
    /// Restrict the grid to one differencing order.
    std::optional<int> fixed_d;
    Criterion criterion = Criterion::aic;
    /// Constant policy for every candidate; empty uses make_order's default.
    std::optional<bool> include_constant;
    /// Candidates with an AR or MA root modulus below this are rejected as
    /// unit-root / non-invertible boundary fits.
    double root_guard = 1.01;
    bool parallel = true;
    FitOptions fit;
};

struct CandidateResult {
    ModelOrder order;
    std::optional<FittedModel> model;
    double criterion_value = 0.0;
    /// "ok", or why the candidate was excluded.
    std::string status;
    /// Rank among accepted candidates with the same d (1 = best); 0 if excluded.
    int rank_within_d = 0;
};

struct AutoSelectResult {
    FittedModel best;
    int selected_d = 0;
    /// Per-d ADF verdicts used to pick d when it was not fixed.
    std::vector<std::pair<int, bool>> d_stationary;
    /// Accepted candidates first (by d, then rank), then excluded ones.
    std::vector<CandidateResult> candidates;
};

/// Fits every (p, d, q) in the grid. Information criteria are only compared
/// on a common differencing level: d is the fixed value, or the smallest d
/// whose differenced series rejects a unit root (ADF, 5%), falling back to
/// max_d. Ties go to smaller p + q, then smaller q.
[[nodiscard]] AutoSelectResult auto_select(const TimeSeries& series, const AutoSelectOptions& options = {});

}  // namespace armakit
