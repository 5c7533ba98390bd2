#pragma once

#include <Eigen/Dense>

namespace armakit {

struct OlsFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd residuals;
    double rss = 0.0;
    /// (X'X)^{-1}; multiply by rss / (n - k) for the coefficient covariance.
    Eigen::MatrixXd xtx_inverse;
    Eigen::Index n = 0;
    Eigen::Index k = 0;

    [[nodiscard]] double sigma2() const { return rss / static_cast<double>(n - k); }
    [[nodiscard]] double standard_error(Eigen::Index j) const;
    /// Gaussian log-likelihood with the ML variance rss / n.
    [[nodiscard]] double loglik() const;
    [[nodiscard]] double aic() const { return -2.0 * loglik() + 2.0 * static_cast<double>(k); }
};

/// Least squares via column-pivoted QR. Throws DegenerateInputError when the
/// design is rank deficient or has no residual degrees of freedom.
[[nodiscard]] OlsFit ols(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const Eigen::Ref<const Eigen::VectorXd>& y);

/// Solves P = T P T' + Q for P (T with spectral radius < 1) by vectorisation.
[[nodiscard]] Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& T,
                                                      const Eigen::Ref<const Eigen::MatrixXd>& Q);

/// Moduli of the roots of 1 + c_1 z + ... + c_k z^k, in ascending order.
/// Zero trailing coefficients drop the degree; roots at infinity are omitted.
[[nodiscard]] Eigen::VectorXd polynomial_root_moduli(const Eigen::Ref<const Eigen::VectorXd>& coeffs);

}  // namespace armakit
