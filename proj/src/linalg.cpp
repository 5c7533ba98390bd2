#include "armakit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "armakit/errors.hpp"

namespace armakit {

double OlsFit::standard_error(Eigen::Index j) const { return std::sqrt(sigma2() * xtx_inverse(j, j)); }

double OlsFit::loglik() const {
    const auto nd = static_cast<double>(n);
    return -0.5 * nd * (std::log(2.0 * std::numbers::pi) + std::log(rss / nd) + 1.0);
}

OlsFit ols(const Eigen::Ref<const Eigen::MatrixXd>& X, const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (X.rows() != y.size()) throw DimensionError("ols: design and response differ in rows");
    if (X.rows() <= X.cols()) throw DegenerateInputError("ols: no residual degrees of freedom");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols()) throw DegenerateInputError("ols: singular regression matrix");

    OlsFit fit;
    fit.n = X.rows();
    fit.k = X.cols();
    fit.coef = qr.solve(y);
    fit.residuals = y - X * fit.coef;
    fit.rss = fit.residuals.squaredNorm();

    // (X'X)^{-1} = P R^{-1} R^{-T} P'
    const auto k = X.cols();
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd inner = Rinv * Rinv.transpose();
    const auto& perm = qr.colsPermutation();
    fit.xtx_inverse = perm * inner * perm.transpose();
    return fit;
}

Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::Ref<const Eigen::MatrixXd>& T,
                                        const Eigen::Ref<const Eigen::MatrixXd>& Q) {
    const auto r = T.rows();
    // vec(P) = (I - T kron T)^{-1} vec(Q), column-major vec.
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(r * r, r * r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
            A.block(i * r, j * r, r, r) -= T(i, j) * T;
    const Eigen::VectorXd qv = Eigen::MatrixXd(Q).reshaped();
    Eigen::VectorXd p = A.partialPivLu().solve(qv);
    Eigen::MatrixXd P = p.reshaped(r, r);
    return 0.5 * (P + P.transpose());
}

Eigen::VectorXd polynomial_root_moduli(const Eigen::Ref<const Eigen::VectorXd>& coeffs) {
    Eigen::Index k = coeffs.size();
    while (k > 0 && coeffs(k - 1) == 0.0) --k;
    if (k == 0) return {};
    // Roots of 1 + c1 z + ... + ck z^k are reciprocals of the eigenvalues of
    // the companion matrix with first row (-c1, ..., -ck).
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k, k);
    C.row(0) = -coeffs.head(k).transpose();
    if (k > 1) C.bottomLeftCorner(k - 1, k - 1).setIdentity();
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    Eigen::VectorXd moduli(k);
    Eigen::Index m = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        const double a = std::abs(es.eigenvalues()(i));
        if (a > 0.0) moduli(m++) = 1.0 / a;
    }
    moduli.conservativeResize(m);
    std::sort(moduli.data(), moduli.data() + m);
    return moduli;
}

}  // namespace armakit
