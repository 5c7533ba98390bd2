#pragma once

#include <Eigen/Dense>

#include <functional>

namespace armakit {

struct NelderMeadOptions {
    /// Initial simplex edge along each coordinate.
    double initial_step = 0.1;
    /// Converged when the simplex diameter (max vertex distance from the best vertex) drops below this.
    double x_tolerance = 1e-8;
    int max_evaluations = 20000;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
    int iterations = 0;
    double diameter = 0.0;
    bool converged = false;
};

/// Minimises f with the standard reflection / expansion / contraction /
/// shrink simplex moves (coefficients 1, 2, 0.5, 0.5). Non-finite objective
/// values are treated as +infinity.
[[nodiscard]] NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

}  // namespace armakit
