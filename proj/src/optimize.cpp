#include "armakit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace armakit {

namespace {

double diameter(const std::vector<Eigen::VectorXd>& simplex, std::size_t best) {
    double d = 0.0;
    for (const auto& v : simplex) d = std::max(d, (v - simplex[best]).lpNorm<Eigen::Infinity>());
    return d;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& start,
                             const NelderMeadOptions& options) {
    const auto dim = static_cast<std::size_t>(start.size());
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    NelderMeadResult res;
    if (dim == 0) {
        res.x = start;
        res.value = eval(start);
        res.evaluations = evals;
        res.converged = true;
        return res;
    }

    std::vector<Eigen::VectorXd> simplex(dim + 1, start);
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1](static_cast<Eigen::Index>(i)) += options.initial_step;
    for (std::size_t i = 0; i <= dim; ++i) fv[i] = eval(simplex[i]);

    std::vector<std::size_t> idx(dim + 1);
    int iter = 0;
    while (true) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = idx.front();
        const std::size_t worst = idx.back();
        const std::size_t second = idx[dim - 1];

        res.diameter = diameter(simplex, best);
        if (res.diameter < options.x_tolerance) {
            res.converged = true;
            break;
        }
        if (evals >= options.max_evaluations) break;
        ++iter;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(start.size());
        for (std::size_t i = 0; i <= dim; ++i)
            if (i != worst) centroid += simplex[i];
        centroid /= static_cast<double>(dim);

        const Eigen::VectorXd xr = centroid + (centroid - simplex[worst]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - simplex[worst]);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        // Contraction: outside if the reflected point improved on the worst.
        const bool outside = fr < fv[worst];
        const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                           : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[worst])) {
            simplex[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
            fv[i] = eval(simplex[i]);
        }
    }

    const auto best_it = std::min_element(fv.begin(), fv.end());
    const auto b = static_cast<std::size_t>(best_it - fv.begin());
    res.x = simplex[b];
    res.value = fv[b];
    res.evaluations = evals;
    res.iterations = iter;
    return res;
}

}  // namespace armakit
