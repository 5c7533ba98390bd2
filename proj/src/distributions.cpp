#include "armakit/distributions.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <numbers>

#include "armakit/errors.hpp"

namespace armakit {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw RangeError("normal quantile needs 0 < p < 1");
    return boost::math::quantile(boost::math::normal_distribution<double>{}, prob);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double chi_squared_sf(double x, double dof) {
    if (!(dof > 0.0)) throw RangeError("chi-squared needs positive degrees of freedom");
    if (x <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>{dof}, x));
}

}  // namespace armakit
