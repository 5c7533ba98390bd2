#pragma once

namespace armakit {

[[nodiscard]] double normal_cdf(double x);
/// Standard normal quantile; prob must lie in (0, 1).
[[nodiscard]] double normal_quantile(double prob);
[[nodiscard]] double normal_pdf(double x);
/// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
[[nodiscard]] double chi_squared_sf(double x, double dof);

}  // namespace armakit
