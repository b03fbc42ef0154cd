#pragma once

namespace skg {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
/// series expansion for x < a + 1 and Lentz continued fraction otherwise.
/// Relative accuracy is well inside 1e-10 over the tested range.
double igamc(double a, double x);

}  // namespace skg
