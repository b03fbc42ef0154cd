#pragma once

namespace skg {

/// Bessel function of the first kind, order zero. Power series below
/// |x| = 12, Hankel asymptotic expansion above; absolute error < 1e-10
/// over the tested range (checked against 50-digit references).
double bessel_j0(double x);

}  // namespace skg
