#pragma once

#include <functional>

namespace otslab {

/// 16-point Gauss-Legendre rule on [a, b].
double gauss16(const std::function<double(double)>& f, double a, double b);

/// Composite 16-point Gauss-Legendre with `cells` equal subintervals.
double gauss16_composite(const std::function<double(double)>& f, double a, double b, int cells);

/// Adaptive Simpson with absolute tolerance. Depth-capped; the cap is
/// generous enough for every integrand used here.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

} // namespace otslab
