#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace otslab {

/// Kinetic function f on (-1, infinity) with analytically coded derivatives
/// up to order four. Closed-form Theta (double primitive of f'(x)/x anchored
/// at 1) and its first primitive are attached when available; the generic
/// nested-quadrature path is used otherwise.
struct KineticFunction {
    std::string label;
    std::function<double(double)> f;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;
    std::function<double(double)> d4;
    std::function<double(double)> theta;       // may be empty
    std::function<double(double)> theta_prime; // may be empty

    /// Guard for Definition-style domain (-1, infinity).
    static void check_domain(double y) {
        if (y < -1.0 + 1e-9)
            throw std::domain_error("kinetic function: argument below the domain (-1, inf)");
    }
};

/// f(y) = y^r / r for r in [1, 2]; at r = 1 this is f(y) = y.
KineticFunction power_law(double r);

/// Polynomial kinetics f(y) = sum_m c_m y^m with exact derivatives and a
/// closed-form Theta.
KineticFunction polynomial_kinetic(const std::vector<double>& coeffs);

/// Parse "power:r=<real>" or "poly:<c0>,<c1>,..." (CLI kinetic spec).
KineticFunction parse_kinetic(const std::string& spec);

struct AdmissibilityReport {
    double a = 0.0, b = 0.0;
    double gamma_lower = 0.0; // min y / f'(y) over the sampled interval
    double gamma_upper = 0.0; // max y / f'(y)
    std::array<double, 4> derivative_sup_norms{};
    bool monotone = false;
    std::optional<double> uniform_lower_c1; // min f' over [0,b], when positive
};

/// Thrown when f' <= 0 is detected on the sampled interval; carries the
/// witness point.
struct NonAdmissibleError : std::runtime_error {
    double witness;
    NonAdmissibleError(const std::string& msg, double y) : std::runtime_error(msg), witness(y) {}
};

/// Dense-sample certification of Definition-style admissibility on
/// [max(a,1e-9), b]: gamma bounds for y/f'(y), monotonicity of f, sup norms
/// of the four derivatives, and the uniform lower bound on f' over [0,b]
/// when it is positive. Points are log-spaced near zero. samples >= 100.
AdmissibilityReport admissibility_report(const KineticFunction& f, double a, double b,
                                         int samples);

} // namespace otslab
