#pragma once

#include <functional>
#include <string>

#include "otslab/field.hpp"
#include "otslab/kinetics.hpp"

namespace otslab {

/// Increasing C^1 weight for the generalized Fisher information, with the
/// lower bound Gamma'(z) >= lower_c / z recorded alongside.
struct GammaFunction {
    std::string label;
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double lower_c = 0.0;
};

/// Gamma(z) = log z; Gamma'(z) = 1/z meets the lower bound with c = 1.
GammaFunction gamma_log();

/// Gamma(z) = z (used by the spectral identity checks; c = 0).
GammaFunction gamma_identity();

/// S = int u log u dx. Throws std::domain_error unless min u > 0.
double shannon_entropy(const Field& u);

/// Generalized Fisher information, int Lambda^alpha(u) Gamma(u) dx, with the
/// fractional Laplacian applied spectrally. Requires min u > 0, alpha in (0,2].
double fisher_information(const Field& u, double alpha, const GammaFunction& gamma);

/// Symmetrized double-integral form: C(alpha/2,1) * double quadrature of
/// (u(x)-u(y)) (Gamma(u(x))-Gamma(u(y))) against the periodized kernel.
/// Every summand is nonnegative for increasing Gamma, so the result is >= 0
/// exactly. alpha in (0,2).
double fisher_symmetric_form(const Field& u, double alpha, const GammaFunction& gamma,
                             int lattice_cutoff);

/// Theta(s) = int_1^s int_1^xi f'(chi)/chi dchi dxi by nested adaptive
/// quadrature (absolute tolerance 1e-10). Theta(1) = 0, Theta'(1) = 0,
/// Theta >= 0. Throws std::domain_error for s <= 0.
double theta_profile(const KineticFunction& f, double s);

/// Theta evaluated through the kinetic function's closed form when present,
/// nested quadrature otherwise.
double theta_value(const KineticFunction& f, double s);
double theta_prime_value(const KineticFunction& f, double s);

/// F[u,q] = int Theta(u) dx + (1/2) int q^2 dx. Requires min u > 0.
double lyapunov(const Field& u, const Field& q, const KineticFunction& f);

/// ||u - <u>||_inf / ( |u|_{H^{alpha/2}}^{2/(1+alpha)} ||u||_{L1}^{1-2/(1+alpha)} )
/// for alpha in (1,2] and u >= 0 not identically zero. Scale invariant.
double sup_interpolation_residual(const Field& u, double alpha);

} // namespace otslab
