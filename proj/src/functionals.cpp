#include "otslab/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "otslab/fraclap.hpp"
#include "otslab/quadrature.hpp"

namespace otslab {

namespace {

void require_positive(const Field& u, const char* who) {
    if (!(min_sample(u) > 0.0))
        throw std::domain_error(std::string(who) + ": field must be strictly positive");
}

} // namespace

GammaFunction gamma_log() {
    GammaFunction g;
    g.label = "log";
    g.value = [](double z) { return std::log(z); };
    g.derivative = [](double z) { return 1.0 / z; };
    g.lower_c = 1.0;
    return g;
}

GammaFunction gamma_identity() {
    GammaFunction g;
    g.label = "identity";
    g.value = [](double z) { return z; };
    g.derivative = [](double) { return 1.0; };
    g.lower_c = 0.0;
    return g;
}

double shannon_entropy(const Field& u) {
    require_positive(u, "shannon_entropy");
    double acc = 0.0;
    for (double v : u.samples) acc += v * std::log(v);
    return u.grid.spacing() * acc;
}

double fisher_information(const Field& u, double alpha, const GammaFunction& gamma) {
    require_positive(u, "fisher_information");
    const Field lap = fractional_laplacian_spectral(u, alpha);
    double acc = 0.0;
    for (int j = 0; j < u.size(); ++j) acc += lap.samples[j] * gamma.value(u.samples[j]);
    return u.grid.spacing() * acc;
}

double fisher_symmetric_form(const Field& u, double alpha, const GammaFunction& gamma,
                             int lattice_cutoff) {
    require_positive(u, "fisher_symmetric_form");
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("fisher_symmetric_form: alpha must lie in (0,2)");
    if (lattice_cutoff < 1)
        throw std::invalid_argument("fisher_symmetric_form: lattice cutoff must be >= 1");
    const int n = u.grid.n;
    const double h = u.grid.spacing();
    const std::vector<double> W = periodized_kernel(n, alpha, lattice_cutoff);
    std::vector<double> gu(n);
    for (int j = 0; j < n; ++j) gu[j] = gamma.value(u.samples[j]);

    double total = 0.0;
    for (int m = 1; m < n; ++m) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) {
            int i = j - m;
            if (i < 0) i += n;
            d += (u.samples[j] - u.samples[i]) * (gu[j] - gu[i]);
        }
        total += W[m] * d; // each summand >= 0 for increasing Gamma
    }
    total *= h * h;

    // Near-diagonal curvature model u'(x)^2 Gamma'(u(x)) eta^2; the moment
    // deficit is positive, so the correction keeps the sum nonnegative.
    const double deficit = singular_moment_deficit(n, 1.0 - alpha);
    double g = 0.0;
    for (int j = 0; j < n; ++j) {
        const double up =
            (u.samples[(j + 1) % n] - u.samples[(j + n - 1) % n]) / (2.0 * h);
        g += up * up * gamma.derivative(u.samples[j]);
    }
    total += h * g * deficit;
    return normalization_constant(0.5 * alpha) * total;
}

double theta_profile(const KineticFunction& f, double s) {
    if (!(s > 0.0)) throw std::domain_error("theta_profile: s must be > 0");
    auto theta_prime = [&f](double xi) {
        if (xi == 1.0) return 0.0;
        auto integrand = [&f](double chi) { return f.d1(chi) / chi; };
        return xi > 1.0 ? adaptive_simpson(integrand, 1.0, xi, 1e-12)
                        : -adaptive_simpson(integrand, xi, 1.0, 1e-12);
    };
    if (s == 1.0) return 0.0;
    return s > 1.0 ? adaptive_simpson(theta_prime, 1.0, s, 1e-10)
                   : -adaptive_simpson(theta_prime, s, 1.0, 1e-10);
}

double theta_value(const KineticFunction& f, double s) {
    if (!(s > 0.0)) throw std::domain_error("theta: s must be > 0");
    return f.theta ? f.theta(s) : theta_profile(f, s);
}

double theta_prime_value(const KineticFunction& f, double s) {
    if (!(s > 0.0)) throw std::domain_error("theta': s must be > 0");
    if (f.theta_prime) return f.theta_prime(s);
    auto integrand = [&f](double chi) { return f.d1(chi) / chi; };
    if (s == 1.0) return 0.0;
    return s > 1.0 ? adaptive_simpson(integrand, 1.0, s, 1e-12)
                   : -adaptive_simpson(integrand, s, 1.0, 1e-12);
}

double lyapunov(const Field& u, const Field& q, const KineticFunction& f) {
    require_positive(u, "lyapunov");
    double acc = 0.0;
    for (double v : u.samples) acc += theta_value(f, v);
    const double l2q = l2_norm(q);
    return u.grid.spacing() * acc + 0.5 * l2q * l2q;
}

double sup_interpolation_residual(const Field& u, double alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("sup interpolation: alpha must lie in (1,2]");
    if (min_sample(u) < 0.0)
        throw std::domain_error("sup interpolation: field must be nonnegative");
    const double l1 = l1_norm(u);
    if (l1 == 0.0) throw std::domain_error("sup interpolation: undefined ratio on zero field");
    const double ubar = mean(u);
    double num = 0.0;
    for (double v : u.samples) num = std::max(num, std::abs(v - ubar));
    if (num == 0.0) return 0.0; // constant field
    const double hs = hs_seminorm(u, 0.5 * alpha);
    const double e = 2.0 / (1.0 + alpha);
    return num / (std::pow(hs, e) * std::pow(l1, 1.0 - e));
}

} // namespace otslab
