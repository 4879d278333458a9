#include "otslab/kinetics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace otslab {

namespace {

double pow_or_nan(double y, double e) {
    // std::pow(negative, fractional) is NaN, which is what the blow-up
    // detector expects to see for states that left the physical range.
    return std::pow(y, e);
}

std::string format_poly_label(const std::vector<double>& c) {
    std::ostringstream os;
    os << "poly:";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    return os.str();
}

} // namespace

KineticFunction power_law(double r) {
    if (!(r >= 1.0 && r <= 2.0))
        throw std::invalid_argument("power_law: r must lie in [1,2]");
    KineticFunction k;
    k.label = "power:r=" + std::to_string(r);
    if (r == 1.0) {
        k.f = [](double y) { KineticFunction::check_domain(y); return y; };
        k.d1 = [](double y) { KineticFunction::check_domain(y); return 1.0; };
        k.d2 = [](double) { return 0.0; };
        k.d3 = [](double) { return 0.0; };
        k.d4 = [](double) { return 0.0; };
        k.theta = [](double s) { return s * std::log(s) - s + 1.0; };
        k.theta_prime = [](double s) { return std::log(s); };
        return k;
    }
    k.f = [r](double y) { KineticFunction::check_domain(y); return pow_or_nan(y, r) / r; };
    k.d1 = [r](double y) { KineticFunction::check_domain(y); return pow_or_nan(y, r - 1.0); };
    k.d2 = [r](double y) { return (r - 1.0) * pow_or_nan(y, r - 2.0); };
    k.d3 = [r](double y) { return (r - 1.0) * (r - 2.0) * pow_or_nan(y, r - 3.0); };
    k.d4 = [r](double y) { return (r - 1.0) * (r - 2.0) * (r - 3.0) * pow_or_nan(y, r - 4.0); };
    k.theta = [r](double s) {
        // tangent form: exactly zero at the anchor s = 1
        return ((pow_or_nan(s, r) - 1.0) - r * (s - 1.0)) / (r * (r - 1.0));
    };
    k.theta_prime = [r](double s) { return (pow_or_nan(s, r - 1.0) - 1.0) / (r - 1.0); };
    return k;
}

KineticFunction polynomial_kinetic(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial kinetic: no coefficients");
    KineticFunction k;
    k.label = format_poly_label(coeffs);
    auto make_deriv = [coeffs](int order) {
        // Coefficients of the order-th derivative.
        std::vector<double> d;
        for (std::size_t m = static_cast<std::size_t>(order); m < coeffs.size(); ++m) {
            double fac = 1.0;
            for (int j = 0; j < order; ++j) fac *= static_cast<double>(m - j);
            d.push_back(fac * coeffs[m]);
        }
        return [d](double y) {
            KineticFunction::check_domain(y);
            double acc = 0.0;
            for (auto it = d.rbegin(); it != d.rend(); ++it) acc = acc * y + *it;
            return acc;
        };
    };
    k.f = make_deriv(0);
    k.d1 = make_deriv(1);
    k.d2 = make_deriv(2);
    k.d3 = make_deriv(3);
    k.d4 = make_deriv(4);
    k.theta = [coeffs](double s) {
        double acc = coeffs.size() > 1 ? coeffs[1] * (s * std::log(s) - s + 1.0) : 0.0;
        for (std::size_t m = 2; m < coeffs.size(); ++m) {
            const double md = static_cast<double>(m);
            acc += coeffs[m] * ((std::pow(s, md) - 1.0) - md * (s - 1.0)) / (md - 1.0);
        }
        return acc;
    };
    k.theta_prime = [coeffs](double s) {
        double acc = coeffs.size() > 1 ? coeffs[1] * std::log(s) : 0.0;
        for (std::size_t m = 2; m < coeffs.size(); ++m) {
            const double md = static_cast<double>(m);
            acc += md * coeffs[m] * (std::pow(s, md - 1.0) - 1.0) / (md - 1.0);
        }
        return acc;
    };
    return k;
}

KineticFunction parse_kinetic(const std::string& spec) {
    if (spec.rfind("power:r=", 0) == 0) {
        std::size_t pos = 0;
        const std::string arg = spec.substr(8);
        double r;
        try {
            r = std::stod(arg, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("kinetic spec: cannot parse r in '" + spec + "'");
        }
        if (pos != arg.size())
            throw std::invalid_argument("kinetic spec: trailing characters in '" + spec + "'");
        return power_law(r);
    }
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::stringstream ss(spec.substr(5));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(tok, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("kinetic spec: bad coefficient '" + tok + "'");
            }
            if (pos != tok.size())
                throw std::invalid_argument("kinetic spec: bad coefficient '" + tok + "'");
            coeffs.push_back(v);
        }
        if (coeffs.empty()) throw std::invalid_argument("kinetic spec: empty coefficient list");
        return polynomial_kinetic(coeffs);
    }
    throw std::invalid_argument("kinetic spec: expected 'power:r=<real>' or 'poly:<c0>,<c1>,...'");
}

AdmissibilityReport admissibility_report(const KineticFunction& f, double a, double b,
                                         int samples) {
    if (samples < 100) throw std::invalid_argument("admissibility: samples must be >= 100");
    if (!(b > a) || a < 0.0) throw std::invalid_argument("admissibility: need 0 <= a < b");
    const double lo = std::max(a, 1e-9);
    AdmissibilityReport rep;
    rep.a = a;
    rep.b = b;
    rep.gamma_lower = std::numeric_limits<double>::infinity();
    rep.gamma_upper = 0.0;
    rep.monotone = true;

    const double ratio = b / lo;
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const double y = lo * std::pow(ratio, t); // log-spaced, dense near 0
        const double fp = f.d1(y);
        if (!(fp > 0.0))
            throw NonAdmissibleError("admissibility: f' <= 0 at y = " + std::to_string(y), y);
        const double g = y / fp;
        rep.gamma_lower = std::min(rep.gamma_lower, g);
        rep.gamma_upper = std::max(rep.gamma_upper, g);
        rep.derivative_sup_norms[0] = std::max(rep.derivative_sup_norms[0], std::abs(fp));
        rep.derivative_sup_norms[1] = std::max(rep.derivative_sup_norms[1], std::abs(f.d2(y)));
        rep.derivative_sup_norms[2] = std::max(rep.derivative_sup_norms[2], std::abs(f.d3(y)));
        rep.derivative_sup_norms[3] = std::max(rep.derivative_sup_norms[3], std::abs(f.d4(y)));
    }

    // Uniform lower bound of f' over [0, b] (linear sampling; the infimum of
    // the power-law family sits at y = 0).
    double c1 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double y = b * static_cast<double>(i) / (samples - 1);
        c1 = std::min(c1, f.d1(y));
    }
    if (c1 > 0.0) rep.uniform_lower_c1 = c1;
    return rep;
}

} // namespace otslab
