#include "otslab/ineqlab.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "otslab/fraclap.hpp"
#include "otslab/rng.hpp"
#include "otslab/sampler.hpp"

namespace otslab {

namespace {

// Per-sample protocol shared by all checks: LHS, RHS-without-constant and a
// sign value whose negativity (beyond the scaled tolerance) is a violation.
struct SampleOutcome {
    double lhs = 0.0;
    double rhs = 0.0;
    double sign_value = 0.0;
    double sign_scale = 1.0;
};

InequalityReport
run_protocol(InequalityReport rep, int n_samples, std::uint64_t seed, const LabConfig& lab,
             const std::function<SampleOutcome(const Field&)>& evaluate) {
    if (n_samples < 1) throw std::invalid_argument("inequality check: n_samples must be >= 1");
    rep.seed = seed;
    rep.sample_count = n_samples;
    rep.sampler = lab;
    rep.ratios.reserve(n_samples);
    Grid grid(lab.n);
    for (int i = 0; i < n_samples; ++i) {
        const std::uint64_t s_i = derive_seed(seed, static_cast<std::uint64_t>(i));
        const Field u = random_smooth_field(grid, s_i, lab.decay, lab.floor_value, lab.modes);
        const SampleOutcome out = evaluate(u);
        if (out.sign_value < -1e-10 * out.sign_scale) ++rep.violations;
        double ratio;
        if (out.lhs == 0.0 && out.rhs <= 0.0) {
            ratio = 0.0; // both sides vanish (constant-field convention)
        } else if (out.rhs <= 0.0) {
            ratio = std::numeric_limits<double>::infinity();
            ++rep.violations;
        } else {
            ratio = out.lhs / out.rhs;
        }
        rep.ratios.push_back(ratio);
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.witness = SampleWitness{i, s_i};
        }
    }
    return rep;
}

double fisher_scale(const Field& u, double alpha) {
    const double hs = hs_seminorm(u, 0.5 * alpha);
    return std::max(1.0, hs * hs);
}

} // namespace

InequalityReport check_lemma1_hs(double alpha, const GammaFunction& gamma, int n_samples,
                                 std::uint64_t seed, const LabConfig& lab) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("lemma 1 (hs): alpha must lie in (0,2)");
    InequalityReport rep;
    rep.inequality_id = "lemma1-hs";
    rep.alpha = alpha;
    rep.gamma_label = gamma.label;
    rep.gamma_lower_c = gamma.lower_c;
    return run_protocol(std::move(rep), n_samples, seed, lab, [&](const Field& u) {
        SampleOutcome out;
        const double hs = hs_seminorm(u, 0.5 * alpha);
        const double fisher = fisher_information(u, alpha, gamma);
        out.lhs = hs * hs;
        out.rhs = linf_norm(u) * fisher;
        out.sign_value = fisher;
        out.sign_scale = fisher_scale(u, alpha);
        return out;
    });
}

InequalityReport check_lemma1_w(double alpha, double delta, const GammaFunction& gamma,
                                int n_samples, std::uint64_t seed, const LabConfig& lab) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("lemma 1 (w): alpha must lie in (0,2)");
    if (!(delta > 0.0 && delta < 0.5 * alpha))
        throw std::invalid_argument("lemma 1 (w): delta must lie in (0, alpha/2)");
    InequalityReport rep;
    rep.inequality_id = "lemma1-w";
    rep.alpha = alpha;
    rep.delta = delta;
    rep.gamma_label = gamma.label;
    rep.gamma_lower_c = gamma.lower_c;
    return run_protocol(std::move(rep), n_samples, seed, lab, [&](const Field& u) {
        SampleOutcome out;
        const double sem = slobodeckij_seminorm(u, 0.5 * alpha - delta, 1.0, lab.lattice_cutoff);
        const double fisher = fisher_information(u, alpha, gamma);
        out.lhs = sem * sem;
        out.rhs = l1_norm(u) * fisher;
        out.sign_value = fisher;
        out.sign_scale = fisher_scale(u, alpha);
        return out;
    });
}

InequalityReport check_lemma2_torus(double alpha, const GammaFunction& gamma, int n_samples,
                                    std::uint64_t seed, const LabConfig& lab) {
    if (!(alpha > 1.0 && alpha <= 2.0))
        throw std::invalid_argument("lemma 2: alpha must lie in (1,2]");
    InequalityReport rep;
    rep.inequality_id = "lemma2-torus";
    rep.alpha = alpha;
    rep.gamma_label = gamma.label;
    rep.gamma_lower_c = gamma.lower_c;
    return run_protocol(std::move(rep), n_samples, seed, lab, [&](const Field& u) {
        SampleOutcome out;
        const double hs = hs_seminorm(u, 0.5 * alpha);
        const double fisher = fisher_information(u, alpha, gamma);
        const double l1 = l1_norm(u);
        const double e = 2.0 / (1.0 + alpha);
        out.lhs = std::pow(hs, 2.0 - e);
        out.rhs = std::pow(l1, 1.0 - e) * (fisher + l1);
        out.sign_value = fisher;
        out.sign_scale = fisher_scale(u, alpha);
        return out;
    });
}

InequalityReport check_lemmaB2(double alpha, double s_exp, double delta, int n_samples,
                               std::uint64_t seed, const LabConfig& lab) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::invalid_argument("lemma B2: alpha must lie in (0,2)");
    if (!(s_exp > 0.0 && s_exp <= 1.0))
        throw std::invalid_argument("lemma B2: s must lie in (0,1]");
    const double s_max = alpha / (2.0 + 2.0 * s_exp);
    if (!(delta > 0.0 && delta < s_max))
        throw std::invalid_argument("lemma B2: delta must lie in (0, alpha/(2+2s))");
    InequalityReport rep;
    rep.inequality_id = "lemmaB2";
    rep.alpha = alpha;
    rep.delta = delta;
    rep.s_exp = s_exp;
    return run_protocol(std::move(rep), n_samples, seed, lab, [&](const Field& u) {
        SampleOutcome out;
        const Field lap = fractional_laplacian_spectral(u, alpha);
        double integral = 0.0, lp = 0.0;
        for (int j = 0; j < u.size(); ++j) {
            integral += lap.samples[j] * std::pow(u.samples[j], s_exp);
            lp += std::pow(u.samples[j], 1.0 + s_exp);
        }
        integral *= u.grid.spacing();
        lp *= u.grid.spacing();
        const double p = 1.0 + s_exp;
        const double sem = slobodeckij_seminorm(u, s_max - delta, p, lab.lattice_cutoff);
        out.lhs = std::pow(sem, 2.0 + 2.0 * s_exp);
        out.rhs = lp * integral;
        out.sign_value = integral;
        out.sign_scale = fisher_scale(u, alpha);
        return out;
    });
}

double estimate_constant(const InequalityReport& report) {
    if (report.ratios.empty())
        throw std::invalid_argument("estimate_constant: empty report");
    return report.max_ratio;
}

} // namespace otslab
