#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otslab/field.hpp"
#include "otslab/functionals.hpp"

namespace otslab {

/// Sampler settings for the inequality laboratory. "Smooth given function"
/// is instantiated as band-limited random fields with algebraic spectral
/// decay and a strictly positive floor.
struct LabConfig {
    int n = 128;
    int modes = 20;
    double decay = 2.0;
    double floor_value = 0.1;
    int lattice_cutoff = 64;
};

struct SampleWitness {
    int index = -1;
    std::uint64_t sample_seed = 0;
};

/// Sampled left/right-hand sides for one inequality: per-sample ratios of
/// LHS to RHS-without-constant, their max (the empirical constant), the
/// witness sample, and the count of sign-condition violations.
struct InequalityReport {
    std::string inequality_id;
    double alpha = 0.0;
    double delta = 0.0;
    double s_exp = 0.0;
    std::string gamma_label;
    double gamma_lower_c = 0.0;
    std::uint64_t seed = 0;
    int sample_count = 0;
    LabConfig sampler;
    std::vector<double> ratios;
    double max_ratio = 0.0;
    SampleWitness witness;
    int violations = 0;
};

/// |u|^2_{H^{alpha/2}} <= C ||u||_inf int Lambda^alpha u Gamma(u), 0<alpha<2.
InequalityReport check_lemma1_hs(double alpha, const GammaFunction& gamma, int n_samples,
                                 std::uint64_t seed, const LabConfig& lab = {});

/// |u|^2_{W^{alpha/2-delta,1}} <= C ||u||_L1 int Lambda^alpha u Gamma(u),
/// 0 < delta < alpha/2.
InequalityReport check_lemma1_w(double alpha, double delta, const GammaFunction& gamma,
                                int n_samples, std::uint64_t seed, const LabConfig& lab = {});

/// |u|^{2-2/(1+alpha)}_{H^{alpha/2}} <= C ||u||_{L1}^{1-2/(1+alpha)}
/// (int Lambda^alpha u Gamma(u) + ||u||_L1), 1 < alpha <= 2.
InequalityReport check_lemma2_torus(double alpha, const GammaFunction& gamma, int n_samples,
                                    std::uint64_t seed, const LabConfig& lab = {});

/// Two-part check: 0 <= int Lambda^alpha u u^s, and
/// |u|^{2+2s}_{W^{alpha/(2+2s)-delta,1+s}} <= C ||u||^{1+s}_{L^{1+s}}
/// int Lambda^alpha u u^s, for 0 < alpha < 2, 0 < s <= 1,
/// 0 < delta < alpha/(2+2s).
InequalityReport check_lemmaB2(double alpha, double s_exp, double delta, int n_samples,
                               std::uint64_t seed, const LabConfig& lab = {});

/// Empirical lower bound on the inequality constant: the running max ratio.
/// Throws std::invalid_argument on an empty report.
double estimate_constant(const InequalityReport& report);

} // namespace otslab
