#include "otslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <fftw3.h>

namespace otslab {

namespace {

// FFTW's planner is not thread safe; executing a plan on fresh buffers is.
// Plans are created once per size with FFTW_ESTIMATE (deterministic) and
// FFTW_UNALIGNED so they can run on any caller buffer.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

struct PlanCache {
    std::map<int, PlanPair> plans;
    std::mutex mtx;

    ~PlanCache() {
        for (auto& [n, p] : plans) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
        }
        fftw_cleanup();
    }
};

PlanPair& plans_for(int n) {
    static PlanCache cache;
    std::lock_guard<std::mutex> lock(cache.mtx);
    auto it = cache.plans.find(n);
    if (it != cache.plans.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()),
                             FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()),
                             FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.plans.emplace(n, p).first->second;
}

} // namespace

double Spectrum::hermitian_defect() const {
    const int n = grid.n;
    double peak = 0.0;
    for (const auto& c : coeffs) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return 0.0;
    double defect = std::abs(coeffs[0].imag());
    defect = std::max(defect, std::abs(coeffs[n / 2].imag()));
    for (int m = 1; m < n / 2; ++m)
        defect = std::max(defect, std::abs(coeffs[m] - std::conj(coeffs[n - m])));
    return defect / peak;
}

Spectrum forward_transform(const Field& f) {
    const int n = f.grid.n;
    Spectrum out(f.grid);
    std::vector<std::complex<double>> in(n);
    for (int j = 0; j < n; ++j) in[j] = f.samples[j];
    fftw_execute_dft(plans_for(n).fwd,
                     reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.coeffs.data()));
    const double inv = 1.0 / n;
    for (auto& c : out.coeffs) c *= inv;
    return out;
}

Field inverse_transform(const Spectrum& s) {
    if (s.hermitian_defect() > 1e-10)
        throw std::invalid_argument("inverse_transform: malformed spectrum "
                                    "(Hermitian symmetry violated beyond 1e-10)");
    const int n = s.grid.n;
    std::vector<std::complex<double>> out(n);
    std::vector<std::complex<double>> in(s.coeffs);
    fftw_execute_dft(plans_for(n).bwd,
                     reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    Field f(s.grid);
    for (int j = 0; j < n; ++j) f.samples[j] = out[j].real();
    return f;
}

Spectrum derivative(const Spectrum& s) {
    Spectrum out(s.grid);
    const int n = s.grid.n;
    for (int m = 0; m < n; ++m) {
        const int k = out.mode(m);
        if (k == n / 2) { out.coeffs[m] = 0.0; continue; }
        out.coeffs[m] = std::complex<double>(0.0, k) * s.coeffs[m];
    }
    return out;
}

Field derivative(const Field& f) { return inverse_transform(derivative(forward_transform(f))); }

double mean(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += v;
    return acc / f.grid.n;
}

void dealias(Spectrum& s) {
    const int n = s.grid.n;
    const double cutoff = n / 3.0;
    for (int m = 0; m < n; ++m)
        if (std::abs(s.mode(m)) > cutoff) s.coeffs[m] = 0.0;
}

Field resample(const Field& f, int n_new) {
    Grid g(n_new);
    const Spectrum s = forward_transform(f);
    Spectrum out(g);
    const int kmax = std::min(f.grid.n, n_new) / 2;
    for (int k = -kmax + 1; k < kmax; ++k) out.at_mode(k) = s.at_mode(k);
    // Nyquist of the coarser grid splits across +-kmax when refining; keep it
    // only when sizes match so the resampled field is exactly band limited.
    if (n_new == f.grid.n) out.at_mode(kmax) = s.at_mode(kmax);
    return inverse_transform(out);
}

double min_sample(const Field& f) { return *std::min_element(f.samples.begin(), f.samples.end()); }
double max_sample(const Field& f) { return *std::max_element(f.samples.begin(), f.samples.end()); }

double linf_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += v * v;
    return std::sqrt(f.grid.spacing() * acc);
}

double l1_norm(const Field& f) {
    double acc = 0.0;
    for (double v : f.samples) acc += std::abs(v);
    return f.grid.spacing() * acc;
}

} // namespace otslab
