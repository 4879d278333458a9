#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "otslab/grid.hpp"

namespace otslab {

/// Real sample array on a Grid, u(x_j) with x_j = j * spacing.
struct Field {
    Grid grid;
    std::vector<double> samples;

    Field() = default;
    Field(Grid g, std::vector<double> s) : grid(g), samples(std::move(s)) {
        if (static_cast<int>(samples.size()) != grid.n)
            throw std::invalid_argument("Field: sample count does not match grid");
    }
    explicit Field(Grid g) : grid(g), samples(g.n, 0.0) {}

    int size() const { return grid.n; }
    double& operator[](int j) { return samples[j]; }
    double operator[](int j) const { return samples[j]; }
};

/// Complex Fourier coefficients u_k for modes k = -n/2+1 ... n/2,
/// stored in standard transform order (index m holds mode m for m <= n/2,
/// mode m-n above). A real field has Hermitian symmetry u_{-k} = conj(u_k).
struct Spectrum {
    Grid grid;
    std::vector<std::complex<double>> coeffs;

    Spectrum() = default;
    explicit Spectrum(Grid g) : grid(g), coeffs(g.n, {0.0, 0.0}) {}

    int size() const { return grid.n; }

    /// Mode number of storage index m.
    int mode(int m) const { return m <= grid.n / 2 ? m : m - grid.n; }

    /// Storage index of mode k in (-n/2, n/2].
    int index(int k) const { return k >= 0 ? k : k + grid.n; }

    std::complex<double>& at_mode(int k) { return coeffs[index(k)]; }
    std::complex<double> at_mode(int k) const { return coeffs[index(k)]; }

    /// Largest |Im| on the self-conjugate modes plus largest |u_k - conj(u_{-k})|,
    /// relative to the largest coefficient magnitude. Zero for a spectrum
    /// produced by forward_transform.
    double hermitian_defect() const;
};

/// Discrete Fourier transform with the 1/n factor on the forward pass,
/// so that u_0 equals the field mean.
Spectrum forward_transform(const Field& f);

/// Exact inverse of forward_transform. Throws std::invalid_argument if the
/// Hermitian symmetry is violated beyond 1e-10 (relative).
Field inverse_transform(const Spectrum& s);

/// Spectral d/dx (multiplier ik, Nyquist zeroed). The result has exactly
/// zero mean in spectral arithmetic.
Field derivative(const Field& f);
Spectrum derivative(const Spectrum& s);

/// (1/n) sum_j f(x_j); equals the k=0 Fourier coefficient.
double mean(const Field& f);

/// Zero all modes with |k| > n/3 (2/3 dealiasing rule).
void dealias(Spectrum& s);

/// Band-limited resampling onto a finer/coarser power-of-two grid via
/// spectral zero padding / truncation.
Field resample(const Field& f, int n_new);

double min_sample(const Field& f);
double max_sample(const Field& f);
double linf_norm(const Field& f);
/// Continuum L2 norm, sqrt(h * sum f_j^2).
double l2_norm(const Field& f);
/// Continuum L1 norm, h * sum |f_j|.
double l1_norm(const Field& f);

} // namespace otslab
