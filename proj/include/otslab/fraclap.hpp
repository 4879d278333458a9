#pragma once

#include <vector>

#include "otslab/field.hpp"

namespace otslab {

/// Normalization constant C(s,1) of the singular-integral form of the
/// fractional Laplacian at d = 1,
///   C = ( int_R 4 sin^2(x/2) / |x|^{1+2s} dx )^{-1},  0 < s < 1,
/// computed by quadrature of the defining integral split at |x| = 1, with
/// the non-oscillatory tail integrated analytically. Absolute error of the
/// integral is far below 1e-8. Values are cached per s. C(1/2,1) = 1/(2*pi).
double normalization_constant(double s);

/// The integral split at |x|=1 without inverting; used by tests that probe
/// the limits s -> 0+ (tail blows up) and s -> 1- (near-origin part blows up).
double normalization_integral(double s);

/// Fourier-multiplier form: coefficients scaled by |k|^alpha, mode 0
/// annihilated. Valid for 0 < alpha <= 2.
Field fractional_laplacian_spectral(const Field& f, double alpha);
Spectrum fractional_laplacian_spectral(const Spectrum& s, double alpha);

/// Periodized kernel table W_m = sum_k |eta_m + 2*pi*k|^{-1-beta} where
/// eta_m is the nearest-image representative of m*h in (-pi, pi]. Lattice
/// images with |k| <= lattice_cutoff are summed directly; the remainder is
/// added with an Euler-Maclaurin closure, so the table carries the full
/// periodic kernel to near machine precision. W_0 = 0 (diagonal excluded).
std::vector<double> periodized_kernel(int n, double beta, int lattice_cutoff);

/// Quadrature deficit of the grid rule on the even moment |eta|^q over the
/// fundamental domain: M_exact - M_grid with M = int_{-pi}^{pi} |eta|^q.
/// Positive for q in (-1, 1]; used as the singular-cell curvature weight.
double singular_moment_deficit(int n, double q);

/// Truncated periodic singular-integral representation:
/// 2*C(alpha/2,1) * [ lattice sum over shifted kernels + principal-value
/// term ], evaluated by the grid midpoint rule with eta and -eta paired so
/// the singular point contributes a finite second-difference term. A local
/// curvature model for the singular cell restores the accuracy the bare
/// midpoint rule loses on the |eta|^{-1-alpha} kernel. Valid for
/// 0 < alpha < 2 and lattice_cutoff >= 1.
Field fractional_laplacian_integral(const Field& f, double alpha, int lattice_cutoff);

/// Homogeneous Sobolev seminorm |u|_{H^s} = (2*pi sum_{k!=0} |k|^{2s} |u_k|^2)^{1/2}.
double hs_seminorm(const Field& f, double s);

/// Sobolev-Slobodeckij seminorm for 0 < s < 1, p >= 1: the p-th root of the
/// double grid quadrature of |u(x)-u(y)|^p against the periodized kernel
/// with exponent 1 + s*p (nearest image plus lattice images), diagonal pairs
/// excluded, with the singular-cell curvature term. Deterministic.
double slobodeckij_seminorm(const Field& f, double s, double p, int lattice_cutoff = 64);

/// |C(s,1)*slobodeckij^2 - hs^2| / hs^2 for a band-limited field (modes
/// <= n/4), evaluated on the grid refined n_refinements times (each a
/// doubling). Throws std::domain_error on a constant field.
double norm_equivalence_residual(const Field& f, double s, int n_refinements);

} // namespace otslab
