#pragma once

#include <string>
#include <utility>
#include <vector>

#include "otslab/field.hpp"
#include "otslab/functionals.hpp"
#include "otslab/kinetics.hpp"

namespace otslab {

/// Configuration of a single run of the hyperbolic-parabolic system
///   du/dt = -mu Lambda^alpha u + dx(u q) [+ eps dxx u],
///   dq/dt = dx f(u)                      [+ eps dxx q],
/// integrated by an integrating-factor scheme: the stiff linear symbol is
/// applied exactly, the nonlinear fluxes by an explicit midpoint rule with
/// physical-space products under the 2/3 dealias mask.
struct SolverConfig {
    double alpha = 1.5;   // (0, 2]
    double mu = 1.0;      // >= 0
    double epsilon = 0.0; // >= 0; 0 means the q equation stays purely hyperbolic
    int n = 256;
    double dt = 1e-3;     // upper cap for the adaptive step
    double t_end = 1.0;
    bool dealias = true;
    int record_every = 1;
    double cfl_safety = 0.9;

    void validate() const;
};

struct State {
    Field u, q;
    double t = 0.0;
};

/// Per-record scalar observables. The dxq_linf_integral member is monitor
/// state for the minimum principle and is not serialized to CSV.
struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double q_mean = 0.0;
    double u_min = 0.0;
    double u_max = 0.0;
    double l2_u = 0.0;
    double l2_q = 0.0;
    double hs_u = 0.0;    // |u|_{H^{alpha/2}}
    double entropy = 0.0;
    double fisher = 0.0;  // Gamma = log
    double lyapunov = 0.0;
    double h3_energy = 0.0; // NaN when the field is unresolved
    double dissipation_integral = 0.0; // running int_0^t int Lambda^alpha u Theta'(u)
    bool h3_resolved = true;
    double dxq_linf_integral = 0.0; // running trapezoid of ||dx q||_inf
};

enum class RunStatus { completed, blowup };

struct RunResult {
    State final_state;
    std::vector<DiagnosticsRecord> records;
    RunStatus status = RunStatus::completed;
    double blowup_time = 0.0;
    std::string blowup_what;
    long positivity_warnings = 0;
    long flooring_events = 0; // samples floored at 1e-12 inside log-based diagnostics
    double gamma_lower = 0.0; // weight used in the H^3 energy

    /// "bounded" | "blowup" | "unresolved"; positivity warnings make a run
    /// unresolved even when it later trips the blow-up detector.
    std::string classification() const;
};

/// Heat-kernel mollification at time epsilon (spectral symbol e^{-k^2 eps});
/// the u component is then lifted by +epsilon. The q mean is unchanged.
std::pair<Field, Field> mollify_initial_data(const Field& u0, const Field& q0, double epsilon);

/// safety * min( h/max|q|, h/max|f'(u)|, advective cap of the dealiased
/// band ), clamped to cfg.dt.
double cfl_timestep(const State& s, const SolverConfig& cfg, const KineticFunction& f,
                    double safety);

/// One integrating-factor midpoint step of size cfg.dt.
State step(const State& s, const SolverConfig& cfg, const KineticFunction& f);

/// Drive the system from (u0, q0) to t_end with adaptive dt from
/// cfl_timestep, recording every record_every steps. Requires <q0> = 0 and
/// u0 >= 0. Blow-up terminates the run and is reported as data.
RunResult run(const SolverConfig& cfg, const KineticFunction& f, const Field& u0,
              const Field& q0);

struct MinPrincipleReport {
    bool positive_throughout = false;
    bool envelope_satisfied = false;
    double worst_envelope_margin = 0.0;
    double min_u = 0.0;
};

/// Checks min u(t) > 0 at all records and the exponential lower envelope
/// min u0 * exp(-int_0^t ||dx q||_inf ds).
MinPrincipleReport min_principle_monitor(const std::vector<DiagnosticsRecord>& records);

/// ||u||_{H^3}^2 + gamma_lower ||q||_{H^3}^2 via spectral norms.
double energy_h3(const State& s, double gamma_lower);

/// Spectral tail (modes |k| >= n/4) below 1e-8 of the peak for both fields.
bool h3_resolved(const State& s);

} // namespace otslab
