#include "otslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "otslab/fraclap.hpp"

namespace otslab {

namespace {

constexpr double kBlowupNorm = 1e12;
constexpr double kLogFloor = 1e-12;

bool all_finite(const Field& f) {
    for (double v : f.samples)
        if (!std::isfinite(v)) return false;
    return true;
}

struct Workspace {
    Grid grid;
    const SolverConfig& cfg;
    const KineticFunction& f;
    std::vector<double> sym_u, sym_q; // decay symbols per storage index
    std::vector<bool> keep;           // dealias mask
    double cached_dt = -1.0;
    std::vector<double> eu_full, eu_half, eq_full, eq_half;

    Workspace(Grid g, const SolverConfig& c, const KineticFunction& kf)
        : grid(g), cfg(c), f(kf), sym_u(g.n), sym_q(g.n), keep(g.n, true) {
        Spectrum probe(g);
        for (int m = 0; m < g.n; ++m) {
            const double k = std::abs(static_cast<double>(probe.mode(m)));
            sym_u[m] = cfg.mu * std::pow(k, cfg.alpha) + cfg.epsilon * k * k;
            sym_q[m] = cfg.epsilon * k * k;
            if (cfg.dealias && k > g.n / 3.0) keep[m] = false;
        }
        sym_u[0] = 0.0;
        eu_full.resize(g.n);
        eu_half.resize(g.n);
        eq_full.resize(g.n);
        eq_half.resize(g.n);
    }

    void set_dt(double dt) {
        if (dt == cached_dt) return;
        cached_dt = dt;
        for (int m = 0; m < grid.n; ++m) {
            eu_full[m] = std::exp(-sym_u[m] * dt);
            eu_half[m] = std::exp(-sym_u[m] * 0.5 * dt);
            eq_full[m] = std::exp(-sym_q[m] * dt);
            eq_half[m] = std::exp(-sym_q[m] * 0.5 * dt);
        }
    }

    // dx applied under the dealias mask; mode 0 of dx f(u) vanishes exactly,
    // so <q> is preserved, and all u fluxes are perfect derivatives, so mass
    // is preserved exactly as well.
    void nonlinear(const Spectrum& uh, const Spectrum& qh, Spectrum& nu, Spectrum& nq) const {
        const Field u = inverse_transform(uh);
        const Field q = inverse_transform(qh);
        Field uq(grid), fu(grid);
        for (int j = 0; j < grid.n; ++j) {
            uq.samples[j] = u.samples[j] * q.samples[j];
            fu.samples[j] = f.f(u.samples[j]);
        }
        nu = forward_transform(uq);
        nq = forward_transform(fu);
        for (int m = 0; m < grid.n; ++m) {
            const int k = nu.mode(m);
            if (!keep[m] || k == grid.n / 2) {
                nu.coeffs[m] = 0.0;
                nq.coeffs[m] = 0.0;
                continue;
            }
            const std::complex<double> ik(0.0, static_cast<double>(k));
            nu.coeffs[m] *= ik;
            nq.coeffs[m] *= ik;
        }
    }

    void advance(Spectrum& uh, Spectrum& qh, double dt) {
        set_dt(dt);
        Spectrum k1u(grid), k1q(grid), k2u(grid), k2q(grid);
        nonlinear(uh, qh, k1u, k1q);
        Spectrum um(grid), qm(grid);
        for (int m = 0; m < grid.n; ++m) {
            um.coeffs[m] = eu_half[m] * (uh.coeffs[m] + 0.5 * dt * k1u.coeffs[m]);
            qm.coeffs[m] = eq_half[m] * (qh.coeffs[m] + 0.5 * dt * k1q.coeffs[m]);
        }
        nonlinear(um, qm, k2u, k2q);
        for (int m = 0; m < grid.n; ++m) {
            uh.coeffs[m] = eu_full[m] * uh.coeffs[m] + dt * eu_half[m] * k2u.coeffs[m];
            qh.coeffs[m] = eq_full[m] * qh.coeffs[m] + dt * eq_half[m] * k2q.coeffs[m];
        }
    }
};

Field floored_copy(const Field& u, long& flooring_events) {
    Field out = u;
    for (double& v : out.samples)
        if (v < kLogFloor) {
            v = kLogFloor;
            ++flooring_events;
        }
    return out;
}

double h3_norm_sq(const Field& f) {
    const double l2 = l2_norm(f);
    const double hdot = hs_seminorm(f, 3.0);
    return l2 * l2 + hdot * hdot;
}

bool tail_resolved(const Field& f) {
    const Spectrum s = forward_transform(f);
    double peak = 0.0, tail = 0.0;
    for (int m = 0; m < s.grid.n; ++m) {
        const double mag = std::abs(s.coeffs[m]);
        peak = std::max(peak, mag);
        if (std::abs(s.mode(m)) >= s.grid.n / 4) tail = std::max(tail, mag);
    }
    return peak == 0.0 || tail <= 1e-8 * peak;
}

} // namespace

void SolverConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("config: alpha must lie in (0,2]");
    if (mu < 0.0) throw std::invalid_argument("config: mu must be >= 0");
    if (epsilon < 0.0) throw std::invalid_argument("config: epsilon must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
    if (t_end < 0.0) throw std::invalid_argument("config: t_end must be >= 0");
    if (record_every < 1) throw std::invalid_argument("config: record_every must be >= 1");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("config: cfl safety must lie in (0,1]");
    Grid g(n); // validates the point count
    (void)g;
}

std::string RunResult::classification() const {
    if (status == RunStatus::blowup) return "blowup";
    if (positivity_warnings > 0) return "unresolved";
    return "bounded";
}

std::pair<Field, Field> mollify_initial_data(const Field& u0, const Field& q0, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("mollify: epsilon must be > 0");
    auto smooth = [epsilon](const Field& f) {
        Spectrum s = forward_transform(f);
        for (int m = 0; m < s.grid.n; ++m) {
            const double k = static_cast<double>(s.mode(m));
            s.coeffs[m] *= std::exp(-k * k * epsilon);
        }
        return inverse_transform(s);
    };
    Field u = smooth(u0);
    for (double& v : u.samples) v += epsilon;
    return {std::move(u), smooth(q0)};
}

double cfl_timestep(const State& s, const SolverConfig& cfg, const KineticFunction& f,
                    double safety) {
    if (!(safety > 0.0 && safety <= 1.0))
        throw std::invalid_argument("cfl: safety must lie in (0,1]");
    const double h = s.u.grid.spacing();
    const double q_inf = std::max(linf_norm(s.q), 1e-12);
    double fp_inf = 0.0;
    for (double v : s.u.samples) {
        double d;
        try {
            d = f.d1(v);
        } catch (const std::domain_error&) {
            continue; // state already out of range; the blow-up check handles it
        }
        if (std::isfinite(d)) fp_inf = std::max(fp_inf, std::abs(d));
    }
    fp_inf = std::max(fp_inf, 1e-12);
    const double k_band = cfg.dealias ? s.u.grid.n / 3.0 : s.u.grid.n / 2.0;
    const double c1 = h / q_inf;
    const double c2 = h / fp_inf;
    const double c3 = 3.0 / (k_band * std::max(q_inf + fp_inf, 1e-12));
    return std::min(safety * std::min({c1, c2, c3}), cfg.dt);
}

State step(const State& s, const SolverConfig& cfg, const KineticFunction& f) {
    cfg.validate();
    if (s.u.grid.n != cfg.n || s.q.grid.n != cfg.n)
        throw std::invalid_argument("step: state grid does not match config");
    Workspace ws(s.u.grid, cfg, f);
    Spectrum uh = forward_transform(s.u);
    Spectrum qh = forward_transform(s.q);
    ws.advance(uh, qh, cfg.dt);
    return State{inverse_transform(uh), inverse_transform(qh), s.t + cfg.dt};
}

RunResult run(const SolverConfig& cfg, const KineticFunction& f, const Field& u0,
              const Field& q0) {
    cfg.validate();
    if (u0.grid.n != cfg.n || q0.grid.n != cfg.n)
        throw std::invalid_argument("run: initial data grid does not match config");
    if (min_sample(u0) < 0.0)
        throw std::invalid_argument("run: u0 must be nonnegative");
    const double q0_scale = std::max(1.0, linf_norm(q0));
    if (std::abs(mean(q0)) > 1e-12 * q0_scale)
        throw std::invalid_argument("run: q0 must have zero mean");

    RunResult res;
    Grid grid(cfg.n);
    Workspace ws(grid, cfg, f);

    // gamma weight for the H^3 energy from the initial range of u
    // (a = min u0 / 2, b = 2 max u0 as in the energy estimate).
    {
        const double a = std::max(0.0, min_sample(u0) / 2.0);
        const double b = std::max(2.0 * max_sample(u0), a + 1e-6);
        try {
            res.gamma_lower = admissibility_report(f, a, b, 1000).gamma_lower;
        } catch (const NonAdmissibleError&) {
            res.gamma_lower = 0.0;
        }
    }

    Spectrum uh = forward_transform(u0);
    Spectrum qh = forward_transform(q0);
    if (cfg.dealias) {
        dealias(uh);
        dealias(qh);
    }

    GammaFunction glog = gamma_log();
    double diss = 0.0, diss_rate_prev = 0.0;
    double dxq_int = 0.0, dxq_prev = 0.0;

    auto diss_rate = [&](const Spectrum& uh_c, const Field& u_phys) {
        const Field lap = inverse_transform(fractional_laplacian_spectral(uh_c, cfg.alpha));
        double acc = 0.0;
        for (int j = 0; j < grid.n; ++j) {
            const double v = std::max(u_phys.samples[j], kLogFloor);
            acc += lap.samples[j] * theta_prime_value(f, v);
        }
        return grid.spacing() * acc;
    };
    auto dxq_linf = [&](const Spectrum& qh_c) {
        return linf_norm(inverse_transform(derivative(qh_c)));
    };

    auto make_record = [&](const State& st) {
        DiagnosticsRecord r;
        r.t = st.t;
        r.mass = kTwoPi * mean(st.u);
        r.q_mean = mean(st.q);
        r.u_min = min_sample(st.u);
        r.u_max = max_sample(st.u);
        r.l2_u = l2_norm(st.u);
        r.l2_q = l2_norm(st.q);
        r.hs_u = hs_seminorm(st.u, 0.5 * cfg.alpha);
        const Field uf = floored_copy(st.u, res.flooring_events);
        r.entropy = shannon_entropy(uf);
        r.fisher = fisher_information(uf, cfg.alpha, glog);
        r.lyapunov = lyapunov(uf, st.q, f);
        r.h3_resolved = h3_resolved(st);
        r.h3_energy = r.h3_resolved ? energy_h3(st, res.gamma_lower)
                                    : std::numeric_limits<double>::quiet_NaN();
        r.dissipation_integral = diss;
        r.dxq_linf_integral = dxq_int;
        return r;
    };

    State st{inverse_transform(uh), inverse_transform(qh), 0.0};
    res.records.push_back(make_record(st));
    diss_rate_prev = diss_rate(uh, st.u);
    dxq_prev = dxq_linf(qh);

    long steps = 0;
    double t = 0.0;
    const double t_eps = 1e-14 * std::max(1.0, cfg.t_end);
    while (t < cfg.t_end - t_eps) {
        double dt;
        try {
            dt = std::min(cfl_timestep(st, cfg, f, cfg.cfl_safety), cfg.t_end - t);
            ws.advance(uh, qh, dt);
        } catch (const std::domain_error&) {
            res.status = RunStatus::blowup;
            res.blowup_time = t;
            res.blowup_what = "state left the kinetic function domain";
            break;
        }
        t += dt;
        ++steps;
        State next{inverse_transform(uh), inverse_transform(qh), t};

        if (!all_finite(next.u) || !all_finite(next.q) ||
            std::max(linf_norm(next.u), linf_norm(next.q)) > kBlowupNorm) {
            res.status = RunStatus::blowup;
            res.blowup_time = t;
            res.blowup_what = !all_finite(next.u) || !all_finite(next.q)
                                  ? "non-finite sample"
                                  : "L-infinity norm above 1e12";
            break;
        }
        st = std::move(next);
        if (min_sample(st.u) < -1e-6 * std::max(max_sample(st.u), 0.0))
            ++res.positivity_warnings;

        const double dr = diss_rate(uh, st.u);
        diss += 0.5 * dt * (diss_rate_prev + dr);
        diss_rate_prev = dr;
        const double dq = dxq_linf(qh);
        dxq_int += 0.5 * dt * (dxq_prev + dq);
        dxq_prev = dq;

        if (steps % cfg.record_every == 0 || t >= cfg.t_end - t_eps)
            res.records.push_back(make_record(st));
    }

    res.final_state = st;
    return res;
}

MinPrincipleReport min_principle_monitor(const std::vector<DiagnosticsRecord>& records) {
    MinPrincipleReport rep;
    if (records.empty()) return rep;
    rep.positive_throughout = true;
    rep.envelope_satisfied = true;
    rep.min_u = records.front().u_min;
    rep.worst_envelope_margin = std::numeric_limits<double>::infinity();
    const double m0 = records.front().u_min;
    for (const auto& r : records) {
        rep.min_u = std::min(rep.min_u, r.u_min);
        if (!(r.u_min > 0.0)) rep.positive_throughout = false;
        const double envelope = m0 * std::exp(-r.dxq_linf_integral);
        const double margin = r.u_min - envelope;
        rep.worst_envelope_margin = std::min(rep.worst_envelope_margin, margin);
        if (margin < 0.0) rep.envelope_satisfied = false;
    }
    return rep;
}

double energy_h3(const State& s, double gamma_lower) {
    return h3_norm_sq(s.u) + gamma_lower * h3_norm_sq(s.q);
}

bool h3_resolved(const State& s) { return tail_resolved(s.u) && tail_resolved(s.q); }

} // namespace otslab
