// Python bindings over the core operations. Fields travel as 1-D numpy
// arrays of samples on the uniform torus grid.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "otslab/expr.hpp"
#include "otslab/fraclap.hpp"
#include "otslab/functionals.hpp"
#include "otslab/ineqlab.hpp"
#include "otslab/kinetics.hpp"
#include "otslab/sampler.hpp"
#include "otslab/solver.hpp"

namespace py = pybind11;
using namespace otslab;

namespace {

Field to_field(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-D sample array");
    Grid g(static_cast<int>(a.shape(0)));
    Field f(g);
    std::copy(a.data(), a.data() + g.n, f.samples.begin());
    return f;
}

py::array_t<double> to_array(const Field& f) {
    py::array_t<double> out({static_cast<py::ssize_t>(f.grid.n)});
    std::copy(f.samples.begin(), f.samples.end(), out.mutable_data());
    return out;
}

GammaFunction gamma_by_name(const std::string& name) {
    if (name == "log") return gamma_log();
    if (name == "identity") return gamma_identity();
    throw std::invalid_argument("gamma must be 'log' or 'identity'");
}

py::dict report_to_dict(const InequalityReport& r) {
    py::dict d;
    d["inequality_id"] = r.inequality_id;
    d["alpha"] = r.alpha;
    d["delta"] = r.delta;
    d["s_exp"] = r.s_exp;
    d["seed"] = r.seed;
    d["sample_count"] = r.sample_count;
    d["ratios"] = r.ratios;
    d["max_ratio"] = r.max_ratio;
    d["violations"] = r.violations;
    d["witness_index"] = r.witness.index;
    d["witness_seed"] = r.witness.sample_seed;
    return d;
}

} // namespace

PYBIND11_MODULE(_otslab, m) {
    m.doc() = "Pseudo-spectral laboratory for the fractional hyperbolic-parabolic "
              "chemotaxis system on the 1-D torus";

    m.def("forward_transform", [](const py::array_t<double, py::array::c_style |
                                                              py::array::forcecast>& u) {
        const Spectrum s = forward_transform(to_field(u));
        py::array_t<std::complex<double>> out({static_cast<py::ssize_t>(s.grid.n)});
        std::copy(s.coeffs.begin(), s.coeffs.end(), out.mutable_data());
        return out;
    }, py::arg("u"),
       "Fourier coefficients in transform storage order, 1/n on the forward pass");

    m.def("inverse_transform", [](const py::array_t<std::complex<double>,
                                                    py::array::c_style | py::array::forcecast>& c) {
        Spectrum s(Grid(static_cast<int>(c.shape(0))));
        std::copy(c.data(), c.data() + s.grid.n, s.coeffs.begin());
        return to_array(inverse_transform(s));
    }, py::arg("coeffs"));

    m.def("derivative", [](const py::array_t<double, py::array::c_style |
                                                         py::array::forcecast>& u) {
        return to_array(derivative(to_field(u)));
    }, py::arg("u"));

    m.def("mean", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& u) {
        return mean(to_field(u));
    }, py::arg("u"));

    m.def("grid_points", [](int n) {
        Grid g(n);
        py::array_t<double> out({static_cast<py::ssize_t>(n)});
        for (int j = 0; j < n; ++j) out.mutable_data()[j] = g.x(j);
        return out;
    }, py::arg("n"));

    m.def("random_smooth_field", [](int n, std::uint64_t seed, double decay, double floor_value,
                                    int modes) {
        return to_array(random_smooth_field(Grid(n), seed, decay, floor_value, modes));
    }, py::arg("n"), py::arg("seed"), py::arg("decay") = 2.0, py::arg("floor") = 0.1,
       py::arg("modes") = 20);

    m.def("fractional_laplacian", [](const py::array_t<double, py::array::c_style |
                                                                   py::array::forcecast>& u,
                                     double alpha, const std::string& method, int cutoff) {
        const Field f = to_field(u);
        if (method == "spectral") return to_array(fractional_laplacian_spectral(f, alpha));
        if (method == "integral") return to_array(fractional_laplacian_integral(f, alpha, cutoff));
        throw std::invalid_argument("method must be 'spectral' or 'integral'");
    }, py::arg("u"), py::arg("alpha"), py::arg("method") = "spectral", py::arg("cutoff") = 50);

    m.def("normalization_constant", &normalization_constant, py::arg("s"));
    m.def("hs_seminorm", [](const py::array_t<double, py::array::c_style |
                                                          py::array::forcecast>& u, double s) {
        return hs_seminorm(to_field(u), s);
    }, py::arg("u"), py::arg("s"));
    m.def("slobodeckij_seminorm", [](const py::array_t<double, py::array::c_style |
                                                                   py::array::forcecast>& u,
                                     double s, double p, int cutoff) {
        return slobodeckij_seminorm(to_field(u), s, p, cutoff);
    }, py::arg("u"), py::arg("s"), py::arg("p"), py::arg("cutoff") = 64);
    m.def("norm_equivalence_residual", [](const py::array_t<double, py::array::c_style |
                                                                        py::array::forcecast>& u,
                                          double s, int refinements) {
        return norm_equivalence_residual(to_field(u), s, refinements);
    }, py::arg("u"), py::arg("s"), py::arg("refinements") = 0);

    m.def("shannon_entropy", [](const py::array_t<double, py::array::c_style |
                                                              py::array::forcecast>& u) {
        return shannon_entropy(to_field(u));
    }, py::arg("u"));
    m.def("fisher_information", [](const py::array_t<double, py::array::c_style |
                                                                 py::array::forcecast>& u,
                                   double alpha, const std::string& gamma) {
        return fisher_information(to_field(u), alpha, gamma_by_name(gamma));
    }, py::arg("u"), py::arg("alpha"), py::arg("gamma") = "log");
    m.def("fisher_symmetric_form", [](const py::array_t<double, py::array::c_style |
                                                                    py::array::forcecast>& u,
                                      double alpha, const std::string& gamma, int cutoff) {
        return fisher_symmetric_form(to_field(u), alpha, gamma_by_name(gamma), cutoff);
    }, py::arg("u"), py::arg("alpha"), py::arg("gamma") = "log", py::arg("cutoff") = 50);

    m.def("theta_profile", [](const std::string& kinetic, double s) {
        return theta_profile(parse_kinetic(kinetic), s);
    }, py::arg("kinetic"), py::arg("s"), "Nested-quadrature Theta profile");
    m.def("theta", [](const std::string& kinetic, double s) {
        return theta_value(parse_kinetic(kinetic), s);
    }, py::arg("kinetic"), py::arg("s"), "Theta via the closed form when available");
    m.def("lyapunov", [](const py::array_t<double, py::array::c_style |
                                                       py::array::forcecast>& u,
                         const py::array_t<double, py::array::c_style | py::array::forcecast>& q,
                         const std::string& kinetic) {
        return lyapunov(to_field(u), to_field(q), parse_kinetic(kinetic));
    }, py::arg("u"), py::arg("q"), py::arg("kinetic"));
    m.def("sup_interpolation_residual", [](const py::array_t<double, py::array::c_style |
                                                                         py::array::forcecast>& u,
                                           double alpha) {
        return sup_interpolation_residual(to_field(u), alpha);
    }, py::arg("u"), py::arg("alpha"));

    m.def("admissibility_report", [](const std::string& kinetic, double a, double b, int samples) {
        const auto rep = admissibility_report(parse_kinetic(kinetic), a, b, samples);
        py::dict d;
        d["a"] = rep.a;
        d["b"] = rep.b;
        d["gamma_lower"] = rep.gamma_lower;
        d["gamma_upper"] = rep.gamma_upper;
        d["monotone"] = rep.monotone;
        d["derivative_sup_norms"] = rep.derivative_sup_norms;
        if (rep.uniform_lower_c1) d["uniform_lower_c1"] = *rep.uniform_lower_c1;
        else d["uniform_lower_c1"] = py::none();
        return d;
    }, py::arg("kinetic"), py::arg("a"), py::arg("b"), py::arg("samples") = 10000);

    m.def("mollify_initial_data", [](const py::array_t<double, py::array::c_style |
                                                                   py::array::forcecast>& u,
                                     const py::array_t<double, py::array::c_style |
                                                                   py::array::forcecast>& q,
                                     double epsilon) {
        auto [mu, mq] = mollify_initial_data(to_field(u), to_field(q), epsilon);
        return py::make_tuple(to_array(mu), to_array(mq));
    }, py::arg("u0"), py::arg("q0"), py::arg("epsilon"));

    m.def("evaluate_expression", [](const std::string& text, int n) {
        return to_array(Expression::parse(text).evaluate_on(Grid(n)));
    }, py::arg("text"), py::arg("n"));

    m.def("simulate", [](double alpha, double mu, double epsilon, const std::string& kinetic,
                         const py::array_t<double, py::array::c_style | py::array::forcecast>& u0,
                         const py::array_t<double, py::array::c_style | py::array::forcecast>& q0,
                         double dt, double t_end, int record_every, bool dealias,
                         double cfl_safety) {
        const Field fu = to_field(u0);
        SolverConfig cfg;
        cfg.alpha = alpha;
        cfg.mu = mu;
        cfg.epsilon = epsilon;
        cfg.n = fu.grid.n;
        cfg.dt = dt;
        cfg.t_end = t_end;
        cfg.record_every = record_every;
        cfg.dealias = dealias;
        cfg.cfl_safety = cfl_safety;
        const RunResult res = run(cfg, parse_kinetic(kinetic), fu, to_field(q0));

        py::dict rec;
        auto column = [&](const char* name, auto get) {
            py::array_t<double> col({static_cast<py::ssize_t>(res.records.size())});
            for (std::size_t i = 0; i < res.records.size(); ++i)
                col.mutable_data()[i] = get(res.records[i]);
            rec[name] = col;
        };
        column("t", [](const DiagnosticsRecord& r) { return r.t; });
        column("mass", [](const DiagnosticsRecord& r) { return r.mass; });
        column("q_mean", [](const DiagnosticsRecord& r) { return r.q_mean; });
        column("u_min", [](const DiagnosticsRecord& r) { return r.u_min; });
        column("u_max", [](const DiagnosticsRecord& r) { return r.u_max; });
        column("l2_u", [](const DiagnosticsRecord& r) { return r.l2_u; });
        column("l2_q", [](const DiagnosticsRecord& r) { return r.l2_q; });
        column("hs_u", [](const DiagnosticsRecord& r) { return r.hs_u; });
        column("entropy", [](const DiagnosticsRecord& r) { return r.entropy; });
        column("fisher", [](const DiagnosticsRecord& r) { return r.fisher; });
        column("lyapunov", [](const DiagnosticsRecord& r) { return r.lyapunov; });
        column("h3_energy", [](const DiagnosticsRecord& r) { return r.h3_energy; });
        column("dissipation_integral",
               [](const DiagnosticsRecord& r) { return r.dissipation_integral; });

        py::dict out;
        out["u"] = to_array(res.final_state.u);
        out["q"] = to_array(res.final_state.q);
        out["t"] = res.final_state.t;
        out["records"] = rec;
        out["classification"] = res.classification();
        out["blowup"] = res.status == RunStatus::blowup;
        out["blowup_time"] = res.blowup_time;
        out["positivity_warnings"] = res.positivity_warnings;
        return out;
    }, py::arg("alpha"), py::arg("mu"), py::arg("epsilon"), py::arg("kinetic"), py::arg("u0"),
       py::arg("q0"), py::arg("dt"), py::arg("t_end"), py::arg("record_every") = 10,
       py::arg("dealias") = true, py::arg("cfl_safety") = 0.9);

    m.def("check_inequality", [](const std::string& lemma, double alpha, double delta,
                                 double s_exp, int samples, std::uint64_t seed, int lab_n,
                                 int modes, double decay, double floor_value) {
        LabConfig lab;
        lab.n = lab_n;
        lab.modes = modes;
        lab.decay = decay;
        lab.floor_value = floor_value;
        const GammaFunction glog = gamma_log();
        InequalityReport rep;
        if (lemma == "1a") rep = check_lemma1_hs(alpha, glog, samples, seed, lab);
        else if (lemma == "1b") rep = check_lemma1_w(alpha, delta, glog, samples, seed, lab);
        else if (lemma == "2") rep = check_lemma2_torus(alpha, glog, samples, seed, lab);
        else if (lemma == "b2") rep = check_lemmaB2(alpha, s_exp, delta, samples, seed, lab);
        else throw std::invalid_argument("lemma must be one of 1a, 1b, 2, b2");
        return report_to_dict(rep);
    }, py::arg("lemma"), py::arg("alpha"), py::arg("delta") = 0.2, py::arg("s_exp") = 0.5,
       py::arg("samples") = 200, py::arg("seed") = 0, py::arg("lab_n") = 128,
       py::arg("modes") = 20, py::arg("decay") = 2.0, py::arg("floor") = 0.1);

    m.attr("__version__") = "0.1.0";
}
