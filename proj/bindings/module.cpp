// Python bindings for the main operations.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqz/classical.hpp"
#include "sqz/io.hpp"
#include "sqz/langevin.hpp"
#include "sqz/model.hpp"
#include "sqz/optimize.hpp"
#include "sqz/spectrum.hpp"
#include "sqz/sweep.hpp"
#include "sqz/weakcoupling.hpp"

namespace py = pybind11;

namespace {

struct LangevinResult {
    double variance_x1_avg;
    double variance_x1_strobe;
    double s_db_avg;
    long long periods_used;
    bool converged;
    sqz::Matrix8 cov_avg;
    sqz::Matrix8 cov_strobe;
};

LangevinResult langevin_steady(const sqz::SystemParams& p, bool include_cr,
                               double tol, long long max_periods,
                               double integrator_rtol) {
    const auto ss = sqz::steady_state_periodic(sqz::assemble(p, include_cr), tol,
                                               max_periods, integrator_rtol);
    LangevinResult out{};
    out.variance_x1_avg = sqz::mech_quadrature_variance(ss.averaged, 0.0);
    out.variance_x1_strobe = sqz::mech_quadrature_variance(ss.stroboscopic, 0.0);
    out.s_db_avg = sqz::squeezing_db(out.variance_x1_avg);
    out.periods_used = ss.periods_used;
    out.converged = ss.converged;
    out.cov_avg = ss.averaged.cov;
    out.cov_strobe = ss.stroboscopic.cov;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "steady-state mechanical squeezing toolkit";
    m.attr("__version__") = sqz::kVersion;

    py::class_<sqz::SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("omega_m", &sqz::SystemParams::omega_m)
        .def_readwrite("kappa_c", &sqz::SystemParams::kappa_c)
        .def_readwrite("kappa_1", &sqz::SystemParams::kappa_1)
        .def_readwrite("kappa_2", &sqz::SystemParams::kappa_2)
        .def_readwrite("delta_1", &sqz::SystemParams::delta_1)
        .def_readwrite("delta_2", &sqz::SystemParams::delta_2)
        .def_readwrite("j_1", &sqz::SystemParams::j_1)
        .def_readwrite("j_2", &sqz::SystemParams::j_2)
        .def_readwrite("g_plus", &sqz::SystemParams::g_plus)
        .def_readwrite("g_minus", &sqz::SystemParams::g_minus)
        .def_readwrite("gamma_m", &sqz::SystemParams::gamma_m)
        .def_readwrite("n_th", &sqz::SystemParams::n_th)
        .def("drive_ratio", &sqz::SystemParams::drive_ratio);

    py::class_<sqz::EnvSummary>(m, "EnvSummary")
        .def_readonly("s0", &sqz::EnvSummary::s0)
        .def_readonly("s_plus", &sqz::EnvSummary::s_plus)
        .def_readonly("s_minus", &sqz::EnvSummary::s_minus)
        .def_readonly("eps_plus", &sqz::EnvSummary::eps_plus)
        .def_readonly("eps_minus", &sqz::EnvSummary::eps_minus)
        .def_readonly("c_e", &sqz::EnvSummary::c_e);

    py::class_<sqz::RateSet>(m, "RateSet")
        .def_readonly("gamma_minus", &sqz::RateSet::gamma_minus)
        .def_readonly("gamma_plus", &sqz::RateSet::gamma_plus)
        .def_readonly("gamma_s", &sqz::RateSet::gamma_s);

    py::class_<sqz::LindbladForm>(m, "LindbladForm")
        .def_readonly("a", &sqz::LindbladForm::a)
        .def_readonly("b", &sqz::LindbladForm::b)
        .def_readonly("u", &sqz::LindbladForm::u)
        .def_readonly("v", &sqz::LindbladForm::v)
        .def_readonly("gamma_bp_minus", &sqz::LindbladForm::gamma_bp_minus)
        .def_readonly("gamma_bp_plus", &sqz::LindbladForm::gamma_bp_plus)
        .def_readonly("n_bp", &sqz::LindbladForm::n_bp);

    py::class_<sqz::OptResult>(m, "OptResult")
        .def_readonly("parameter", &sqz::OptResult::parameter)
        .def_readonly("argmin", &sqz::OptResult::argmin)
        .def_readonly("variance", &sqz::OptResult::variance)
        .def_readonly("s_db", &sqz::OptResult::s_db)
        .def_readonly("method", &sqz::OptResult::method)
        .def_readonly("flags", &sqz::OptResult::flags)
        .def_readonly("certificate_ok", &sqz::OptResult::certificate_ok);

    py::class_<sqz::JOptClosedForm>(m, "JOptClosedForm")
        .def_readonly("j_opt", &sqz::JOptClosedForm::j_opt)
        .def_readonly("variance_opt", &sqz::JOptClosedForm::variance_opt)
        .def_readonly("c", &sqz::JOptClosedForm::c)
        .def_readonly("c_th", &sqz::JOptClosedForm::c_th);

    py::class_<LangevinResult>(m, "LangevinResult")
        .def_readonly("variance_x1_avg", &LangevinResult::variance_x1_avg)
        .def_readonly("variance_x1_strobe", &LangevinResult::variance_x1_strobe)
        .def_readonly("s_db_avg", &LangevinResult::s_db_avg)
        .def_readonly("periods_used", &LangevinResult::periods_used)
        .def_readonly("converged", &LangevinResult::converged)
        .def_readonly("cov_avg", &LangevinResult::cov_avg)
        .def_readonly("cov_strobe", &LangevinResult::cov_strobe);

    m.def("symmetric_setting", &sqz::symmetric_setting, py::arg("kappa_c"),
          py::arg("kappa"), py::arg("j"), py::arg("g_minus"), py::arg("r"),
          py::arg("gamma_m"), py::arg("n_th"));
    m.def("validate", [](const sqz::SystemParams& p) {
        std::vector<std::string> out;
        for (const auto& d : sqz::validate(p))
            out.push_back((d.severity == sqz::Severity::Error ? "error: " : "warning: ") +
                          d.message);
        return out;
    });
    m.def("load_params", &sqz::load_params, py::arg("path"));

    m.def("response", &sqz::response, py::arg("params"), py::arg("omega"));
    m.def("s_op", &sqz::s_op, py::arg("params"), py::arg("omega"));
    m.def("s0_closed_form", &sqz::s0_closed_form);
    m.def("env_summary", &sqz::env_summary);
    m.def("epsilon_approx", [](const sqz::SystemParams& p) {
        const auto e = sqz::epsilon_approx(p);
        return py::make_tuple(e.value, e.regime_flag);
    });

    m.def("rates", &sqz::rates, py::arg("params"), py::arg("env"));
    m.def("lindblad_form", &sqz::lindblad_form);
    m.def("stability", [](const sqz::SystemParams& p, const sqz::EnvSummary& env) {
        const auto st = sqz::stability(p, env);
        return py::make_tuple(st.stable, st.margin);
    });
    m.def("variance_x1", &sqz::variance_x1, py::arg("params"), py::arg("env"));
    m.def("variance_x1_from", &sqz::variance_x1_from, py::arg("r"),
          py::arg("eps_minus"), py::arg("eps_plus"), py::arg("c_e"), py::arg("n_th"));
    m.def("squeezing_db", &sqz::squeezing_db);
    m.def("variance_via_lindblad", &sqz::variance_via_lindblad);
    m.def("quadrature_variance_squeezed", &sqz::quadrature_variance_squeezed,
          py::arg("r"), py::arg("beta"), py::arg("theta"));

    m.def("r_opt_exact", &sqz::r_opt_exact, py::arg("env"), py::arg("n_th"));
    m.def("variance_at_ropt", &sqz::variance_at_ropt, py::arg("env"), py::arg("n_th"));
    m.def("r_opt_approx", [](const sqz::EnvSummary& env, double n_th) {
        const auto a = sqz::r_opt_approx(env, n_th);
        return py::make_tuple(a.r, a.variance, a.regime_flag);
    });
    m.def("j_opt_closed_form", &sqz::j_opt_closed_form, py::arg("params"),
          py::arg("n_th"));
    m.def("j_opt_numeric", &sqz::j_opt_numeric, py::arg("params"), py::arg("n_th"),
          py::arg("j_lo"), py::arg("j_hi"), py::arg("coarse_points") = 33);
    m.def("asymmetric_j_opt", &sqz::asymmetric_j_opt, py::arg("params"),
          py::arg("n_th"), py::arg("j2"), py::arg("ratio_lo") = 0.05,
          py::arg("ratio_hi") = 20.0, py::arg("coarse_points") = 65);

    m.def("langevin_steady", &langevin_steady, py::arg("params"),
          py::arg("include_cr") = true, py::arg("tol") = 1e-8,
          py::arg("max_periods") = 100'000'000LL,
          py::arg("integrator_rtol") = 1e-12);

    m.def("validity_ratio", &sqz::validity_ratio);

    m.def("run_preset", &sqz::run_preset, py::arg("name"), py::arg("out_dir"),
          py::arg("threads") = 1,
          py::arg("gamma_override") = std::optional<double>{});
}
