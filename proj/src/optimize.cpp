#include "sqz/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqz/langevin.hpp"
#include "sqz/weakcoupling.hpp"

namespace sqz {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double symmetric_eps(const EnvSummary& env) {
    return 0.5 * (env.eps_plus + env.eps_minus);
}

// Coarse scan + golden-section refinement shared by the numeric optimizers.
struct ScalarMin {
    double argmin = 0.0;
    double value = 0.0;
    bool boundary = false;
};

ScalarMin minimize_on_grid(const std::function<double(double)>& f,
                           const std::vector<double>& grid, double xtol) {
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
    const std::size_t i_min =
        static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) -
                                 vals.begin());
    if (i_min == 0 || i_min + 1 == grid.size())
        return {grid[i_min], vals[i_min], true};
    const double x =
        golden_section(f, grid[i_min - 1], grid[i_min], grid[i_min + 1], xtol);
    return {x, f(x), false};
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            std::exp(llo + (lhi - llo) * i / (n - 1));
    return g;
}

bool neighbor_certificate(const std::function<double(double)>& f, double x,
                          double fx, double h) {
    return fx <= f(x - h) && fx <= f(x + h);
}

}  // namespace

double golden_section(const std::function<double(double)>& f, double a,
                      double b, double c, double xtol, int max_iter) {
    constexpr double invphi = 0.6180339887498949;
    double x0 = a, x3 = c, x1, x2;
    if (std::abs(c - b) > std::abs(b - a)) {
        x1 = b;
        x2 = b + (1.0 - invphi) * (c - b);
    } else {
        x2 = b;
        x1 = b - (1.0 - invphi) * (b - a);
    }
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && std::abs(x3 - x0) >
                                          xtol + 1e-15 * (std::abs(x1) + std::abs(x2));
         ++it) {
        if (f2 < f1) {
            x0 = x1;
            x1 = x2;
            f1 = f2;
            x2 = invphi * x1 + (1.0 - invphi) * x3;
            f2 = f(x2);
        } else {
            x3 = x2;
            x2 = x1;
            f2 = f1;
            x1 = invphi * x2 + (1.0 - invphi) * x0;
            f1 = f(x1);
        }
    }
    return f1 < f2 ? x1 : x2;
}

double r_opt_exact(const EnvSummary& env, double n_th) {
    const double eps = symmetric_eps(env);
    if (eps >= 1.0)
        throw std::domain_error("r_opt_exact: requires eps < 1");
    if (!(env.c_e > 0.0))
        throw std::domain_error("r_opt_exact: requires C_e > 0");
    const double p = env.c_e * (1.0 - eps);
    const double d = env.c_e * (1.0 - eps * eps) + n_th * (1.0 - eps) + 1.0;
    return (d - std::sqrt(d * d - p * (p + 1.0))) / p;
}

double variance_at_ropt(const EnvSummary& env, double n_th) {
    const double eps = symmetric_eps(env);
    const double r = r_opt_exact(env, n_th);
    const double num =
        1.0 + 2.0 * n_th +
        env.c_e * ((r - 1.0) * (r - 1.0) + eps * (r * r + 1.0));
    const double den = 2.0 * (1.0 + env.c_e * (eps - 1.0) * (r * r - 1.0));
    return num / den;
}

ApproxOpt r_opt_approx(const EnvSummary& env, double n_th) {
    const double eps = symmetric_eps(env);
    const double ce = env.c_e;
    ApproxOpt out;
    const double q = 1.0 + 2.0 * ce * eps + 2.0 * n_th;
    out.r = 1.0 - std::sqrt(q / ce) + (1.0 + ce * eps + n_th) / ce;
    out.variance = std::sqrt(q / (4.0 * ce)) + n_th / (2.0 * ce);
    out.regime_flag = ce < 10.0 || eps > 0.1;
    return out;
}

VarianceBound variance_bound(const SystemParams& p) {
    if (!is_symmetric_setting(p))
        throw std::invalid_argument("variance_bound: symmetric setting required");
    const EnvSummary env = env_summary(p);
    const double kappa = p.kappa_1;
    const double om = p.omega_m;
    VarianceBound vb;
    vb.exact = std::sqrt(0.5 * symmetric_eps(env));
    vb.approximate = std::sqrt(p.kappa_c * kappa / (8.0 * p.j_1 * p.j_1) +
                               kappa * kappa / (16.0 * om * om));
    vb.floor = kappa / (4.0 * om);
    return vb;
}

JOptClosedForm j_opt_closed_form(const SystemParams& p, double n_th) {
    JOptClosedForm out;
    out.c = 4.0 * p.g_minus * p.g_minus / (p.gamma_m * p.kappa_c);
    out.c_th = out.c / (2.0 * n_th + 1.0);
    out.j_opt = std::pow(out.c_th, 0.25) * std::sqrt(p.omega_m * p.kappa_c);
    out.variance_opt =
        0.5 * (1.0 / std::sqrt(out.c_th) + p.kappa_1 / (2.0 * p.omega_m));
    return out;
}

double ce_large_j_approx(const SystemParams& p) {
    const double c = 4.0 * p.g_minus * p.g_minus / (p.gamma_m * p.kappa_c);
    const double om2 = p.omega_m * p.omega_m;
    return c / (1.0 + p.j_1 * p.j_1 * p.kappa_1 / (2.0 * om2 * p.kappa_c));
}

double variance_j_objective_approx(const SystemParams& p, double n_th) {
    const double c = 4.0 * p.g_minus * p.g_minus / (p.gamma_m * p.kappa_c);
    const double c_th = c / (2.0 * n_th + 1.0);
    const double om2 = p.omega_m * p.omega_m;
    const double j2 = p.j_1 * p.j_1;
    const double kappa = p.kappa_1;
    return 0.5 * std::sqrt((1.0 / c_th) * (1.0 + j2 * kappa / (2.0 * om2 * p.kappa_c)) +
                           kappa * p.kappa_c / (2.0 * j2) +
                           kappa * kappa / (4.0 * om2));
}

OptResult j_opt_numeric(const SystemParams& p, double n_th, double j_lo,
                        double j_hi, int coarse_points) {
    if (!(j_lo > 0.0) || j_hi < j_lo)
        throw std::invalid_argument("j_opt_numeric: need 0 < j_lo <= j_hi");
    auto objective = [&](double j) {
        SystemParams q = p;
        q.j_1 = q.j_2 = j;
        q.n_th = n_th;
        const EnvSummary env = env_summary(q);
        return variance_at_ropt(env, n_th);
    };
    OptResult out;
    out.parameter = "j";
    if (j_lo == j_hi) {
        out.argmin = j_lo;
        out.variance = objective(j_lo);
        out.s_db = squeezing_db(out.variance);
        out.method = "grid";
        out.flags.push_back("boundary");
        return out;
    }
    const ScalarMin m =
        minimize_on_grid(objective, log_grid(j_lo, j_hi, coarse_points), 1e-10 * j_hi);
    if (m.boundary)
        throw NoInteriorMinimum("no-interior-minimum: j optimum on range boundary");
    out.argmin = m.argmin;
    out.variance = m.value;
    out.s_db = squeezing_db(m.value);
    out.method = "golden-section";
    out.certificate_ok = neighbor_certificate(objective, m.argmin, m.value,
                                              1e-6 * std::max(1.0, m.argmin));
    return out;
}

OptResult asymmetric_j_opt(const SystemParams& p, double n_th, double j2,
                           double ratio_lo, double ratio_hi, int coarse_points) {
    if (!(j2 > 0.0))
        throw std::invalid_argument("asymmetric_j_opt: need j2 > 0");
    auto objective = [&](double ratio) {
        SystemParams q = p;
        q.j_1 = ratio * j2;
        q.j_2 = j2;
        q.n_th = n_th;
        const EnvSummary env = env_summary(q);
        if (!stability(q, env).stable) return kInf;
        const RateSet rs = rates(q, env);
        // rate form of the steady variance, valid for any stable ratio
        return variance_via_lindblad(rs);
    };
    const ScalarMin m = minimize_on_grid(
        objective, log_grid(ratio_lo, ratio_hi, coarse_points), 1e-12 * ratio_hi);
    if (m.boundary)
        throw NoInteriorMinimum("no-interior-minimum: ratio optimum on range boundary");
    OptResult out;
    out.parameter = "j_ratio";
    out.argmin = m.argmin;
    out.variance = m.value;
    out.s_db = squeezing_db(m.value);
    out.method = "golden-section";
    out.certificate_ok =
        neighbor_certificate(objective, m.argmin, m.value, 1e-6 * m.argmin);
    return out;
}

OptResult r_opt_numeric_langevin(const SystemParams& p, int grid_points,
                                 double tol, double integrator_rtol) {
    auto objective = [&](double r) {
        SystemParams q = p;
        q.g_plus = r * q.g_minus;
        try {
            const auto ss = steady_state_periodic(assemble(q, true), tol,
                                                  100'000'000LL, integrator_rtol);
            return mech_quadrature_variance(ss.averaged, 0.0);
        } catch (const UnstableDrift&) {
            return kInf;
        } catch (const NonConvergent&) {
            return kInf;
        }
    };
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i)
        grid[static_cast<std::size_t>(i)] = 0.999 * i / (grid_points - 1);
    const ScalarMin m = minimize_on_grid(objective, grid, 1e-4);
    if (!std::isfinite(m.value))
        throw UnstableDrift("r_opt_numeric_langevin: no stable drive ratio found");
    OptResult out;
    out.parameter = "r";
    out.argmin = m.argmin;
    out.variance = m.value;
    out.s_db = squeezing_db(m.value);
    out.method = m.boundary ? "grid" : "golden-section";
    if (m.boundary) out.flags.push_back("boundary");
    return out;
}

}  // namespace sqz
