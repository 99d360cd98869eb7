#include "sqz/weakcoupling.hpp"

#include <cmath>
#include <stdexcept>

namespace sqz {

RateSet rates(const SystemParams& p, const EnvSummary& env) {
    const double gm2 = p.g_minus * p.g_minus;
    const double gp2 = p.g_plus * p.g_plus;
    RateSet rs;
    rs.gamma_minus = p.gamma_m * (1.0 + p.n_th) + gm2 * env.s0 + gp2 * env.s_plus;
    rs.gamma_plus = p.gamma_m * p.n_th + gp2 * env.s0 + gm2 * env.s_minus;
    rs.gamma_s = p.g_plus * p.g_minus * env.s0;
    return rs;
}

LindbladForm lindblad_form(const RateSet& rs) {
    LindbladForm lf;
    lf.a = rs.gamma_minus + rs.gamma_plus;
    const double disc = lf.a * lf.a - 4.0 * rs.gamma_s * rs.gamma_s;
    if (disc < 0.0)
        throw NonLindbladizable("non-Lindbladizable: (G- + G+)^2 < 4 Gs^2, b imaginary");
    lf.b = std::sqrt(disc);
    if (lf.b <= 1e-12 * lf.a)
        throw NonLindbladizable("non-Lindbladizable: b vanishes (degenerate Bogoliubov mode)");
    // Stable evaluation of the Bogoliubov pair. With a - b = 4 Gs^2/(a + b),
    //   u = (Gs/b) sqrt(2b/(a-b)) = sqrt((a+b)/(2b)),
    //   v = -sqrt((a-b)/(2b))     = -2 Gs / sqrt(2b(a+b)),
    // which keeps u^2 - v^2 = 1 exact and has the continuous Gs -> 0 limit
    // (u, v) -> (1, 0).
    lf.u = std::sqrt((lf.a + lf.b) / (2.0 * lf.b));
    lf.v = -2.0 * rs.gamma_s / std::sqrt(2.0 * lf.b * (lf.a + lf.b));
    lf.gamma_bp_minus = 0.5 * (rs.gamma_minus - rs.gamma_plus + lf.b);
    lf.gamma_bp_plus = 0.5 * (rs.gamma_plus - rs.gamma_minus + lf.b);
    lf.n_bp = lf.gamma_bp_plus / (lf.gamma_bp_minus - lf.gamma_bp_plus);
    return lf;
}

StabilityReport stability(const SystemParams& p, const EnvSummary& env) {
    const double r = p.drive_ratio();
    StabilityReport rep;
    // r^2 (1 - eps+) < 1 - eps- + 1/C_e, which is gamma_minus > gamma_plus.
    rep.stable = r * r * (1.0 - env.eps_plus) < 1.0 - env.eps_minus + 1.0 / env.c_e;
    rep.margin = (1.0 - env.eps_minus + 1.0 / env.c_e) / (1.0 - env.eps_plus) - r * r;
    return rep;
}

double variance_x1_from(double r, double eps_minus, double eps_plus,
                        double c_e, double n_th) {
    if (r >= 1.0 - 1e-12)
        throw std::domain_error("variance_x1: drive ratio must be < 1");
    if (r < 0.0) throw std::domain_error("variance_x1: drive ratio must be >= 0");
    const double z = std::atanh(r);
    const double ch2 = std::cosh(z) * std::cosh(z);
    const double sh2 = std::sinh(z) * std::sinh(z);
    const double num = std::exp(-2.0 * z) +
                       (eps_minus + (1.0 + 2.0 * n_th) / c_e) * ch2 +
                       eps_plus * sh2;
    const double den = 1.0 + (1.0 / c_e - eps_minus) * ch2 + eps_plus * sh2;
    if (den <= 0.0) throw std::domain_error("variance_x1: unstable configuration");
    return 0.5 * num / den;
}

double variance_x1(const SystemParams& p, const EnvSummary& env) {
    if (!stability(p, env).stable)
        throw std::domain_error("variance_x1: unstable configuration");
    return variance_x1_from(p.drive_ratio(), env.eps_minus, env.eps_plus,
                            env.c_e, p.n_th);
}

double squeezing_db(double variance) {
    if (!(variance > 0.0))
        throw std::domain_error("squeezing_db: variance must be positive");
    return -10.0 * std::log10(2.0 * variance);
}

double variance_via_lindblad(const RateSet& rs) {
    const LindbladForm lf = lindblad_form(rs);
    if (lf.gamma_bp_minus <= lf.gamma_bp_plus)
        throw std::domain_error("variance_via_lindblad: unstable configuration");
    const double uv = lf.u + lf.v;
    return 0.5 * uv * uv * (2.0 * lf.n_bp + 1.0);
}

double quadrature_variance_squeezed(double r, double beta, double theta) {
    if (r < 0.0)
        throw std::domain_error("quadrature_variance_squeezed: r must be >= 0");
    const double sh2 = std::sinh(r) * std::sinh(r);
    const double cs = std::cosh(r) * std::sinh(r);
    const double c = std::cos(theta), s = std::sin(theta);
    return (sh2 - std::cos(beta) * cs + 0.5) * c * c +
           (sh2 + std::cos(beta) * cs + 0.5) * s * s -
           std::sin(2.0 * theta) * std::sin(beta) * cs;
}

FeasibilityReport feasibility(const SystemParams& p, const EnvSummary& env) {
    const double r = p.drive_ratio();
    if (r >= 1.0) throw std::domain_error("feasibility: requires r < 1");
    const double z = std::atanh(r);
    const double ch2 = std::cosh(z) * std::cosh(z);
    const double sh2 = std::sinh(z) * std::sinh(z);
    const double e2z = std::exp(-2.0 * z);

    FeasibilityReport rep;
    rep.n_th_bound = env.c_e * (1.0 - e2z) / (2.0 * ch2);
    rep.n_th_ok = p.n_th < rep.n_th_bound;
    rep.eps_minus_bound = (1.0 - e2z) / (2.0 * ch2) - p.n_th / env.c_e;
    rep.eps_minus_ok = env.eps_minus < rep.eps_minus_bound;

    // Variance vs eps_plus is (A + B x)/(C + D x); exact sign tests on the
    // pole C/D and the intercept A/C select the case.
    const double c_term = 1.0 + (1.0 / env.c_e - env.eps_minus) * ch2;
    rep.pole_cd = c_term / sh2;  // +inf at r = 0, which lands in case b/c
    rep.intercept_ac =
        0.5 * (e2z + (env.eps_minus + (1.0 + 2.0 * p.n_th) / env.c_e) * ch2) / c_term;
    if (rep.pole_cd < 0.0)
        rep.eps_plus_case = 'd';
    else
        rep.eps_plus_case = rep.intercept_ac < 0.5 ? 'b' : 'c';
    return rep;
}

}  // namespace sqz
