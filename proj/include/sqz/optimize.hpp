// optimize.hpp — Optimal drive ratio (closed form and numeric), the
// large-cooperativity approximations and bounds, optimal inter-cavity
// coupling, and the asymmetric J1/J2 search.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqz/model.hpp"
#include "sqz/spectrum.hpp"

namespace sqz {

struct OptResult {
    std::string parameter;  // "r", "j" or "j_ratio"
    double argmin = 0.0;
    double variance = 0.0;
    double s_db = 0.0;
    std::string method;  // "closed-form", "grid" or "golden-section"
    std::vector<std::string> flags;
    bool certificate_ok = true;  // f(argmin) <= f at both probe neighbors
};

struct NoInteriorMinimum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Golden-section refinement of a bracketing triple a < b < c with
// f(b) <= min(f(a), f(c)).
double golden_section(const std::function<double(double)>& f, double a,
                      double b, double c, double xtol, int max_iter = 200);

// Optimal drive ratio for the symmetric setting (eps+ = eps- = eps < 1):
//   r_opt = (D - sqrt(D^2 - P (P + 1))) / P,
//   P = C_e (1 - eps),  D = C_e (1 - eps^2) + n_th (1 - eps) + 1.
// Throws std::domain_error when eps >= 1 or C_e <= 0.
double r_opt_exact(const EnvSummary& env, double n_th);

// Variance at the optimal ratio (same domain as r_opt_exact).
double variance_at_ropt(const EnvSummary& env, double n_th);

struct ApproxOpt {
    double r = 0.0;
    double variance = 0.0;
    bool regime_flag = false;  // set when C_e < 10 or eps > 0.1
};

// Large-C_e, small-eps expansions:
//   r_opt ~ 1 - sqrt((1 + 2 C_e eps + 2 n_th)/C_e) + (1 + C_e eps + n_th)/C_e
//   var   ~ sqrt((1 + 2 C_e eps + 2 n_th)/(4 C_e)) + n_th/(2 C_e)
ApproxOpt r_opt_approx(const EnvSummary& env, double n_th);

struct VarianceBound {
    double exact = 0.0;       // sqrt(eps/2) with exact eps
    double approximate = 0.0; // sqrt(kappa_c kappa/(8 J^2) + kappa^2/16)
    double floor = 0.0;       // kappa/4, the J -> infinity limit
};

// Infinite-cooperativity floor of the optimized variance (symmetric setting).
VarianceBound variance_bound(const SystemParams& p);

struct JOptClosedForm {
    double j_opt = 0.0;         // C_th^{1/4} sqrt(kappa_c)
    double variance_opt = 0.0;  // (sqrt(1/C_th) + kappa/2)/2
    double c = 0.0;             // 4 G-^2/(gamma kappa_c)
    double c_th = 0.0;          // C/(2 n_th + 1)
};

JOptClosedForm j_opt_closed_form(const SystemParams& p, double n_th);

// C_e ~ C (1 + J^2 kappa/(2 kappa_c))^{-1}, the kappa << 1 approximation.
double ce_large_j_approx(const SystemParams& p);

// Approximate optimized variance as a function of J,
//   (1/2) sqrt(C_th^{-1} (1 + J^2 kappa/(2 kappa_c)) + kappa kappa_c/(2 J^2)
//              + kappa^2/4);
// its exact minimizer reproduces the closed forms above.
double variance_j_objective_approx(const SystemParams& p, double n_th);

// Minimizes variance_at_ropt over J (symmetric setting) by golden-section on
// a coarse log grid. Throws NoInteriorMinimum when the best coarse point sits
// on the boundary of a multi-point range; a degenerate single-point range is
// returned with a "boundary" flag.
OptResult j_opt_numeric(const SystemParams& p, double n_th, double j_lo,
                        double j_hi, int coarse_points = 33);

// Optimal J1/J2 at fixed J2 and fixed drive ratio, evaluated through the
// general (asymmetric) spectrum path. Unstable points score +infinity.
OptResult asymmetric_j_opt(const SystemParams& p, double n_th, double j2,
                           double ratio_lo = 0.05, double ratio_hi = 20.0,
                           int coarse_points = 65);

// Drive-ratio optimization on the exact Gaussian (Langevin) engine:
// grid over r (grid_points), then golden-section. Used by the fig1b preset.
OptResult r_opt_numeric_langevin(const SystemParams& p, int grid_points = 61,
                                 double tol = 1e-8,
                                 double integrator_rtol = 1e-9);

}  // namespace sqz
