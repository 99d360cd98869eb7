// weakcoupling.hpp — Effective master-equation layer: cooling/heating/
// squeezing rates, Lindblad diagonalization through a Bogoliubov mode,
// stability, the closed-form steady-state variance and feasibility bounds.

#pragma once

#include <stdexcept>

#include "sqz/model.hpp"
#include "sqz/spectrum.hpp"

namespace sqz {

struct RateSet {
    double gamma_minus = 0.0;  // cooling
    double gamma_plus = 0.0;   // heating
    double gamma_s = 0.0;      // squeezing
};

// Parameters of the diagonalized (Lindblad) form. The mode B' obeys
// d_m = u B' + v B'^dag with u^2 - v^2 = 1.
struct LindbladForm {
    double a = 0.0;  // gamma_minus + gamma_plus
    double b = 0.0;  // sqrt(a^2 - 4 gamma_s^2)
    double u = 1.0;
    double v = 0.0;
    double gamma_bp_minus = 0.0;  // (gamma_minus - gamma_plus + b)/2
    double gamma_bp_plus = 0.0;   // (gamma_plus - gamma_minus + b)/2
    double n_bp = 0.0;            // steady occupation of B' (stable case)
};

struct StabilityReport {
    bool stable = false;
    double margin = 0.0;  // RHS - LHS of the drive-ratio bound
};

struct FeasibilityReport {
    double n_th_bound = 0.0;       // max thermal occupation allowing squeezing
    bool n_th_ok = false;
    double eps_minus_bound = 0.0;  // max eps_minus allowing squeezing
    bool eps_minus_ok = false;
    // Dependence of the variance on eps_plus: (A + B x)/(C + D x) with pole
    // -C/D and intercept A/C. 'b': intercept below 1/2, variance grows with
    // eps_plus toward 1/2. 'c': intercept above 1/2, variance decreases
    // toward 1/2 (never squeezed). 'd': C/D < 0, no squeezing at all.
    char eps_plus_case = 'b';
    double pole_cd = 0.0;       // C/D
    double intercept_ac = 0.0;  // A/C, the variance at eps_plus = 0
};

struct NonLindbladizable : std::domain_error {
    using std::domain_error::domain_error;
};

// gamma_minus = gamma (1+n_th) + G-^2 s0 + G+^2 s_plus
// gamma_plus  = gamma n_th     + G+^2 s0 + G-^2 s_minus
// gamma_s     = G+ G- s0
RateSet rates(const SystemParams& p, const EnvSummary& env);

// Diagonalizes the master equation into thermal form for the Bogoliubov mode
// B'. Throws NonLindbladizable when b is imaginary or b <= 1e-12 * a. The
// gamma_s -> 0 limit is continuous: (u, v) -> (1, 0).
LindbladForm lindblad_form(const RateSet& rs);

// Drive-ratio stability bound; equivalent to gamma_minus > gamma_plus.
StabilityReport stability(const SystemParams& p, const EnvSummary& env);

// Steady-state variance of the X1 mechanical quadrature,
//   (1/2) [e^{-2z} + (eps- + (1+2 n_th)/C_e) cosh^2 z + eps+ sinh^2 z]
//       / [1 + (1/C_e - eps-) cosh^2 z + eps+ sinh^2 z],  tanh z = G+/G-.
// Throws std::domain_error when unstable or r >= 1.
double variance_x1(const SystemParams& p, const EnvSummary& env);

// Same expression with (r, eps±, C_e, n_th) supplied directly.
double variance_x1_from(double r, double eps_minus, double eps_plus,
                        double c_e, double n_th);

// S_dB = -10 log10(2 <dX1^2>); throws std::domain_error on variance <= 0.
double squeezing_db(double variance);

// Independent route to the same number: (u+v)^2 (2 n_bp + 1)/2 from the
// thermal state of B'. Valid for any stable RateSet, including r >= 1.
double variance_via_lindblad(const RateSet& rs);

// Quadrature variance of a squeezed vacuum over theta, general phase beta.
// Reduces to (e^{-2r} cos^2 t + e^{2r} sin^2 t)/2 at beta = 0.
double quadrature_variance_squeezed(double r, double beta, double theta);

// Necessary conditions for squeezing and the eps_plus-dependence case.
// Requires r < 1.
FeasibilityReport feasibility(const SystemParams& p, const EnvSummary& env);

}  // namespace sqz
