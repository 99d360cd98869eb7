// model.hpp — System parameters, unit conventions, validation diagnostics.
//
// All quantities are stored in units of the mechanical frequency (omega_m == 1
// internally). File loaders normalize absolute inputs on the way in.

#pragma once

#include <string>
#include <vector>

namespace sqz {

struct SystemParams {
    double omega_m = 1.0;   // mechanical frequency (the unit)
    double kappa_c = 1.0;   // main-cavity damping
    double kappa_1 = 1.0;   // auxiliary-cavity dampings
    double kappa_2 = 1.0;
    double delta_1 = 2.0;   // detunings, delta_i = omega_c - omega_i
    double delta_2 = -2.0;
    double j_1 = 0.0;       // inter-cavity couplings
    double j_2 = 0.0;
    double g_plus = 0.0;    // dressed drive couplings (real, nonnegative)
    double g_minus = 0.0;
    double gamma_m = 1e-5;  // mechanical damping
    double n_th = 0.0;      // thermal phonon occupation

    // Drive ratio G+/G-; 0/0 is treated as 0.
    double drive_ratio() const;
};

// Drive ratio r together with the squeeze parameter zeta, tanh(zeta) = r.
// zeta is only defined for r < 1.
struct SqueezeParam {
    double r = 0.0;
    double zeta = 0.0;

    static SqueezeParam from_ratio(double r);
};

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string code;
    std::string message;
};

// Pure diagnostic pass: hard errors for nonpositive rates / negative
// couplings, advisories when the weak-coupling or linearization regimes of
// the underlying treatment are left. Never throws.
std::vector<Diagnostic> validate(const SystemParams& p);

bool has_error(const std::vector<Diagnostic>& diags);

// Throws std::invalid_argument listing all error-level diagnostics.
void require_valid(const SystemParams& p);

// Symmetric configuration: delta_1 = -delta_2 = 2, j_1 = j_2, kappa_1 =
// kappa_2, G+ = r*G-. Throws on validation errors.
SystemParams symmetric_setting(double kappa_c, double kappa, double j,
                               double g_minus, double r, double gamma_m,
                               double n_th);

// True when delta_1 = -delta_2 = 2*omega_m, j_1 = j_2 and kappa_1 = kappa_2
// (exact comparisons; symmetric_setting produces such parameters bit-for-bit).
bool is_symmetric_setting(const SystemParams& p);

// max(G+, G-) / max(sqrt(omega_m*kappa_c), j_1, j_2); the linearization is
// trustworthy only when this is small. classical::validity_ratio forwards
// here so model::validate needs no upward dependency.
double linearization_ratio(const SystemParams& p);

}  // namespace sqz
