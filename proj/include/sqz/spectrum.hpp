// spectrum.hpp — Spectral density of the engineered optical bath seen by the
// mechanics, plus derived summary quantities and a numerical feature scan.

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sqz/model.hpp"

namespace sqz {

// One sampled point of the bath spectrum.
struct SpectrumPoint {
    double omega = 0.0;
    std::complex<double> a_value;  // cavity response A(omega)
    double s_op = 0.0;             // 2*Re[1/A(omega)]
};

struct EnvSummary {
    double s0 = 0.0;        // S_op(0)
    double s_plus = 0.0;    // S_op(+2)
    double s_minus = 0.0;   // S_op(-2)
    double eps_plus = 0.0;  // S_op(+2)/S_op(0)
    double eps_minus = 0.0; // S_op(-2)/S_op(0)
    double c_e = 0.0;       // G-^2 S_op(0) / gamma
};

// A(omega) = kappa_c/2 - i*omega + i * sum_j J_j^2/(omega + delta_j + i*kappa_j/2).
// Finite for all real omega as long as the kappa_j are positive.
std::complex<double> response(const SystemParams& p, double omega);

// S_op(omega) = 1/A + 1/A* = 2*Re[1/A]; strictly positive.
double s_op(const SystemParams& p, double omega);

SpectrumPoint spectrum_point(const SystemParams& p, double omega);

// Closed form S_op(0) = 2 / (kappa_c/2 + J^2 kappa/(kappa^2/4 + 4)), valid
// only for the symmetric setting. Throws std::invalid_argument otherwise.
double s0_closed_form(const SystemParams& p);

struct EpsilonApprox {
    double value = 0.0;       // kappa_c*kappa/(4 J^2) + kappa^2/8
    bool regime_flag = false; // set when kappa >= 1/2 or J^2 <= 10*kappa_c*kappa
};

// Large-J approximation of eps = S_op(±2)/S_op(0) for the symmetric setting.
EpsilonApprox epsilon_approx(const SystemParams& p);

// Exact evaluations of S_op at 0 and ±2 plus the derived ratios and the
// effective cooperativity.
EnvSummary env_summary(const SystemParams& p);

// ---------------------------------------------------------------------------
// Numerical feature scan

enum class SpectrumRegime { SingleLorentzian, EitLike, ThreePeak };

struct SpectralFeature {
    std::string kind;                // "dip" or "peak"
    double location_predicted = 0.0; // nan when no formula applies
    double location_measured = 0.0;
    double width_predicted = 0.0;    // paper half-width convention
    double width_measured = 0.0;     // full width at half maximum
};

struct FeatureReport {
    SpectrumRegime regime = SpectrumRegime::SingleLorentzian;
    double grid_spacing = 0.0;
    std::vector<SpectralFeature> features;
};

// Scans s_op on >= 4001 points over [-2W, 2W], W = sqrt(2 J^2 + 4), refines
// every bracketed extremum by golden-section, and measures FWHMs by bisection
// on the half-maximum crossings. Predicted peak locations are 0 and ±W;
// predicted dips sit at -delta_1 and -delta_2. The width formulas are
// half-widths; the measured column carries the FWHM. Requires the symmetric
// setting.
FeatureReport spectral_features(const SystemParams& p, int grid_points = 4001);

const char* to_string(SpectrumRegime r);

}  // namespace sqz
