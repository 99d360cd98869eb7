// classical.hpp — Coherent-amplitude front end: converts laser drive
// amplitudes into the dressed couplings G± and reports the classical
// auxiliary/mechanical displacements and the linearization validity ratio.

#pragma once

#include <complex>
#include <utility>

#include "sqz/model.hpp"

namespace sqz {

struct DriveSpec {
    std::complex<double> alpha_plus{0.0, 0.0};   // drive at omega_c + 1
    std::complex<double> alpha_minus{0.0, 0.0};  // drive at omega_c - 1
    double omega_c = 0.0;
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double g0 = 0.0;  // single-photon optomechanical coupling
};

struct DressedCouplings {
    double g_plus = 0.0;   // g0 * |alpha_bar_plus|
    double g_minus = 0.0;  // g0 * |alpha_bar_minus|
    std::complex<double> alpha_bar_plus{0.0, 0.0};
    std::complex<double> alpha_bar_minus{0.0, 0.0};
};

// Fourier coefficients of one auxiliary amplitude,
// alpha_i(t) = c_plus e^{-i omega_+ t} + c_minus e^{-i omega_- t}.
struct ToneCoefficients {
    std::complex<double> c_plus{0.0, 0.0};
    std::complex<double> c_minus{0.0, 0.0};
};

// beta(t) = static_part + minus_tone e^{-2it} + plus_tone e^{+2it}.
struct MechDisplacement {
    std::complex<double> static_part{0.0, 0.0};
    std::complex<double> minus_tone{0.0, 0.0};
    std::complex<double> plus_tone{0.0, 0.0};
    double frequency_shift = 0.0;  // g0 (beta + beta*) diagnostic, never fed back
};

// alpha_bar_± = alpha_± / (±1 + i kappa_c/2 - sum_i J_i^2/(±1 - (omega_i -
// omega_c) + i kappa_i/2)); G± = g0 |alpha_bar_±| with phases reported in
// alpha_bar_±.
DressedCouplings dressed_couplings(const DriveSpec& ds, const SystemParams& p);

std::pair<ToneCoefficients, ToneCoefficients> auxiliary_amplitudes(
    const DriveSpec& ds, const SystemParams& p, const DressedCouplings& dc);

MechDisplacement mech_displacement(const DriveSpec& ds, const SystemParams& p,
                                   const DressedCouplings& dc);

// max(G+, G-) / max(sqrt(kappa_c), j_1, j_2), units of omega_m.
double validity_ratio(const SystemParams& p);

}  // namespace sqz
