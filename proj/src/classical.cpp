#include "sqz/classical.hpp"

#include <cmath>

namespace sqz {

namespace {
// Denominator of the driven-cavity response at drive frequency omega_c + s,
// s = ±1 in units of omega_m.
std::complex<double> drive_denominator(const DriveSpec& ds,
                                       const SystemParams& p, double s) {
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> den = s * p.omega_m + i * 0.5 * p.kappa_c;
    const double js[2] = {p.j_1, p.j_2};
    const double omegas[2] = {ds.omega_1, ds.omega_2};
    const double kappas[2] = {p.kappa_1, p.kappa_2};
    for (int k = 0; k < 2; ++k) {
        const double detune = s * p.omega_m - (omegas[k] - ds.omega_c);
        den -= js[k] * js[k] / (detune + i * 0.5 * kappas[k]);
    }
    return den;
}
}  // namespace

DressedCouplings dressed_couplings(const DriveSpec& ds, const SystemParams& p) {
    DressedCouplings dc;
    dc.alpha_bar_plus = ds.alpha_plus / drive_denominator(ds, p, +1.0);
    dc.alpha_bar_minus = ds.alpha_minus / drive_denominator(ds, p, -1.0);
    dc.g_plus = ds.g0 * std::abs(dc.alpha_bar_plus);
    dc.g_minus = ds.g0 * std::abs(dc.alpha_bar_minus);
    return dc;
}

std::pair<ToneCoefficients, ToneCoefficients> auxiliary_amplitudes(
    const DriveSpec& ds, const SystemParams& p, const DressedCouplings& dc) {
    const std::complex<double> i(0.0, 1.0);
    std::pair<ToneCoefficients, ToneCoefficients> out;
    ToneCoefficients* coeffs[2] = {&out.first, &out.second};
    const double js[2] = {p.j_1, p.j_2};
    const double omegas[2] = {ds.omega_1, ds.omega_2};
    const double kappas[2] = {p.kappa_1, p.kappa_2};
    for (int k = 0; k < 2; ++k) {
        const double dp = ds.omega_c + p.omega_m - omegas[k];
        const double dm = ds.omega_c - p.omega_m - omegas[k];
        coeffs[k]->c_plus = js[k] * dc.alpha_bar_plus / (dp + i * 0.5 * kappas[k]);
        coeffs[k]->c_minus = js[k] * dc.alpha_bar_minus / (dm + i * 0.5 * kappas[k]);
    }
    return out;
}

MechDisplacement mech_displacement(const DriveSpec& ds, const SystemParams& p,
                                   const DressedCouplings& dc) {
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> ap = dc.alpha_bar_plus;
    const std::complex<double> am = dc.alpha_bar_minus;
    const double om = p.omega_m;
    MechDisplacement md;
    md.static_part = -ds.g0 * (ap * ap + am * am) / (om - i * 0.5 * p.gamma_m);
    md.minus_tone = ds.g0 * ap * am / (om + i * 0.5 * p.gamma_m);
    md.plus_tone = -ds.g0 * ap * am / (3.0 * om - i * 0.5 * p.gamma_m);
    md.frequency_shift = ds.g0 * 2.0 * std::real(md.static_part);
    return md;
}

double validity_ratio(const SystemParams& p) {
    return linearization_ratio(p);
}

}  // namespace sqz
