#include "sqz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqz/optimize.hpp"

namespace sqz {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::complex<double> response(const SystemParams& p, double omega) {
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> a = 0.5 * p.kappa_c - i * omega;
    a += i * p.j_1 * p.j_1 / (omega + p.delta_1 + i * 0.5 * p.kappa_1);
    a += i * p.j_2 * p.j_2 / (omega + p.delta_2 + i * 0.5 * p.kappa_2);
    return a;
}

double s_op(const SystemParams& p, double omega) {
    return 2.0 * std::real(1.0 / response(p, omega));
}

SpectrumPoint spectrum_point(const SystemParams& p, double omega) {
    SpectrumPoint pt;
    pt.omega = omega;
    pt.a_value = response(p, omega);
    pt.s_op = 2.0 * std::real(1.0 / pt.a_value);
    return pt;
}

double s0_closed_form(const SystemParams& p) {
    if (!is_symmetric_setting(p))
        throw std::invalid_argument("s0_closed_form: symmetric setting required");
    const double om2 = p.omega_m * p.omega_m;
    const double kappa = p.kappa_1;
    return 2.0 / (0.5 * p.kappa_c +
                  p.j_1 * p.j_1 * kappa / (0.25 * kappa * kappa + 4.0 * om2));
}

EpsilonApprox epsilon_approx(const SystemParams& p) {
    const double kappa = p.kappa_1;
    const double j = p.j_1;
    const double om2 = p.omega_m * p.omega_m;
    EpsilonApprox out;
    out.value = p.kappa_c * kappa / (4.0 * j * j) + kappa * kappa / (8.0 * om2);
    out.regime_flag = kappa >= 0.5 * p.omega_m || j * j <= 10.0 * p.kappa_c * kappa;
    return out;
}

EnvSummary env_summary(const SystemParams& p) {
    EnvSummary env;
    env.s0 = s_op(p, 0.0);
    env.s_plus = s_op(p, 2.0 * p.omega_m);
    env.s_minus = s_op(p, -2.0 * p.omega_m);
    env.eps_plus = env.s_plus / env.s0;
    env.eps_minus = env.s_minus / env.s0;
    env.c_e = p.g_minus * p.g_minus * env.s0 / p.gamma_m;
    return env;
}

// ---------------------------------------------------------------------------

namespace {

struct Extremum {
    double omega;
    double value;
    bool is_max;
};

// Golden-section polish of a bracketed extremum of s_op.
double refine(const SystemParams& p, double lo, double mid, double hi,
              bool is_max, double xtol) {
    auto f = [&](double w) { return is_max ? -s_op(p, w) : s_op(p, w); };
    return golden_section(f, lo, mid, hi, xtol);
}

// FWHM by bisection on s(w) = half on both flanks of a refined maximum.
double measure_fwhm(const SystemParams& p, const std::vector<double>& grid,
                    const std::vector<double>& vals, double w_peak) {
    const double half = 0.5 * s_op(p, w_peak);
    const long n = static_cast<long>(grid.size());
    auto bisect = [&](double inside, double outside) {
        // s(inside) > half > s(outside)
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (inside + outside);
            (s_op(p, m) > half ? inside : outside) = m;
            if (std::abs(outside - inside) < 1e-13 * (1.0 + std::abs(m))) break;
        }
        return 0.5 * (inside + outside);
    };
    // walk the grid outward from the peak to bracket each crossing
    auto cross = [&](bool rightward) -> double {
        long i = std::upper_bound(grid.begin(), grid.end(), w_peak) - grid.begin();
        if (!rightward) --i;  // first index at or left of the peak
        double inner = w_peak;
        for (; i >= 0 && i < n; i += rightward ? 1 : -1) {
            const auto iu = static_cast<std::size_t>(i);
            if (vals[iu] < half) return bisect(inner, grid[iu]);
            inner = grid[iu];
        }
        return kNaN;
    };
    const double left = cross(false);
    const double right = cross(true);
    if (std::isnan(left) || std::isnan(right)) return kNaN;
    return right - left;
}

}  // namespace

const char* to_string(SpectrumRegime r) {
    switch (r) {
        case SpectrumRegime::SingleLorentzian: return "single-lorentzian";
        case SpectrumRegime::EitLike: return "eit-like";
        case SpectrumRegime::ThreePeak: return "three-peak";
    }
    return "?";
}

FeatureReport spectral_features(const SystemParams& p, int grid_points) {
    if (!is_symmetric_setting(p))
        throw std::invalid_argument("spectral_features: symmetric setting required");
    FeatureReport report;

    const double om2 = p.omega_m * p.omega_m;
    const double kappa = p.kappa_1;
    const double j = p.j_1;

    if (j == 0.0) {
        report.regime = SpectrumRegime::SingleLorentzian;
        report.grid_spacing = 0.0;
        SpectralFeature f;
        f.kind = "peak";
        f.location_predicted = 0.0;
        f.location_measured = 0.0;
        f.width_predicted = 0.5 * p.kappa_c;  // Lorentzian half-width
        f.width_measured = p.kappa_c;         // exact FWHM
        report.features.push_back(f);
        return report;
    }

    const double side = std::sqrt(2.0 * j * j + 4.0 * om2);
    const int n = std::max(grid_points, 4001);
    std::vector<double> grid(static_cast<std::size_t>(n));
    std::vector<double> vals(static_cast<std::size_t>(n));
    const double lo = -2.0 * side, hi = 2.0 * side;
    const double spacing = (hi - lo) / (n - 1);
    report.grid_spacing = spacing;
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + spacing * i;
        vals[static_cast<std::size_t>(i)] = s_op(p, grid[static_cast<std::size_t>(i)]);
    }

    std::vector<Extremum> extrema;
    const double xtol = 1e-11 * side;
    for (int i = 1; i + 1 < n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const bool is_max = vals[iu] > vals[iu - 1] && vals[iu] > vals[iu + 1];
        const bool is_min = vals[iu] < vals[iu - 1] && vals[iu] < vals[iu + 1];
        if (!is_max && !is_min) continue;
        const double w = refine(p, grid[iu - 1], grid[iu], grid[iu + 1], is_max, xtol);
        extrema.push_back({w, s_op(p, w), is_max});
    }

    const long n_max = std::count_if(extrema.begin(), extrema.end(),
                                     [](const Extremum& e) { return e.is_max; });
    const long n_min = static_cast<long>(extrema.size()) - n_max;
    report.regime = (n_max >= 3 && n_min >= 2) ? SpectrumRegime::ThreePeak
                                               : SpectrumRegime::EitLike;

    auto nearest = [&](double target, bool want_max) -> const Extremum* {
        const Extremum* best = nullptr;
        for (const auto& e : extrema) {
            if (e.is_max != want_max) continue;
            if (!best || std::abs(e.omega - target) < std::abs(best->omega - target))
                best = &e;
        }
        return best;
    };

    auto push = [&](const char* kind, double loc_pred, double width_pred,
                    bool want_max) {
        SpectralFeature f;
        f.kind = kind;
        f.location_predicted = loc_pred;
        f.width_predicted = width_pred;
        if (const Extremum* e = nearest(loc_pred, want_max)) {
            f.location_measured = e->omega;
            f.width_measured = want_max ? measure_fwhm(p, grid, vals, e->omega) : kNaN;
        } else {
            f.location_measured = kNaN;
            f.width_measured = kNaN;
        }
        report.features.push_back(f);
    };

    push("dip", -p.delta_1, kNaN, false);
    push("dip", -p.delta_2, kNaN, false);
    const double mid_width = (p.kappa_c - kappa) * om2 / (j * j) + 0.5 * kappa;
    const double side_width =
        0.25 * (p.kappa_c + kappa) - (p.kappa_c - kappa) * om2 / (2.0 * j * j);
    push("peak", 0.0, mid_width, true);
    if (report.regime == SpectrumRegime::ThreePeak) {
        push("peak", -side, side_width, true);
        push("peak", +side, side_width, true);
    }
    return report;
}

}  // namespace sqz
