#include "sqz/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqz {

double SystemParams::drive_ratio() const {
    if (g_minus == 0.0) return g_plus == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return g_plus / g_minus;
}

SqueezeParam SqueezeParam::from_ratio(double r) {
    if (r < 0.0) throw std::invalid_argument("SqueezeParam: ratio must be >= 0");
    if (r >= 1.0) throw std::invalid_argument("SqueezeParam: zeta undefined for ratio >= 1");
    return {r, std::atanh(r)};
}

double linearization_ratio(const SystemParams& p) {
    const double scale =
        std::max({std::sqrt(p.omega_m * p.kappa_c), p.j_1, p.j_2});
    return std::max(p.g_plus, p.g_minus) / scale;
}

std::vector<Diagnostic> validate(const SystemParams& p) {
    std::vector<Diagnostic> out;
    auto error = [&](const std::string& code, const std::string& msg) {
        out.push_back({Severity::Error, code, msg});
    };
    auto warn = [&](const std::string& code, const std::string& msg) {
        out.push_back({Severity::Warning, code, msg});
    };

    if (!(p.omega_m > 0.0)) error("nonpositive-frequency", "omega_m must be > 0");
    if (!(p.kappa_c > 0.0)) error("nonpositive-damping", "kappa_c must be > 0");
    if (!(p.kappa_1 > 0.0)) error("nonpositive-damping", "kappa_1 must be > 0");
    if (!(p.kappa_2 > 0.0)) error("nonpositive-damping", "kappa_2 must be > 0");
    if (!(p.gamma_m > 0.0)) error("nonpositive-damping", "gamma_m must be > 0");
    if (p.g_plus < 0.0) error("negative-coupling", "g_plus must be >= 0");
    if (p.g_minus < 0.0) error("negative-coupling", "g_minus must be >= 0");
    if (p.j_1 < 0.0) error("negative-coupling", "j_1 must be >= 0");
    if (p.j_2 < 0.0) error("negative-coupling", "j_2 must be >= 0");
    if (p.n_th < 0.0) error("negative-occupation", "n_th must be >= 0");
    if (has_error(out)) return out;

    const double kappa_min = std::min({p.kappa_c, p.kappa_1, p.kappa_2});
    if (p.g_minus > kappa_min / 10.0) {
        std::ostringstream msg;
        msg << "weak-coupling regime left: g_minus = " << p.g_minus
            << " exceeds min(kappa)/10 = " << kappa_min / 10.0
            << "; the master-equation layer may deviate from the exact"
               " solution (1/10 threshold is a heuristic choice)";
        warn("weak-coupling", msg.str());
    }
    const double ratio = linearization_ratio(p);
    if (ratio > 0.1) {
        std::ostringstream msg;
        msg << "linearization bound violated: max(G+,G-)/max(sqrt(kappa_c),J) = "
            << ratio << " > 0.1";
        warn("linearization", msg.str());
    }
    return out;
}

bool has_error(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Error;
    });
}

void require_valid(const SystemParams& p) {
    const auto diags = validate(p);
    if (!has_error(diags)) return;
    std::ostringstream msg;
    msg << "invalid parameters:";
    for (const auto& d : diags)
        if (d.severity == Severity::Error) msg << " [" << d.code << "] " << d.message << ";";
    throw std::invalid_argument(msg.str());
}

SystemParams symmetric_setting(double kappa_c, double kappa, double j,
                               double g_minus, double r, double gamma_m,
                               double n_th) {
    if (r < 0.0) throw std::invalid_argument("symmetric_setting: r must be >= 0");
    SystemParams p;
    p.omega_m = 1.0;
    p.kappa_c = kappa_c;
    p.kappa_1 = kappa;
    p.kappa_2 = kappa;
    p.delta_1 = 2.0;
    p.delta_2 = -2.0;
    p.j_1 = j;
    p.j_2 = j;
    p.g_minus = g_minus;
    p.g_plus = r * g_minus;
    p.gamma_m = gamma_m;
    p.n_th = n_th;
    require_valid(p);
    return p;
}

bool is_symmetric_setting(const SystemParams& p) {
    return p.delta_1 == 2.0 * p.omega_m && p.delta_2 == -2.0 * p.omega_m &&
           p.j_1 == p.j_2 && p.kappa_1 == p.kappa_2;
}

}  // namespace sqz
