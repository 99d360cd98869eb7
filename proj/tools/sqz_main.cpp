// sqz — steady-state mechanical squeezing toolkit.
//
// Subcommands: spectrum, variance, langevin, drive, optimize, sweep, preset.
// Exit codes: 0 success, 1 validation error, 2 numerical non-convergence in
// a non-sweep context.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "sqz/classical.hpp"
#include "sqz/io.hpp"
#include "sqz/langevin.hpp"
#include "sqz/model.hpp"
#include "sqz/optimize.hpp"
#include "sqz/spectrum.hpp"
#include "sqz/sweep.hpp"
#include "sqz/weakcoupling.hpp"

namespace {

namespace fs = std::filesystem;

struct GlobalOpts {
    std::string params_file;
    std::string out_dir = ".";
    int threads = 1;
};

sqz::SystemParams load_required_params(const GlobalOpts& g) {
    if (g.params_file.empty())
        throw sqz::ValidationError("--params FILE is required for this subcommand");
    return sqz::load_params(g.params_file);
}

void print_diagnostics(const sqz::SystemParams& p) {
    for (const auto& d : sqz::validate(p))
        std::cerr << (d.severity == sqz::Severity::Error ? "error" : "warning")
                  << " [" << d.code << "] " << d.message << "\n";
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / name).string();
}

int cmd_spectrum(const GlobalOpts& g, double w_lo, double w_hi, int points) {
    const sqz::SystemParams p = load_required_params(g);
    print_diagnostics(p);

    const double side = std::sqrt(2.0 * p.j_1 * p.j_1 + 4.0);
    if (std::isnan(w_lo)) w_lo = -2.0 * side;
    if (std::isnan(w_hi)) w_hi = 2.0 * side;
    if (!(w_hi > w_lo) || points < 2)
        throw sqz::ValidationError("need omega-max > omega-min and points >= 2");

    const std::string curve_path = out_path(g, "spectrum.csv");
    {
        std::ofstream out(curve_path);
        sqz::CsvWriter csv(out);
        csv.header({"omega", "s_op", "re_A", "im_A"});
        for (int i = 0; i < points; ++i) {
            const double w = w_lo + (w_hi - w_lo) * i / (points - 1);
            const auto pt = sqz::spectrum_point(p, w);
            csv.row({pt.omega, pt.s_op, pt.a_value.real(), pt.a_value.imag()});
        }
    }
    std::cout << curve_path << "\n";
    if (!sqz::is_symmetric_setting(p)) {
        std::cerr << "feature report skipped (needs the symmetric setting)\n";
        return 0;
    }
    const std::string feat_path = out_path(g, "spectrum_features.csv");
    {
        std::ofstream out(feat_path);
        sqz::CsvWriter csv(out);
        const auto report = sqz::spectral_features(p);
        csv.provenance(std::string("regime=") + sqz::to_string(report.regime) +
                       " grid_spacing=" + sqz::CsvWriter::format(report.grid_spacing));
        csv.header({"kind", "location_predicted", "location_measured",
                    "width_predicted", "width_measured"});
        for (const auto& f : report.features)
            csv.text_row({f.kind, sqz::CsvWriter::format(f.location_predicted),
                          sqz::CsvWriter::format(f.location_measured),
                          sqz::CsvWriter::format(f.width_predicted),
                          sqz::CsvWriter::format(f.width_measured)});
    }
    std::cout << feat_path << "\n";
    return 0;
}

int cmd_variance(const GlobalOpts& g) {
    const sqz::SystemParams p = load_required_params(g);
    print_diagnostics(p);
    const sqz::EnvSummary env = sqz::env_summary(p);
    const sqz::RateSet rs = sqz::rates(p, env);
    const auto st = sqz::stability(p, env);
    sqz::CsvWriter csv(std::cout);
    csv.header({"variance_x1", "s_db", "stable", "c_e", "eps_plus", "eps_minus",
                "gamma_minus", "gamma_plus", "gamma_s"});
    std::optional<double> var, sdb;
    if (st.stable) {
        var = sqz::variance_via_lindblad(rs);  // equals the zeta form for r < 1
        sdb = sqz::squeezing_db(*var);
    }
    csv.row({var, sdb, st.stable ? 1.0 : 0.0, env.c_e, env.eps_plus,
             env.eps_minus, rs.gamma_minus, rs.gamma_plus, rs.gamma_s});
    return 0;
}

int cmd_langevin(const GlobalOpts& g, bool cr, double tol, long long max_periods,
                 int theta_scan) {
    const sqz::SystemParams p = load_required_params(g);
    print_diagnostics(p);
    const auto dd = sqz::assemble(p, cr);
    const auto ss = sqz::steady_state_periodic(dd, tol, max_periods);
    const double v_avg = sqz::mech_quadrature_variance(ss.averaged, 0.0);
    const double v_str = sqz::mech_quadrature_variance(ss.stroboscopic, 0.0);
    sqz::CsvWriter csv(std::cout);
    csv.header({"variance_x1_avg", "variance_x1_strobe", "s_db_avg", "converged",
                "periods_used"});
    csv.row({v_avg, v_str, sqz::squeezing_db(v_avg), ss.converged ? 1.0 : 0.0,
             static_cast<double>(ss.periods_used)});
    if (theta_scan > 0) {
        const std::string path = out_path(g, "theta_scan.csv");
        std::ofstream out(path);
        sqz::CsvWriter tcsv(out);
        tcsv.header({"theta", "variance"});
        for (int i = 0; i < theta_scan; ++i) {
            const double theta = -M_PI_2 + M_PI * i / (theta_scan - 1);
            tcsv.row({theta, sqz::mech_quadrature_variance(ss.averaged, theta)});
        }
        std::cerr << "theta scan written to " << path << "\n";
    }
    return 0;
}

int cmd_drive(const GlobalOpts& g) {
    if (g.params_file.empty())
        throw sqz::ValidationError("--params DRIVE_FILE is required");
    const sqz::DriveFile df = sqz::load_drive_spec(g.params_file);
    const auto dc = sqz::dressed_couplings(df.drive, df.params);
    sqz::SystemParams p = df.params;
    p.g_plus = dc.g_plus;
    p.g_minus = dc.g_minus;
    const auto md = sqz::mech_displacement(df.drive, df.params, dc);

    const std::string path = out_path(g, "derived_params.cfg");
    sqz::save_params(path, p);
    print_diagnostics(p);

    sqz::CsvWriter csv(std::cout);
    csv.header({"g_plus", "g_minus", "phase_plus", "phase_minus",
                "validity_ratio", "freq_shift"});
    csv.row({dc.g_plus, dc.g_minus, std::arg(dc.alpha_bar_plus),
             std::arg(dc.alpha_bar_minus), sqz::validity_ratio(p),
             md.frequency_shift});
    std::cerr << "parameters written to " << path << "\n";
    return 0;
}

int cmd_optimize(const GlobalOpts& g, const std::string& over,
                 const std::string& method, double j_lo, double j_hi,
                 double j2_opt) {
    const sqz::SystemParams p = load_required_params(g);
    print_diagnostics(p);
    sqz::CsvWriter csv(std::cout);
    csv.header({"over", "method", "argmin", "variance", "s_db", "flags"});
    auto emit = [&](const std::string& m, double argmin, double variance,
                    const std::string& flags) {
        csv.text_row({over, m, sqz::CsvWriter::format(argmin),
                      sqz::CsvWriter::format(variance),
                      sqz::CsvWriter::format(sqz::squeezing_db(variance)), flags});
    };
    const bool closed = method == "closed" || method == "both";
    const bool numeric = method == "numeric" || method == "both";
    if (over == "r") {
        if (closed) {
            const auto env = sqz::env_summary(p);
            const double r = sqz::r_opt_exact(env, p.n_th);
            emit("closed-form", r, sqz::variance_at_ropt(env, p.n_th), "");
        }
        if (numeric) {
            const auto res = sqz::r_opt_numeric_langevin(p);
            emit(res.method, res.argmin, res.variance,
                 res.flags.empty() ? "" : res.flags.front());
        }
    } else if (over == "j") {
        if (closed) {
            const auto cf = sqz::j_opt_closed_form(p, p.n_th);
            emit("closed-form", cf.j_opt, cf.variance_opt, "");
        }
        if (numeric) {
            const auto res = sqz::j_opt_numeric(p, p.n_th, j_lo, j_hi);
            emit(res.method, res.argmin, res.variance,
                 res.certificate_ok ? "" : "no-certificate");
        }
    } else if (over == "j-ratio") {
        const double j2 = j2_opt > 0.0 ? j2_opt : p.j_2;
        const auto res = sqz::asymmetric_j_opt(p, p.n_th, j2);
        emit(res.method, res.argmin, res.variance,
             res.certificate_ok ? "" : "no-certificate");
    } else {
        throw sqz::ValidationError("--over must be r, j or j-ratio");
    }
    return 0;
}

int cmd_sweep(const GlobalOpts& g, const std::string& spec_file) {
    sqz::SweepSpec spec = sqz::load_sweep_spec(spec_file);
    spec.threads = g.threads;
    const auto result = sqz::run_sweep(spec);
    const std::string path = out_path(g, "sweep.csv");
    sqz::write_sweep_csv(path, result);
    std::cout << path << "\n";
    return 0;
}

int cmd_preset(const GlobalOpts& g, const std::string& name,
               std::optional<double> gamma) {
    for (const auto& f : sqz::run_preset(name, g.out_dir, g.threads, gamma))
        std::cout << f << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state mechanical squeezing of a dissipatively engineered optomechanical system"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    GlobalOpts g;
    app.add_option("--params", g.params_file, "parameter (or drive-spec) file");
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads for sweeps/presets")
        ->capture_default_str();

    auto* sp_spectrum = app.add_subcommand("spectrum", "bath spectral density and feature report");
    double w_lo = NAN, w_hi = NAN;
    int points = 2001;
    sp_spectrum->add_option("--omega-min", w_lo, "scan start (default -2W)");
    sp_spectrum->add_option("--omega-max", w_hi, "scan end (default +2W)");
    sp_spectrum->add_option("--points", points, "curve samples")->capture_default_str();

    auto* sp_variance = app.add_subcommand("variance", "steady-state variance (master-equation layer)");

    auto* sp_langevin = app.add_subcommand("langevin", "exact Gaussian steady state");
    bool cr = true;
    double tol = 1e-8;
    long long max_periods = 1'000'000;
    int theta_scan = 0;
    sp_langevin->add_flag("--cr,!--no-cr", cr, "include counter-rotating terms")
        ->capture_default_str();
    sp_langevin->add_option("--tol", tol, "period-to-period convergence tolerance")
        ->capture_default_str();
    sp_langevin->add_option("--max-periods", max_periods, "period budget")
        ->capture_default_str();
    sp_langevin->add_option("--theta-scan", theta_scan, "write N-point quadrature scan");

    auto* sp_drive = app.add_subcommand("drive", "convert a drive spec into system parameters");

    auto* sp_opt = app.add_subcommand("optimize", "optimize squeezing over r, j or j-ratio");
    std::string over = "r", method = "both";
    double j_lo = 0.5, j_hi = 60.0, j2 = 0.0;
    sp_opt->add_option("--over", over, "r | j | j-ratio")->capture_default_str();
    sp_opt->add_option("--method", method, "closed | numeric | both")
        ->capture_default_str();
    sp_opt->add_option("--j-min", j_lo, "numeric j search lower bound")->capture_default_str();
    sp_opt->add_option("--j-max", j_hi, "numeric j search upper bound")->capture_default_str();
    sp_opt->add_option("--j2", j2, "fixed j_2 for the ratio search (default: from params)");

    auto* sp_sweep = app.add_subcommand("sweep", "run a sweep spec");
    std::string spec_file;
    sp_sweep->add_option("--spec", spec_file, "sweep spec file")->required();

    auto* sp_preset = app.add_subcommand("preset", "figure-reproduction presets");
    std::string preset_name;
    sp_preset->add_option("name", preset_name, "one of the known presets")->required();
    double fig6_gamma = -1.0;
    sp_preset->add_option("--gamma", fig6_gamma,
                          "mechanical damping override (fig6 only)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sp_spectrum->parsed()) return cmd_spectrum(g, w_lo, w_hi, points);
        if (sp_variance->parsed()) return cmd_variance(g);
        if (sp_langevin->parsed())
            return cmd_langevin(g, cr, tol, max_periods, theta_scan);
        if (sp_drive->parsed()) return cmd_drive(g);
        if (sp_opt->parsed()) return cmd_optimize(g, over, method, j_lo, j_hi, j2);
        if (sp_sweep->parsed()) return cmd_sweep(g, spec_file);
        if (sp_preset->parsed())
            return cmd_preset(g, preset_name,
                              fig6_gamma > 0.0 ? std::optional<double>(fig6_gamma)
                                               : std::nullopt);
    } catch (const sqz::NonConvergent& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const sqz::UnstableDrift& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const sqz::ValidationError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
