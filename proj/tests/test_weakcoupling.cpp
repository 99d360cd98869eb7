#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sqz/model.hpp"
#include "sqz/spectrum.hpp"
#include "sqz/weakcoupling.hpp"
#include "test_util.hpp"

using namespace sqz;
using test::rel_err;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

EnvSummary make_env(double s0, double s_plus, double s_minus, double c_e) {
    EnvSummary env;
    env.s0 = s0;
    env.s_plus = s_plus;
    env.s_minus = s_minus;
    env.eps_plus = s_plus / s0;
    env.eps_minus = s_minus / s0;
    env.c_e = c_e;
    return env;
}

SystemParams sym(double kc, double kappa, double j, double gm, double r,
                 double gamma, double nth) {
    return symmetric_setting(kc, kappa, j, gm, r, gamma, nth);
}

struct Draw {
    SystemParams p;
    EnvSummary env;
};

// random stable draw with r < r_cap * r_stab
Draw stable_draw(test::Rng& rng, double r_cap = 0.95) {
    for (;;) {
        const double kc = rng.log_uniform(0.5, 30.0);
        const double kappa = rng.log_uniform(0.05, 1.0);
        const double j = rng.uniform(0.0, 15.0);
        const double gm = rng.log_uniform(1e-3, 0.2);
        const double gamma = rng.log_uniform(1e-6, 1e-2);
        const double nth = rng.uniform(0.0, 100.0);
        SystemParams p = sym(kc, kappa, j, gm, 0.0, gamma, nth);
        const EnvSummary env = env_summary(p);
        const double r_stab = std::sqrt((1.0 - env.eps_minus + 1.0 / env.c_e) /
                                        (1.0 - env.eps_plus));
        const double r = rng.uniform(0.0, std::min(r_cap * r_stab, 0.999));
        p.g_plus = r * p.g_minus;
        const EnvSummary env2 = env_summary(p);
        if (stability(p, env2).stable) return {p, env2};
    }
}
}  // namespace

TEST_CASE("rates") {
    // single-drive limit
    SystemParams p = sym(10.0, 0.5, 5.0, 0.1, 0.0, 1e-5, 0.0);
    EnvSummary env = env_summary(p);
    RateSet rs = rates(p, env);
    CHECK(rs.gamma_s == 0.0);
    CHECK(rs.gamma_plus == doctest::Approx(0.01 * env.s_minus).epsilon(1e-13));

    // resolved-sideband idealization: s0 = 4/kc, s_pm = 0, gamma = 0
    SystemParams q;
    q.kappa_c = 8.0;
    q.g_minus = 0.1;
    q.g_plus = 0.06;
    q.gamma_m = 0.0;
    q.n_th = 0.0;
    const EnvSummary ideal = make_env(4.0 / 8.0, 0.0, 0.0, kInf);
    rs = rates(q, ideal);
    const double gamma_opt = 4.0 * (0.01 - 0.0036) / 8.0;
    CHECK(rs.gamma_minus - rs.gamma_plus == doctest::Approx(gamma_opt).epsilon(1e-13));

    // direct evaluation (the sum is 3.3612e-3; a typo in the worked example
    // elsewhere quotes 3.3512e-3)
    SystemParams t;
    t.g_minus = 0.1;
    t.g_plus = 0.08;
    t.gamma_m = 1e-5;
    t.n_th = 10.0;
    rs = rates(t, make_env(0.32, 0.008, 0.008, 0.01 * 0.32 / 1e-5));
    CHECK(rs.gamma_minus == doctest::Approx(1.1e-4 + 3.2e-3 + 5.12e-5).epsilon(1e-13));
    CHECK(rs.gamma_plus == doctest::Approx(1e-4 + 0.0064 * 0.32 + 0.01 * 0.008).epsilon(1e-13));
    CHECK(rs.gamma_s == doctest::Approx(0.008 * 0.32).epsilon(1e-13));
}

TEST_CASE("lindblad form: limits and the defining equations") {
    // gamma_s = 0 keeps the original mode
    LindbladForm lf = lindblad_form({2.0, 0.5, 0.0});
    CHECK(lf.u == 1.0);
    CHECK(lf.v == 0.0);
    CHECK(lf.gamma_bp_minus == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(lf.gamma_bp_plus == doctest::Approx(0.5).epsilon(1e-15));

    // brute-force check of the printed coefficients at G- = 2, G+ = 0, Gs = 1/2
    lf = lindblad_form({2.0, 0.0, 0.5});
    CHECK(lf.a == 2.0);
    CHECK(lf.b == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(lf.u == doctest::Approx(1.0379548493020427).epsilon(1e-13));
    CHECK(lf.v == doctest::Approx(-0.27811916365044996).epsilon(1e-13));
    // printed form (Gs/b) sqrt(2b/(a-b)) agrees with the stable evaluation
    CHECK(lf.u == doctest::Approx((0.5 / lf.b) * std::sqrt(2.0 * lf.b / (lf.a - lf.b)))
                      .epsilon(1e-13));
    CHECK(lf.u * lf.u - lf.v * lf.v == doctest::Approx(1.0).epsilon(1e-12));

    test::Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        // physical rates: gamma_minus gamma_plus >= gamma_s^2
        const double gm = rng.log_uniform(1e-4, 10.0);
        const double gp = rng.log_uniform(1e-6, 0.9) * gm;
        const double gs = std::sqrt(gm * gp) * rng.uniform(0.0, 0.999);
        const RateSet rs{gm, gp, gs};
        const LindbladForm f = lindblad_form(rs);
        // canonical transform
        CHECK(std::abs(f.u * f.u - f.v * f.v - 1.0) < 1e-10);
        // the squeezing-dissipator coefficient vanishes
        const double ds_coeff = f.u * f.v * (gm + gp) + (f.u * f.u + f.v * f.v) * gs;
        CHECK(std::abs(ds_coeff) < 1e-12 * (gm + gp));
        // first/second-line rates reproduce the printed gamma_bp
        const double rate_minus = f.u * f.u * gm + f.v * f.v * gp + 2.0 * f.u * f.v * gs;
        const double rate_plus = f.v * f.v * gm + f.u * f.u * gp + 2.0 * f.u * f.v * gs;
        CHECK(rate_minus == doctest::Approx(f.gamma_bp_minus).epsilon(1e-10));
        CHECK(rate_plus == doctest::Approx(f.gamma_bp_plus).epsilon(1e-10));
        CHECK(f.gamma_bp_minus - f.gamma_bp_plus ==
              doctest::Approx(gm - gp).epsilon(1e-10));
        CHECK(f.gamma_bp_plus > -1e-15);
        if (gm > gp) CHECK(f.n_bp >= 0.0);
    }

    // degenerate boundary
    CHECK_THROWS_AS(lindblad_form({2.0, 0.0, 1.0}), NonLindbladizable);
    CHECK_THROWS_AS(lindblad_form({2.0, 0.0, 1.5}), NonLindbladizable);
}

TEST_CASE("stability") {
    SystemParams p;
    p.g_minus = 0.1;

    // ideal limit: stable iff r < 1
    p.g_plus = 0.0999;
    CHECK(stability(p, make_env(0.4, 0.0, 0.0, kInf)).stable);
    p.g_plus = 0.1;  // equality is unstable
    CHECK(!stability(p, make_env(0.4, 0.0, 0.0, kInf)).stable);
    p.g_plus = 0.1001;
    CHECK(!stability(p, make_env(0.4, 0.0, 0.0, kInf)).stable);

    // r = 0.99, eps = 0.025, C_e = 100
    p.g_plus = 0.099;
    const auto rep = stability(p, make_env(0.4, 0.01, 0.01, 100.0));
    CHECK(rep.stable);
    CHECK(rep.margin == doctest::Approx(0.985 / 0.975 - 0.9801).epsilon(1e-12));
}

TEST_CASE("stability is the rate inequality") {
    test::Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        const double kc = rng.log_uniform(0.5, 30.0);
        const double kappa = rng.log_uniform(0.05, 1.0);
        const double j = rng.uniform(0.0, 15.0);
        const double gm = rng.log_uniform(1e-3, 0.3);
        const double gamma = rng.log_uniform(1e-6, 1e-2);
        const double r = rng.uniform(0.0, 2.0);
        const SystemParams p = sym(kc, kappa, j, gm, r, gamma, rng.uniform(0.0, 50.0));
        const EnvSummary env = env_summary(p);
        const RateSet rs = rates(p, env);
        const auto rep = stability(p, env);
        // margin identity: margin = (gamma_minus - gamma_plus)/(G-^2 s0 (1-eps+))
        const double identity = (rs.gamma_minus - rs.gamma_plus) /
                                (p.g_minus * p.g_minus * env.s0 * (1.0 - env.eps_plus));
        CHECK(rep.margin == doctest::Approx(identity).epsilon(1e-12));
        if (std::abs(rep.margin) > 1e-12 * (1.0 + r * r))
            CHECK(rep.stable == (rs.gamma_minus > rs.gamma_plus));
    }
}

TEST_CASE("variance of the squeezed quadrature") {
    SystemParams p;
    p.g_minus = 0.1;
    p.n_th = 0.0;

    // vacuum limit
    p.g_plus = 0.0;
    CHECK(variance_x1(p, make_env(0.4, 0.0, 0.0, kInf)) == doctest::Approx(0.5).epsilon(1e-15));

    // zeta = 0, eps = 0, C_e = 100, n_th = 10
    p.n_th = 10.0;
    CHECK(variance_x1(p, make_env(0.4, 0.0, 0.0, 100.0)) ==
          doctest::Approx(0.5990099009900991).epsilon(1e-13));

    // ideal limit: e^{-2 zeta}/2 = (1-r)/(1+r)/2
    p.n_th = 0.0;
    p.g_plus = 0.06;
    CHECK(variance_x1(p, make_env(0.4, 0.0, 0.0, kInf)) ==
          doctest::Approx(0.25 / 2.0).epsilon(1e-12));

    // errors
    p.g_plus = 0.1;
    CHECK_THROWS_AS(variance_x1(p, make_env(0.4, 0.0, 0.0, kInf)), std::domain_error);
    // heavy lower-sideband heating: eps_minus = 0.9 destabilizes r = 0.5
    p.g_plus = 0.05;
    CHECK_THROWS_AS(variance_x1(p, make_env(0.4, 0.0, 0.36, 1e6)), std::domain_error);
}

TEST_CASE("squeezing metric") {
    CHECK(squeezing_db(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(squeezing_db(0.25) == doctest::Approx(3.0102999566398121).epsilon(1e-14));
    CHECK(squeezing_db(0.125) == doctest::Approx(6.0205999132796242).epsilon(1e-14));
    CHECK_THROWS_AS(squeezing_db(0.0), std::domain_error);
    CHECK_THROWS_AS(squeezing_db(-0.1), std::domain_error);
}

TEST_CASE("lindblad route reproduces the closed form") {
    CHECK(variance_via_lindblad({1.0, 0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(variance_via_lindblad({3.0, 1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));

    test::Rng rng(29);
    for (int i = 0; i < 1000; ++i) {
        const Draw d = stable_draw(rng);
        const double via_formula = variance_x1(d.p, d.env);
        const double via_lindblad = variance_via_lindblad(rates(d.p, d.env));
        CHECK(rel_err(via_lindblad, via_formula) < 1e-9);
    }
}

TEST_CASE("squeezed-vacuum quadrature variance") {
    test::Rng rng(37);
    for (int i = 0; i < 50; ++i)
        CHECK(quadrature_variance_squeezed(0.0, rng.uniform(-3.0, 3.0),
                                           rng.uniform(-3.0, 3.0)) ==
              doctest::Approx(0.5).epsilon(1e-14));

    CHECK(quadrature_variance_squeezed(1.0, 0.0, 0.0) ==
          doctest::Approx(std::exp(-2.0) / 2.0).epsilon(1e-13));
    CHECK(quadrature_variance_squeezed(1.0, 0.0, M_PI_2) ==
          doctest::Approx(std::exp(2.0) / 2.0).epsilon(1e-13));

    // beta = 0 reduction
    for (int i = 0; i < 200; ++i) {
        const double r = rng.uniform(0.0, 2.0);
        const double th = rng.uniform(-M_PI, M_PI);
        const double c = std::cos(th), s = std::sin(th);
        const double reduced = 0.5 * (std::exp(-2.0 * r) * c * c + std::exp(2.0 * r) * s * s);
        CHECK(quadrature_variance_squeezed(r, 0.0, th) ==
              doctest::Approx(reduced).epsilon(1e-12));
    }

    // the squeezed direction is theta = 0 (mod pi)
    const int n = 1801;
    int argmin = -1;
    double best = kInf;
    for (int i = 0; i < n; ++i) {
        const double th = -M_PI_2 + M_PI * i / (n - 1);
        const double v = quadrature_variance_squeezed(0.7, 0.0, th);
        if (v < best) {
            best = v;
            argmin = i;
        }
    }
    CHECK(std::abs(-M_PI_2 + M_PI * argmin / (n - 1)) < M_PI / (n - 1));
}

TEST_CASE("feasibility report") {
    SystemParams p;
    p.g_minus = 0.1;

    // zero temperature is always allowed for zeta > 0
    p.g_plus = 0.05;
    p.n_th = 0.0;
    auto rep = feasibility(p, make_env(0.4, 0.004, 0.004, 400.0));
    CHECK(rep.n_th_ok);
    CHECK(rep.n_th_bound > 0.0);

    // r = 0 forbids squeezing at any temperature
    p.g_plus = 0.0;
    rep = feasibility(p, make_env(0.4, 0.0, 0.0, 400.0));
    CHECK(rep.n_th_bound == 0.0);
    CHECK(!rep.n_th_ok);

    // C_e = 400, zeta = 0.5, n_th = 10
    p.g_plus = std::tanh(0.5) * 0.1;
    p.n_th = 10.0;
    rep = feasibility(p, make_env(0.4, 0.0, 0.0, 400.0));
    const double expected =
        400.0 * (1.0 - std::exp(-1.0)) / (2.0 * std::cosh(0.5) * std::cosh(0.5));
    CHECK(rep.n_th_bound == doctest::Approx(expected).epsilon(1e-13));
    CHECK(expected == doctest::Approx(99.43).epsilon(1e-3));
    CHECK(rep.n_th_ok);
}

TEST_CASE("feasibility case split drives the eps_plus monotonicity") {
    // The printed case discussion holds with the directions fixed by the
    // formula itself: below 1/2 (case b) the variance grows toward 1/2 as
    // eps_plus grows; above 1/2 (case c) it decreases toward 1/2.
    test::Rng rng(53);
    int seen_b = 0, seen_c = 0;
    for (int i = 0; i < 900; ++i) {
        const Draw d = stable_draw(rng, 0.9);
        if (d.p.drive_ratio() >= 0.999) continue;
        const auto rep = feasibility(d.p, d.env);
        const double v0 = variance_x1(d.p, d.env);
        EnvSummary bumped = d.env;
        bumped.eps_plus = d.env.eps_plus * 1.01 + 1e-6;
        double v1;
        try {
            v1 = variance_x1(d.p, bumped);
        } catch (const std::domain_error&) {
            continue;
        }
        if (rep.eps_plus_case == 'b') {
            ++seen_b;
            CHECK(v1 >= v0 - 1e-15);
            CHECK(rep.intercept_ac < 0.5);
        } else if (rep.eps_plus_case == 'c') {
            ++seen_c;
            CHECK(v1 <= v0 + 1e-15);
            CHECK(rep.intercept_ac >= 0.5);
            CHECK(v0 > 0.5);  // never squeezed in case c
        }
    }
    CHECK(seen_b > 20);
    CHECK(seen_c > 20);
}

TEST_CASE("variance is nondecreasing in eps_minus") {
    test::Rng rng(59);
    for (int i = 0; i < 300; ++i) {
        const Draw d = stable_draw(rng, 0.9);
        const double v0 = variance_x1(d.p, d.env);
        EnvSummary bumped = d.env;
        bumped.eps_minus = d.env.eps_minus * 1.01 + 1e-6;
        try {
            CHECK(variance_x1(d.p, bumped) >= v0 - 1e-15);
        } catch (const std::domain_error&) {
            // bumping eps_minus can cross the stability edge; that is fine
        }
    }
}

TEST_CASE("variance decreases with cooperativity when squeezing is possible") {
    test::Rng rng(61);
    int tested = 0;
    while (tested < 200) {
        const Draw d = stable_draw(rng, 0.9);
        const double r = d.p.drive_ratio();
        if (r <= 0.0 || r >= 0.999) continue;
        const auto rep = feasibility(d.p, d.env);
        if (!rep.n_th_ok || !rep.eps_minus_ok) continue;
        ++tested;
        const double v0 = variance_x1(d.p, d.env);
        EnvSummary bigger = d.env;
        bigger.c_e = d.env.c_e * 1.5;
        CHECK(variance_x1(d.p, bigger) < v0);
    }
}
