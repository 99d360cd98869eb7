#include "sqz/langevin.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sqz {

namespace {

inline Matrix8 symmetrize(const Matrix8& m) {
    return 0.5 * (m + m.transpose());
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with PI-free step control on a stacked 16x8 state.

using State = Eigen::Matrix<double, 16, 8>;

template <typename Rhs>
State integrate_period(const Rhs& rhs, State y, double t0, double t1,
                       double rtol, double atol) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
    double t = t0;
    double h = (t1 - t0) / 100.0;
    State k1 = rhs(t, y);
    int rejected_in_row = 0;
    while (t < t1) {
        h = std::min(h, t1 - t);
        const State k2 = rhs(t + c2 * h, y + h * (k1 / 5.0));
        const State k3 = rhs(t + c3 * h, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
        const State k4 = rhs(t + c4 * h,
                             y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
        const State k5 =
            rhs(t + c5 * h, y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                     64448.0 / 6561 * k3 - 212.0 / 729 * k4));
        const State k6 =
            rhs(t + h, y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 +
                                46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                                5103.0 / 18656 * k5));
        const State y5 = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 +
                                  125.0 / 192 * k4 - 2187.0 / 6784 * k5 +
                                  11.0 / 84 * k6);
        const State k7 = rhs(t + h, y5);
        const State err_vec =
            h * ((35.0 / 384 - 5179.0 / 57600) * k1 +
                 (500.0 / 1113 - 7571.0 / 16695) * k3 +
                 (125.0 / 192 - 393.0 / 640) * k4 +
                 (-2187.0 / 6784 + 92097.0 / 339200) * k5 +
                 (11.0 / 84 - 187.0 / 2100) * k6 - k7 / 40.0);
        double err = 0.0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 8; ++j) {
                const double scale =
                    atol + rtol * std::max(std::abs(y(i, j)), std::abs(y5(i, j)));
                const double e = err_vec(i, j) / scale;
                err += e * e;
            }
        err = std::sqrt(err / 128.0);
        if (err <= 1.0 || rejected_in_row > 20) {
            t += h;
            y = y5;
            k1 = k7;  // first-same-as-last
            rejected_in_row = 0;
        } else {
            ++rejected_in_row;
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return y;
}

// Solves A V + V A^T = -Q through the 64x64 Kronecker system with one round
// of iterative refinement.
Matrix8 lyapunov_continuous(const Matrix8& a, const Matrix8& q) {
    // vec(A V + V A^T) = (I (x) A + A (x) I) vec(V), column-major layout
    Eigen::Matrix<double, 64, 64> k = Eigen::Matrix<double, 64, 64>::Zero();
    for (int bl = 0; bl < 8; ++bl) k.block<8, 8>(8 * bl, 8 * bl) = a;
    for (int col = 0; col < 8; ++col)
        for (int row = 0; row < 8; ++row)
            for (int i = 0; i < 8; ++i) k(8 * col + i, 8 * row + i) += a(col, row);

    Eigen::PartialPivLU<Eigen::Matrix<double, 64, 64>> lu(k);
    Eigen::Matrix<double, 64, 1> rhs;
    for (int col = 0; col < 8; ++col) rhs.segment<8>(8 * col) = -q.col(col);
    Eigen::Matrix<double, 64, 1> x = lu.solve(rhs);
    auto unvec = [](const Eigen::Matrix<double, 64, 1>& v) {
        Matrix8 m;
        for (int col = 0; col < 8; ++col) m.col(col) = v.segment<8>(8 * col);
        return m;
    };
    Matrix8 v = unvec(x);
    for (int it = 0; it < 3; ++it) {
        const Matrix8 residual = a * v + v * a.transpose() + q;
        if (residual.norm() <= 1e-13 * std::max(q.norm(), 1e-300)) break;
        Eigen::Matrix<double, 64, 1> rv;
        for (int col = 0; col < 8; ++col) rv.segment<8>(8 * col) = -residual.col(col);
        v += unvec(lu.solve(rv));
    }
    return symmetrize(v);
}

}  // namespace

Matrix8 DriftDiffusion::drift(double t) const {
    if (!include_cr) return constant;
    return constant + std::cos(2.0 * t) * cosine + std::sin(2.0 * t) * sine;
}

bool DriftDiffusion::time_independent() const {
    return !include_cr || (cosine.isZero(0.0) && sine.isZero(0.0));
}

Matrix8 DriftDiffusion::uncoupled_fixed_point() const {
    Matrix8 v = Matrix8::Identity() * 0.5;
    v(6, 6) = v(7, 7) = n_th + 0.5;
    return v;
}

DriftDiffusion assemble(const SystemParams& p, bool include_cr) {
    require_valid(p);
    if (p.omega_m != 1.0)
        throw std::invalid_argument("assemble: params must be normalized (omega_m == 1)");
    DriftDiffusion dd;
    dd.n_th = p.n_th;
    dd.include_cr = include_cr;

    Matrix8& a0 = dd.constant;
    const double gs = p.g_minus + p.g_plus;  // beam-splitter + squeezing sum
    const double gd = p.g_minus - p.g_plus;

    a0(0, 0) = a0(1, 1) = -0.5 * p.kappa_c;
    const double js[2] = {p.j_1, p.j_2};
    const double deltas[2] = {p.delta_1, p.delta_2};
    const double kappas[2] = {p.kappa_1, p.kappa_2};
    for (int i = 0; i < 2; ++i) {
        const int ax = 2 + 2 * i;
        a0(ax, ax) = a0(ax + 1, ax + 1) = -0.5 * kappas[i];
        a0(ax, ax + 1) = -deltas[i];
        a0(ax + 1, ax) = deltas[i];
        a0(ax, 1) = js[i];
        a0(ax + 1, 0) = -js[i];
        a0(0, ax + 1) = js[i];
        a0(1, ax) = -js[i];
    }
    a0(6, 6) = a0(7, 7) = -0.5 * p.gamma_m;
    // rotating-wave optomechanical block
    a0(0, 7) = gd;
    a0(1, 6) = -gs;
    a0(6, 1) = gd;
    a0(7, 0) = -gs;
    // counter-rotating blocks, cos(2t) and sin(2t) components; the sin
    // component is not symmetric between the cavity and mechanics rows
    // (it follows from e^{±2it} acting on different operator pairs)
    dd.cosine(0, 7) = -gd;
    dd.cosine(1, 6) = -gs;
    dd.cosine(6, 1) = -gd;
    dd.cosine(7, 0) = -gs;
    dd.sine(0, 6) = gd;
    dd.sine(1, 7) = -gs;
    dd.sine(6, 0) = gs;
    dd.sine(7, 1) = -gd;
    if (!include_cr) {
        dd.cosine.setZero();
        dd.sine.setZero();
    }

    dd.diffusion.diagonal() << 0.5 * p.kappa_c, 0.5 * p.kappa_c,
        0.5 * p.kappa_1, 0.5 * p.kappa_1, 0.5 * p.kappa_2, 0.5 * p.kappa_2,
        p.gamma_m * (p.n_th + 0.5), p.gamma_m * (p.n_th + 0.5);
    return dd;
}

double drift_spectral_abscissa(const DriftDiffusion& dd) {
    if (!dd.time_independent())
        throw std::invalid_argument(
            "drift_spectral_abscissa: drift must be time-independent");
    Eigen::EigenSolver<Matrix8> es(dd.constant, false);
    return es.eigenvalues().real().maxCoeff();
}

GaussianState steady_state_algebraic(const DriftDiffusion& dd) {
    if (!dd.time_independent())
        throw std::invalid_argument(
            "steady_state_algebraic: drift must be time-independent");
    if (drift_spectral_abscissa(dd) >= 0.0)
        throw UnstableDrift("unstable-drift: eigenvalue with nonnegative real part");
    Matrix8 v = lyapunov_continuous(dd.constant, dd.diffusion);
    const double residual =
        (dd.constant * v + v * dd.constant.transpose() + dd.diffusion).norm();
    if (residual > 1e-10 * dd.diffusion.norm())
        throw std::runtime_error("steady_state_algebraic: residual too large");
    return {v, "static"};
}

PeriodicSteadyState steady_state_periodic(const DriftDiffusion& dd, double tol,
                                          long long max_periods,
                                          double integrator_rtol) {
    const double period = M_PI;  // omega_m = 1 internally
    const double atol = 1e-14;

    // One period of the propagator Phi and the inhomogeneous part W, stacked
    // as [Phi; W]: dPhi = A Phi, dW = A W + W A^T + D.
    auto rhs_map = [&](double t, const State& s) {
        const Matrix8 a = dd.drift(t);
        State out;
        out.topRows<8>() = a * s.topRows<8>();
        const Matrix8 w = s.bottomRows<8>();
        out.bottomRows<8>() = a * w + w * a.transpose() + dd.diffusion;
        return out;
    };
    State s0 = State::Zero();
    s0.topRows<8>() = Matrix8::Identity();
    const State s1 = integrate_period(rhs_map, s0, 0.0, period, integrator_rtol, atol);
    const Matrix8 phi = s1.topRows<8>();
    const Matrix8 w = symmetrize(s1.bottomRows<8>());

    auto one_period = [&](const Matrix8& v) {
        return symmetrize(phi * v * phi.transpose() + w);
    };

    const Matrix8 v0 = dd.uncoupled_fixed_point();
    const double grow_limit = 1e6 * std::max(v0.norm(), 1.0);

    Matrix8 v = v0;
    Matrix8 pk = phi, wk = w;  // cumulative map, currently one period
    long long n = 0;           // periods represented by v
    PeriodicSteadyState out;
    for (;;) {
        const Matrix8 v_next = one_period(v);
        if (!v_next.allFinite())
            throw UnstableDrift("unstable: covariance diverged");
        if ((v_next - v).norm() <= tol * v.norm()) {
            out.stroboscopic.cov = v_next;
            out.periods_used = n + 1;
            out.converged = true;
            break;
        }
        if (v.norm() > grow_limit)
            throw UnstableDrift("unstable: covariance grew beyond 1e6x initial");
        if (n >= max_periods)
            throw NonConvergent("non-convergent: max_periods reached");
        if (n == 0) {
            v = v_next;
            n = 1;
        } else {
            wk = symmetrize(pk * wk * pk.transpose() + wk);
            pk = pk * pk;
            n *= 2;
            v = symmetrize(pk * v0 * pk.transpose() + wk);
        }
    }
    out.stroboscopic.time_tag = "stroboscopic";

    // Period average from the converged state: stack [V; S] with dS = V.
    auto rhs_avg = [&](double t, const State& s) {
        const Matrix8 a = dd.drift(t);
        const Matrix8 vv = s.topRows<8>();
        State out_s;
        out_s.topRows<8>() = a * vv + vv * a.transpose() + dd.diffusion;
        out_s.bottomRows<8>() = vv;
        return out_s;
    };
    State sa = State::Zero();
    sa.topRows<8>() = out.stroboscopic.cov;
    const State sf = integrate_period(rhs_avg, sa, 0.0, period, integrator_rtol, atol);
    out.averaged.cov = symmetrize(sf.bottomRows<8>()) / period;
    out.averaged.time_tag = "period-averaged";
    return out;
}

double mech_quadrature_variance(const GaussianState& gs, double theta) {
    const Eigen::Matrix2d m = gs.mech_block();
    const double c = std::cos(theta), s = std::sin(theta);
    return c * c * m(0, 0) + s * s * m(1, 1) + 2.0 * s * c * m(0, 1);
}

}  // namespace sqz
