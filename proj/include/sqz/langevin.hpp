// langevin.hpp — Exact Gaussian steady states of the full linearized system:
// four modes (main cavity, two auxiliaries, mechanics) in the quadrature
// representation, with the counter-rotating interaction entering as a
// pi-periodic drift. Provides the algebraic Lyapunov solve for the
// time-independent reduction and the periodic (Floquet) steady state.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>

#include "sqz/model.hpp"

namespace sqz {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

// Drift A(t) = constant + cos(2 t) * cosine + sin(2 t) * sine (units of
// omega_m; period pi). Quadrature order: (x, p) for main cavity, aux 1,
// aux 2, mechanics.
struct DriftDiffusion {
    Matrix8 constant = Matrix8::Zero();
    Matrix8 cosine = Matrix8::Zero();
    Matrix8 sine = Matrix8::Zero();
    Matrix8 diffusion = Matrix8::Zero();
    double n_th = 0.0;
    bool include_cr = true;

    static constexpr int dim = 8;
    static constexpr std::array<const char*, 8> basis = {
        "x_c", "p_c", "x_1", "p_1", "x_2", "p_2", "x_m", "p_m"};

    Matrix8 drift(double t) const;
    bool time_independent() const;
    // Covariance of the uncoupled damped modes: 1/2 per optical quadrature,
    // n_th + 1/2 for the mechanics.
    Matrix8 uncoupled_fixed_point() const;
};

struct GaussianState {
    Matrix8 cov = Matrix8::Zero();
    std::string time_tag;  // "stroboscopic", "period-averaged" or "static"

    Eigen::Matrix2d mech_block() const { return cov.block<2, 2>(6, 6); }
};

struct PeriodicSteadyState {
    GaussianState stroboscopic;
    GaussianState averaged;
    long long periods_used = 0;
    bool converged = false;
};

struct UnstableDrift : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds drift and diffusion from the linearized Hamiltonian plus damping.
// include_cr = false drops the e^{±2it} blocks (rotating-wave reduction).
// The diffusion normalization is fixed by the requirement that an isolated
// damped vacuum mode relaxes to variance exactly 1/2.
DriftDiffusion assemble(const SystemParams& p, bool include_cr);

// Solves drift V + V drift^T + diffusion = 0 for time-independent drift.
// Throws UnstableDrift unless every drift eigenvalue has negative real part.
// Residual norm is refined below 1e-10 * ||diffusion||.
GaussianState steady_state_algebraic(const DriftDiffusion& dd);

// Integrates dV/dt = A(t) V + V A(t)^T + D from the uncoupled fixed point
// until consecutive periods differ by less than tol * ||V||_F (the
// one-period propagator is integrated once with adaptive error control and
// then composed exactly, doubling the horizon until the criterion is met).
// Returns both the stroboscopic and the period-averaged covariance. Throws
// NonConvergent after max_periods, UnstableDrift on norm blow-up.
PeriodicSteadyState steady_state_periodic(const DriftDiffusion& dd,
                                          double tol = 1e-8,
                                          long long max_periods = 1'000'000,
                                          double integrator_rtol = 1e-12);

// Variance of X_theta = X1 cos(theta) + X2 sin(theta) read from the
// mechanical block.
double mech_quadrature_variance(const GaussianState& gs, double theta = 0.0);

// max Re(eigenvalue) of the time-independent drift; < 0 means Hurwitz.
double drift_spectral_abscissa(const DriftDiffusion& dd);

}  // namespace sqz
