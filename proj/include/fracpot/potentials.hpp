#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracpot/kernels.hpp"
#include "fracpot/types.hpp"

namespace fracpot {

// The curve x = s(t) with its Hölder data |s(t)-s(tau)| <= L |t-tau|^beta.
struct MovingBoundary {
    std::function<double(double)> s;
    double beta = 1.0;
    double L = 1.0;
    double T = 1.0;

    double operator()(double t) const { return s(t); }

    // Samples pairs on [0,T]; returns the largest observed Hölder quotient
    // |s(t)-s(tau)| / |t-tau|^beta.
    double sampled_holder_constant(int n = 64) const;
};

// Boundary density phi stored through its regularized part
// psi(t) = t^{1-alpha_m} phi(t), continuous on [0,T].
struct WeightedDensity {
    std::function<double(double)> psi;
    double alpha_m;

    static WeightedDensity from_psi(std::function<double(double)> psi,
                                    double alpha_m) {
        return {std::move(psi), alpha_m};
    }
    static WeightedDensity from_phi(std::function<double(double)> phi,
                                    double alpha_m) {
        return {[phi = std::move(phi), alpha_m](double t) {
                    return t <= 0.0 ? 0.0 : std::pow(t, 1.0 - alpha_m) * phi(t);
                },
                alpha_m};
    }

    double phi(double t) const {
        return t <= 0.0 ? 0.0 : std::pow(t, alpha_m - 1.0) * psi(t);
    }

    double sup_psi(double T, int n = 257) const;
};

// int_0^t phi(tau) E(x - s(tau), t - tau) dtau
EvalResult potential_E(const WeightedDensity& phi, const MovingBoundary& s,
                       double x, double t, const MultiTermSpec& spec,
                       const QuadratureConfig& cfg);

// x-derivative of the E-potential away from the boundary point x = s(t).
EvalResult potential_E_dx(const WeightedDensity& phi, const MovingBoundary& s,
                          double x, double t, const MultiTermSpec& spec,
                          const QuadratureConfig& cfg);

// On-boundary integral int_0^t phi(tau) E_x(s(t)-s(tau), t-tau) dtau, the
// direct term of the jump relation. Appends a hypothesis warning (instead of
// failing) when beta <= alpha_m/2.
EvalResult boundary_E_dx_direct(const WeightedDensity& phi,
                                const MovingBoundary& s, double t,
                                const MultiTermSpec& spec,
                                const QuadratureConfig& cfg,
                                std::vector<std::string>* warnings = nullptr);

// int_0^t phi(tau) Z(x - s(tau), t - tau) dtau and its x-derivative; the
// derivative admits x = s(t) (weakly singular integrable majorant).
EvalResult potential_Z(const WeightedDensity& phi, const MovingBoundary& s,
                       double x, double t, const MultiTermSpec& spec,
                       const QuadratureConfig& cfg);
EvalResult potential_Z_dx(const WeightedDensity& phi, const MovingBoundary& s,
                          double x, double t, const MultiTermSpec& spec,
                          const QuadratureConfig& cfg);

enum class Side { Left, Right };

struct JumpReport {
    Side side = Side::Left;
    double t = 0.0;
    std::vector<double> xs;          // approach sequence
    std::vector<double> values;      // potential derivative at each x_n
    std::vector<double> value_errs;
    double extrapolated = 0.0;       // Aitken limit of the sequence
    double gamma_fit = 0.0;          // fitted approach order
    double direct_term = 0.0;        // on-boundary integral (0 for the Z check)
    double phi_at_t = 0.0;
    double predicted = 0.0;          // +-1/2 phi(t) + direct (Z check: boundary value)
    double discrepancy = 0.0;        // |extrapolated - predicted|
    std::vector<double> seq_discrepancy;
    bool monotone_after2 = false;
    std::vector<std::string> warnings;
};

// Evaluates the E-potential derivative along x_n = s(t) -+ d0 2^{-n}
// (n = 0..n_points), extrapolates the one-sided limit and compares it with
// +-1/2 phi(t) + direct term. Left approach carries the + sign.
JumpReport jump_limit_E(const WeightedDensity& phi, const MovingBoundary& s,
                        double t, Side side, const MultiTermSpec& spec,
                        const QuadratureConfig& cfg, int n_points = 10,
                        double d0 = -1.0);

// Continuity check of the Z-potential derivative: the approach sequence
// extrapolation against the on-boundary value (zero jump).
JumpReport continuity_check_Z(const WeightedDensity& phi,
                              const MovingBoundary& s, double t, Side side,
                              const MultiTermSpec& spec,
                              const QuadratureConfig& cfg, int n_points = 10,
                              double d0 = -1.0);

// int_{t-delta}^{t} |E_x(x - s0, t - tau)| dtau, bounded by 1/2.
EvalResult ex_window_abs(double x, double s0, double t, double delta,
                         const MultiTermSpec& spec,
                         const QuadratureConfig& cfg);

// Proof-structure diagnostics of the jump relation on a window of width
// delta: the decomposition L = L1 + phi(t) M + L2 with M = M1 + M2 + J and
// the associated window powers.
struct WindowDiagnostics {
    double x, t, delta;
    double J, M1, M2, M, L1, L2, L;
    double direct_minus_potdx;  // independent evaluation of L
    double window_power;        // delta^{beta - alpha_m/2}, the M1/M2 scale
    double ej1_bound;           // window integral of |E_x(x - s(t), .)|
};

WindowDiagnostics window_diagnostics(const WeightedDensity& phi,
                                     const MovingBoundary& s, double x,
                                     double t, double delta,
                                     const MultiTermSpec& spec,
                                     const QuadratureConfig& cfg);

}  // namespace fracpot
