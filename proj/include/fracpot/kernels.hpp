#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracpot/multiterm.hpp"
#include "fracpot/types.hpp"

namespace fracpot {

// Gamma^mu_1(x,t) = (4 pi)^{-1/2} int_0^inf p^{-1/2} e^{-x^2/(4p)} w_mu(p,t) dp
// and its first and second x-derivatives (differentiation under the
// p-integral). The default split of mu is symmetric.
EvalResult gamma1(double mu, double x, double t, const MultiTermSpec& spec,
                  const QuadratureConfig& cfg,
                  const MuSplit* split = nullptr);
EvalResult gamma1_dx(double mu, double x, double t, const MultiTermSpec& spec,
                     const QuadratureConfig& cfg,
                     const MuSplit* split = nullptr);
EvalResult gamma1_dxx(double mu, double x, double t, const MultiTermSpec& spec,
                      const QuadratureConfig& cfg,
                      const MuSplit* split = nullptr);

// Fundamental solution of the inhomogeneous equation: E = Gamma^0_1.
EvalResult kernel_E(double x, double t, const MultiTermSpec& spec,
                    const QuadratureConfig& cfg);
EvalResult kernel_E_dx(double x, double t, const MultiTermSpec& spec,
                       const QuadratureConfig& cfg);
EvalResult kernel_E_dxx(double x, double t, const MultiTermSpec& spec,
                        const QuadratureConfig& cfg);

// Fundamental solution propagating the initial condition:
// Z = sum_k lambda_k Gamma^{1-alpha_k}_1.
EvalResult kernel_Z(double x, double t, const MultiTermSpec& spec,
                    const QuadratureConfig& cfg);
EvalResult kernel_Z_dx(double x, double t, const MultiTermSpec& spec,
                       const QuadratureConfig& cfg);
EvalResult kernel_Z_dxx(double x, double t, const MultiTermSpec& spec,
                        const QuadratureConfig& cfg);

// int_R Z(x,t) dx over the truncated line plus a fitted-envelope tail bound.
EvalResult z_total_mass(double t, const MultiTermSpec& spec,
                        const QuadratureConfig& cfg);

enum class BoundKind { Gam1, Gam2, Gam3, Gam4, Ls1, Ls2, Ls3, Ls4, Ls5, Ls6 };

const char* bound_kind_name(BoundKind k);
std::optional<BoundKind> bound_kind_from_name(const std::string& name);

// Bound-evaluator data: admissible kappa (below spec.kappa_sup_kernel()),
// horizon T for the t-restricted bounds, which bound, and the mu the Gam
// bounds refer to (ignored by the Ls kinds).
struct EstimateParams {
    double kappa;
    double T = 1.0;
    BoundKind kind = BoundKind::Ls1;
    double mu = 0.0;
};

// eta(z,n) factor of the derivative estimates.
double bound_eta(double z, double n);

// Majorant of the given kind with C = 1; z = x^2 t^{-alpha_m}.
double bound_majorant(double x, double t, const MultiTermSpec& spec,
                      const EstimateParams& params);

// The kernel/derivative the bound refers to.
EvalResult bound_quantity(double x, double t, const MultiTermSpec& spec,
                          const EstimateParams& params,
                          const QuadratureConfig& cfg);

struct GridSpec {
    double x_lo, x_hi;  // log-spaced in x and t
    double t_lo, t_hi;
    int nx = 20, nt = 20;
};

struct SweepPoint {
    double x, t, z;
    double quantity, majorant, ratio;
    bool ok;
    std::string note;
};

struct SweepReport {
    EstimateParams params;
    std::vector<SweepPoint> points;
    double fitted_C = 0.0;  // empirical sup of the ratio
    int failures = 0;
};

// Ratio |quantity| / majorant over a log grid; fitted_C is the sup. Points
// that fail to evaluate are flagged, not fatal.
SweepReport estimate_sweep(const MultiTermSpec& spec,
                           const EstimateParams& params, const GridSpec& grid,
                           const QuadratureConfig& cfg);

}  // namespace fracpot
