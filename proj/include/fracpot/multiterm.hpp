#pragma once

#include <span>
#include <vector>

#include "fracpot/types.hpp"
#include "fracpot/wright.hpp"

namespace fracpot {

// Single convolution factor h_j(t) = t^{mu_j-1} W(-lf_j t^{-alpha_j}; -alpha_j, mu_j).
// Direct series evaluation; propagates NonConvergence for extreme arguments.
double h_factor(double t, double mu_j, double lf_j, double alpha_j,
                double tol = 1e-13);

// Table-backed factor used inside convolution loops. The factor vanishes
// identically (below table tolerance) for u <= support_lo().
class FactorTable {
public:
    FactorTable(double mu_j, double lf_j, double alpha_j, double table_tol);
    // cache-free variant for hot loops: the profile must match (alpha_j, mu_j)
    FactorTable(const WrightProfile* prof, double mu_j, double lf_j,
                double alpha_j);

    double operator()(double u) const;
    double support_lo() const { return u_lo_; }
    double mu() const { return mu_j_; }

private:
    const WrightProfile* prof_;
    double mu_j_, lf_j_, alpha_j_, u_lo_;
};

// (f_1 * ... * f_n)(u): the convolution of prebuilt factors at u.
EvalResult conv_factors(std::span<const FactorTable> fs, double u,
                        const QuadratureConfig& cfg);

// w_mu(p,t) = S^mu_m(t; -lambda_1 p, ..., -lambda_m p; -alpha_1, ..., -alpha_m)
// as the (m-1)-fold convolution of the factors h_j. The value depends on the
// split only through its sum mu.
EvalResult s_mu(double t, double p, const MultiTermSpec& spec,
                const MuSplit& split, const QuadratureConfig& cfg);

// Same convolution for explicit factor arguments lf_j (not tied to one p).
EvalResult s_mu_general(double t, std::span<const double> mus,
                        std::span<const double> lfs,
                        std::span<const double> alphas,
                        const QuadratureConfig& cfg);

// Window integral, direct route: int_{t-delta}^{t} S^0_m(t-tau; -lf; -alpha) dtau.
// Depends on the window only; t enters through the precondition delta < t.
EvalResult s0_window_direct(double t, double delta, std::span<const double> lfs,
                            std::span<const double> alphas,
                            const QuadratureConfig& cfg);

// Window integral, nested route: the iterated tail integrals of the M-Wright
// densities with lower limits
//   delta_i = lf_i / (delta - sum_{k>i} (lf_k/zeta_k)^{1/alpha_k})^{alpha_i},
// an exhausted budget contributing zero. Value lies in [0,1].
EvalResult s0_window_nested(double delta, std::span<const double> lfs,
                            std::span<const double> alphas,
                            const QuadratureConfig& cfg);

// Parameters of the w_mu decay estimate. big_C is fitted empirically; the
// estimate only asserts its existence.
struct BoundParams {
    double kappa;
    double theta;
    double big_C = 0.0;
};

// Smallest admissible theta: 0 unless -mu is a nonnegative integer, then -1.
double wmpt4_default_theta(double mu);

// Majorant t^{mu-1} (p t^{-a_m})^{-theta} exp(-kappa (p t^{-a_m})^{1/(1-a_m)})
// with C = 1; admissibility requires kappa < spec.kappa_sup_w().
double wmpt4_majorant(double mu, double p, double t, const MultiTermSpec& spec,
                      double kappa, double theta);

struct RatioFit {
    double max_ratio = 0.0;  // fitted constant
    int n_points = 0;
    int failures = 0;
};

// Fits C on a log grid of (p,t); ratios of |w_mu| against the majorant.
RatioFit wmpt4_fit(double mu, const MultiTermSpec& spec, const MuSplit& split,
                   double kappa, std::span<const double> ps,
                   std::span<const double> ts, const QuadratureConfig& cfg);

}  // namespace fracpot
