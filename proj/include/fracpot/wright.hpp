#pragma once

#include <vector>

#include "fracpot/types.hpp"

namespace fracpot {

// Parameters of W(z; -beta, delta). The entire-function regime beta in (0,1)
// is the only one supported.
struct WrightParams {
    double beta;
    double delta;

    void validate() const {
        if (!(beta > 0.0 && beta < 1.0))
            throw DomainError("WrightParams: beta must lie in (0,1)");
    }
};

// W(-z; -beta, delta) = sum_k (-z)^k / (k! Gamma(delta - beta k)) for z >= 0,
// summed in adaptive-precision arithmetic so that cancellation never degrades
// the result; the returned err_est bounds truncation plus rounding. Terms
// whose Gamma argument is a nonpositive integer are exactly zero. Throws
// NonConvergence when the truncation target cannot be met in max_terms terms.
EvalResult wright_neg(double z, const WrightParams& p, double tol,
                      int max_terms = 512);

// Exact moment integral: int_0^inf z^{nu-1} W(-z;-beta,delta) dz
// = Gamma(nu) / Gamma(beta nu + delta). Throws DomainError when nu <= 0 or
// beta nu + delta is a nonpositive integer (Gamma pole).
double wright_moment(double nu, const WrightParams& p);

// Right side of the fractional-integral shift identity:
// I^nu [ t^{delta-1} W(-c t^{-beta};-beta,delta) ]
//   = t^{delta+nu-1} W(-c t^{-beta};-beta,delta+nu).
double wright_rl_shift(double nu, double c, double t, const WrightParams& p);

// Leading decay coefficient B(beta) = (1-beta) beta^{beta/(1-beta)} in
// |W(-z;-beta,delta)| ~ poly(z) exp(-B z^{1/(1-beta)}) as z -> +inf. Also the
// growth rate of the largest series term, so it scales both the cancellation
// budget and decay-based truncation radii.
double wright_decay_coeff(double beta);

// 1/Gamma(x) with the reciprocal-gamma convention: exactly 0 at poles.
double recip_gamma(double x);

// Piecewise-Chebyshev table of z -> W(-z;-beta,delta) on [0, z_cut], exact 0
// beyond (where |W| <= tol). Evaluation costs a few tens of ns; absolute
// accuracy tol on the whole half-line.
class WrightProfile {
public:
    WrightProfile(WrightParams p, double tol, int max_terms = 4096);

    double operator()(double z) const;

    double z_cut() const { return z_cut_; }
    double tol() const { return tol_; }
    const WrightParams& params() const { return params_; }

private:
    WrightParams params_;
    double tol_;
    double z_cut_;
    std::vector<double> lo_, hi_;            // segment bounds
    std::vector<std::vector<double>> coef_;  // Chebyshev coefficients per segment
};

// Process-wide profile cache keyed by (beta, delta, tol). Returned reference
// stays valid for the process lifetime; safe for concurrent use.
const WrightProfile& wright_profile(double beta, double delta,
                                    double tol = 1e-12);

// Tail mass of the M-Wright density: int_L^inf W(-z;-beta,1-beta) dz
//   = W(-L;-beta,1)
// (termwise antiderivative of the series). Equals 1 at L = 0.
double mwright_tail(double L, double beta, double tol = 1e-12);

}  // namespace fracpot
