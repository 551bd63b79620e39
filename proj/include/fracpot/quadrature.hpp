#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracpot/types.hpp"

namespace fracpot {

using Integrand = std::function<double(double)>;

// Integrand over (0,t) receiving both endpoint distances: tau and u = t-tau.
// Each half-interval computes its own small coordinate directly, so u stays
// accurate down to denormal scale near tau = t (and tau near 0).
using Integrand2 = std::function<double(double /*tau*/, double /*u*/)>;

// Adaptive Gauss-Kronrod (7/15) integration of f over [a,b]. Breakpoints
// force the initial panel decomposition; refinement is worst-error-first and
// fully deterministic. Throws QuadratureFailure when the budget is exhausted
// while the estimated error still exceeds 10x the requested tolerance.
EvalResult integrate(const Integrand& f, double a, double b,
                     const QuadratureConfig& cfg,
                     std::span<const double> breakpoints = {});

// Single non-adaptive Gauss-Kronrod panel; returns {value, err}.
EvalResult gk15(const Integrand& f, double a, double b);

// Geometric breakpoints approaching `edge` from inside [lo,hi]: the panel
// widths grow by `ratio` away from the edge starting at `scale`.
void add_edge_breaks(std::vector<double>& bp, double lo, double hi,
                     double scale, bool toward_lo, double ratio = 2.0);

// Integral of F over (0, t] where F ~ u^{a-1} x smooth near u = 0 for some
// a in (0,1]. Substitutes v = u^a on (0, cut] to remove the endpoint power
// and integrates the rest directly. `extra` forces additional panel edges.
EvalResult integrate_power_endpoint(const Integrand& F, double t, double a,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> extra = {});

// Integral of F over (0, t) with power-type endpoint behavior at both ends:
// F ~ tau^{a0-1} x smooth near tau = 0 and ~ u^{a1-1} x smooth near tau = t
// (u = t - tau). Scales force panel edges at the given distances from the
// respective endpoint.
EvalResult integrate_two_sided(const Integrand2& F, double t, double a0,
                               double a1, const QuadratureConfig& cfg,
                               std::span<const double> scales_at_0 = {},
                               std::span<const double> scales_at_t = {});

}  // namespace fracpot
