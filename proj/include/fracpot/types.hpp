#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fracpot/errors.hpp"

namespace fracpot {

// Value plus an a-posteriori estimate of truncation + discretization error.
struct EvalResult {
    double value = 0.0;
    double err_est = 0.0;
};

// Operator data of the multi-term equation: orders alpha_1 < ... < alpha_m
// in (0,1) and positive weights lambda_k.
struct MultiTermSpec {
    std::vector<double> alphas;
    std::vector<double> lambdas;

    int m() const { return static_cast<int>(alphas.size()); }
    double alpha_m() const { return alphas.back(); }
    double lambda_m() const { return lambdas.back(); }

    void validate() const {
        if (alphas.empty() || alphas.size() != lambdas.size())
            throw DomainError("MultiTermSpec: orders/weights must be non-empty and equal length");
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            if (!(alphas[k] > 0.0 && alphas[k] < 1.0))
                throw DomainError("MultiTermSpec: orders must lie in (0,1)");
            if (!(lambdas[k] > 0.0))
                throw DomainError("MultiTermSpec: weights must be positive");
            if (k > 0 && !(alphas[k] > alphas[k - 1]))
                throw DomainError("MultiTermSpec: orders must be strictly increasing");
        }
    }

    // Supremum of admissible kappa in the w_mu estimate:
    // (1-a_m) (a_m^{a_m} l_m)^{1/(1-a_m)}.
    double kappa_sup_w() const {
        const double am = alpha_m(), lm = lambda_m();
        return (1.0 - am) * std::pow(std::pow(am, am) * lm, 1.0 / (1.0 - am));
    }

    // Supremum of admissible kappa in the kernel estimates:
    // (2-a_m) (a_m^{a_m} l_m / 4)^{1/(2-a_m)}.
    double kappa_sup_kernel() const {
        const double am = alpha_m(), lm = lambda_m();
        return (2.0 - am) * std::pow(std::pow(am, am) * lm / 4.0, 1.0 / (2.0 - am));
    }
};

// Decomposition mu = sum_j mu_j used to build the factors of the m-fold
// convolution. Any real split gives the same kernel value.
struct MuSplit {
    double mu = 0.0;
    std::vector<double> parts;

    static MuSplit symmetric(double mu, int m) {
        MuSplit s;
        s.mu = mu;
        s.parts.assign(static_cast<std::size_t>(m), mu / m);
        return s;
    }

    void validate(int m) const {
        if (static_cast<int>(parts.size()) != m)
            throw DomainError("MuSplit: part count must equal m");
        double sum = 0.0;
        for (double v : parts) sum += v;
        if (std::abs(sum - mu) > 1e-12 * (1.0 + std::abs(mu)) * m)
            throw DomainError("MuSplit: parts must sum to mu");
    }
};

// Tolerances, truncation and budget knobs shared by all improper/singular
// integrals in the library.
struct QuadratureConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    int max_panels = 4000;        // refinement budget per 1-D integral
    int max_depth = 48;           // bisection depth cap
    double exp_cutoff = 34.0;     // exp(-exp_cutoff) treated as negligible in truncations
    double kappa_fraction = 0.8;  // fraction of the kappa supremum used for truncation radii
    int wright_max_terms = 512;
    double wright_table_tol = 1e-12;

    QuadratureConfig scaled(double f) const {
        QuadratureConfig c = *this;
        c.abs_tol *= f;
        c.rel_tol *= f;
        return c;
    }
};

}  // namespace fracpot
