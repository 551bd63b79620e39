#include "fracpot/multiterm.hpp"

#include <algorithm>
#include <cmath>

#include "fracpot/quadrature.hpp"

namespace fracpot {

double h_factor(double t, double mu_j, double lf_j, double alpha_j,
                double tol) {
    if (!(t > 0.0)) throw DomainError("h_factor: t must be positive");
    if (!(lf_j > 0.0)) throw DomainError("h_factor: lf_j must be positive");
    const double z = lf_j * std::pow(t, -alpha_j);
    const EvalResult w = wright_neg(z, WrightParams{alpha_j, mu_j}, tol, 4096);
    return std::pow(t, mu_j - 1.0) * w.value;
}

FactorTable::FactorTable(double mu_j, double lf_j, double alpha_j,
                         double table_tol)
    : FactorTable(&wright_profile(alpha_j, mu_j, table_tol), mu_j, lf_j,
                  alpha_j) {}

FactorTable::FactorTable(const WrightProfile* prof, double mu_j, double lf_j,
                         double alpha_j)
    : prof_(prof), mu_j_(mu_j), lf_j_(lf_j), alpha_j_(alpha_j) {
    if (!(lf_j > 0.0)) throw DomainError("FactorTable: lf_j must be positive");
    u_lo_ = std::pow(lf_j / prof_->z_cut(), 1.0 / alpha_j);
}

double FactorTable::operator()(double u) const {
    if (u <= u_lo_) return 0.0;
    return std::pow(u, mu_j_ - 1.0) * (*prof_)(lf_j_ * std::pow(u, -alpha_j_));
}

// Convolution by pairwise nested quadrature; factors vanish below their
// support_lo, so the integrand is a smooth bump with superexponential ramps
// at both ends.
EvalResult conv_factors(std::span<const FactorTable> fs, double u,
                        const QuadratureConfig& cfg) {
    const std::size_t n = fs.size();
    if (n == 1) {
        const double v = fs[0](u);
        return {v, std::abs(v) * 1e-12};
    }
    double lo = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) lo += fs[j].support_lo();
    const double hi = u - fs[n - 1].support_lo();
    if (!(hi > lo)) return {0.0, 0.0};

    auto head = fs.first(n - 1);
    const FactorTable& last = fs[n - 1];
    auto F = [&](double tau) {
        return conv_factors(head, tau, cfg).value * last(u - tau);
    };

    std::vector<double> bp;
    const double len = hi - lo;
    add_edge_breaks(bp, lo, hi, len * 0x1p-10, true);
    add_edge_breaks(bp, lo, hi, len * 0x1p-10, false);

    QuadratureConfig local = cfg;
    local.abs_tol = 1e-280;  // relative-driven; magnitudes vary over many decades
    return integrate(F, lo, hi, local, bp);
}

namespace {

std::vector<FactorTable> make_factors(std::span<const double> mus,
                                      std::span<const double> lfs,
                                      std::span<const double> alphas,
                                      double table_tol) {
    std::vector<FactorTable> fs;
    fs.reserve(mus.size());
    for (std::size_t j = 0; j < mus.size(); ++j)
        fs.emplace_back(mus[j], lfs[j], alphas[j], table_tol);
    return fs;
}

}  // namespace

EvalResult s_mu_general(double t, std::span<const double> mus,
                        std::span<const double> lfs,
                        std::span<const double> alphas,
                        const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("s_mu: t must be positive");
    if (mus.size() != lfs.size() || lfs.size() != alphas.size() || lfs.empty())
        throw DomainError("s_mu: parameter lists must be non-empty and equal length");
    const auto fs = make_factors(mus, lfs, alphas, cfg.wright_table_tol);
    EvalResult r = conv_factors(fs, t, cfg);
    r.err_est += static_cast<double>(mus.size()) * cfg.wright_table_tol *
                 (1.0 + std::abs(r.value));
    return r;
}

EvalResult s_mu(double t, double p, const MultiTermSpec& spec,
                const MuSplit& split, const QuadratureConfig& cfg) {
    spec.validate();
    split.validate(spec.m());
    if (!(p > 0.0)) throw DomainError("s_mu: p must be positive");
    std::vector<double> lfs(spec.lambdas);
    for (double& lf : lfs) lf *= p;
    return s_mu_general(t, split.parts, lfs, spec.alphas, cfg);
}

EvalResult s0_window_direct(double t, double delta, std::span<const double> lfs,
                            std::span<const double> alphas,
                            const QuadratureConfig& cfg) {
    if (!(delta > 0.0 && delta < t))
        throw DomainError("s0_window_direct: need 0 < delta < t");
    std::vector<double> zeros(lfs.size(), 0.0);
    const auto fs = make_factors(zeros, lfs, alphas, cfg.wright_table_tol);

    double support = 0.0;
    for (const auto& f : fs) support += f.support_lo();
    if (support >= delta) return {0.0, cfg.wright_table_tol};

    auto F = [&](double u) { return conv_factors(fs, u, cfg.scaled(0.25)).value; };
    std::vector<double> bp;
    add_edge_breaks(bp, support, delta, (delta - support) * 0x1p-16, true);
    EvalResult r = integrate(F, support, delta, cfg, bp);
    r.err_est += static_cast<double>(lfs.size()) * cfg.wright_table_tol;
    return r;
}

namespace {

// Iterated tail integral over variables i, i-1, ..., 1 given the remaining
// window budget. The innermost level is the exact tail mass W(-L;-alpha,1).
double nested_level(std::size_t i, double budget, std::span<const double> lfs,
                    std::span<const double> alphas, double table_tol,
                    const QuadratureConfig& cfg) {
    if (!(budget > 0.0)) return 0.0;
    const double alpha = alphas[i - 1];
    const double L = lfs[i - 1] / std::pow(budget, alpha);
    if (i == 1) return mwright_tail(L, alpha, table_tol);

    const WrightProfile& dens = wright_profile(alpha, 1.0 - alpha, table_tol);
    const double Z = dens.z_cut();
    const double inner_full =
        nested_level(i - 1, budget, lfs, alphas, table_tol, cfg);
    if (L >= Z) return inner_full * mwright_tail(L, alpha, table_tol);

    auto F = [&](double zeta) {
        const double spent = std::pow(lfs[i - 1] / zeta, 1.0 / alpha);
        return dens(zeta) *
               nested_level(i - 1, budget - spent, lfs, alphas, table_tol, cfg);
    };
    std::vector<double> bp;
    add_edge_breaks(bp, L, Z, (Z - L) * 0x1p-12, true);
    QuadratureConfig local = cfg;
    local.abs_tol = std::max(1e-12, cfg.abs_tol * 0.25);
    const EvalResult r = integrate(F, L, Z, local, bp);

    // analytic tail beyond Z: the inner level saturates at its full-budget value
    return r.value + inner_full * mwright_tail(Z, alpha, table_tol);
}

}  // namespace

EvalResult s0_window_nested(double delta, std::span<const double> lfs,
                            std::span<const double> alphas,
                            const QuadratureConfig& cfg) {
    if (!(delta > 0.0)) throw DomainError("s0_window_nested: delta must be positive");
    if (lfs.size() != alphas.size() || lfs.empty())
        throw DomainError("s0_window_nested: parameter lists must match");
    const double v = nested_level(lfs.size(), delta, lfs, alphas,
                                  cfg.wright_table_tol, cfg);
    EvalResult r{v, cfg.abs_tol + 4.0 * lfs.size() * cfg.wright_table_tol};
    // the iterated integral is a sub-probability mass
    if (r.value < 0.0 && r.value > -r.err_est) r.value = 0.0;
    if (r.value > 1.0 && r.value < 1.0 + r.err_est) r.value = 1.0;
    return r;
}

double wmpt4_default_theta(double mu) {
    const double n = std::nearbyint(-mu);
    if (n >= 0.0 && std::abs(-mu - n) < 1e-12) return -1.0;
    return 0.0;
}

double wmpt4_majorant(double mu, double p, double t, const MultiTermSpec& spec,
                      double kappa, double theta) {
    const double am = spec.alpha_m();
    const double q = p * std::pow(t, -am);
    return std::pow(t, mu - 1.0) * std::pow(q, -theta) *
           std::exp(-kappa * std::pow(q, 1.0 / (1.0 - am)));
}

RatioFit wmpt4_fit(double mu, const MultiTermSpec& spec, const MuSplit& split,
                   double kappa, std::span<const double> ps,
                   std::span<const double> ts, const QuadratureConfig& cfg) {
    if (!(kappa > 0.0 && kappa < spec.kappa_sup_w()))
        throw DomainError("wmpt4_fit: kappa outside the admissible range");
    const double theta = wmpt4_default_theta(mu);
    RatioFit fit;
    for (double t : ts) {
        for (double p : ps) {
            ++fit.n_points;
            try {
                const EvalResult w = s_mu(t, p, spec, split, cfg);
                const double maj = wmpt4_majorant(mu, p, t, spec, kappa, theta);
                if (maj > 0.0)
                    fit.max_ratio = std::max(fit.max_ratio, std::abs(w.value) / maj);
            } catch (const std::exception&) {
                ++fit.failures;
            }
        }
    }
    return fit;
}

}  // namespace fracpot
