#include "fracpot/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracpot/quadrature.hpp"

namespace fracpot {

namespace {

constexpr double kInvSqrt4Pi = 0.28209479177387814;  // (4 pi)^{-1/2}

// w_mu(p,t) evaluator with profiles resolved once per construction.
class WmuEvaluator {
public:
    WmuEvaluator(const MultiTermSpec& spec, const MuSplit& split,
                 const QuadratureConfig& cfg)
        : spec_(spec), split_(split), cfg_(cfg) {
        profs_.reserve(spec.m());
        for (int j = 0; j < spec.m(); ++j)
            profs_.push_back(&wright_profile(spec.alphas[j], split.parts[j],
                                             cfg.wright_table_tol));
    }

    double operator()(double p, double t) const {
        const int m = spec_.m();
        if (m == 1) {
            const double z = spec_.lambdas[0] * p * std::pow(t, -spec_.alphas[0]);
            return std::pow(t, split_.parts[0] - 1.0) * (*profs_[0])(z);
        }
        std::vector<FactorTable> fs;
        fs.reserve(m);
        for (int j = 0; j < m; ++j)
            fs.emplace_back(profs_[j], split_.parts[j], spec_.lambdas[j] * p,
                            spec_.alphas[j]);
        QuadratureConfig inner = cfg_;
        inner.rel_tol = std::min(cfg_.rel_tol, 1e-7);
        return conv_factors(fs, t, inner).value;
    }

    // largest p with a nonempty convolution support at time t
    double support_edge(double t) const {
        const int m = spec_.m();
        auto width = [&](double p) {
            double s = 0.0;
            for (int j = 0; j < m; ++j)
                s += std::pow(spec_.lambdas[j] * p / profs_[j]->z_cut(),
                              1.0 / spec_.alphas[j]);
            return s;
        };
        double hi = std::pow(t, spec_.alpha_m());
        while (width(hi) < t) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (width(mid) < t ? lo : hi) = mid;
        }
        return hi;
    }

private:
    const MultiTermSpec& spec_;
    const MuSplit& split_;
    const QuadratureConfig& cfg_;
    std::vector<const WrightProfile*> profs_;
};

MuSplit resolve_split(double mu, const MultiTermSpec& spec,
                      const MuSplit* split) {
    if (split) {
        split->validate(spec.m());
        if (std::abs(split->mu - mu) > 1e-12 * (1.0 + std::abs(mu)))
            throw DomainError("gamma1: split sum disagrees with mu");
        return *split;
    }
    return MuSplit::symmetric(mu, spec.m());
}

// shared evaluator for Gamma^mu_1 and its first two x-derivatives
EvalResult gamma_deriv(int order, double mu, double x, double t,
                       const MultiTermSpec& spec, const QuadratureConfig& cfg,
                       const MuSplit* split_opt) {
    spec.validate();
    if (!(t > 0.0)) throw SingularInput("gamma1: t must be positive");
    if (order >= 2 && x == 0.0)
        throw SingularInput("gamma1: second x-derivative is singular at x = 0");
    if (order == 1 && x == 0.0) return {0.0, 0.0};  // odd in x

    const MuSplit split = resolve_split(mu, spec, split_opt);
    const WmuEvaluator w(spec, split, cfg);

    const double am = spec.alpha_m();
    const double kw = cfg.kappa_fraction * spec.kappa_sup_w();
    const double p_decay =
        std::pow(t, am) * std::pow(cfg.exp_cutoff / kw, 1.0 - am);
    const double p_max = std::min(p_decay, w.support_edge(t) * 1.000001);

    if (order == 0) {
        // q = sqrt(p): pi^{-1/2} int e^{-x^2/(4 q^2)} w(q^2,t) dq
        const double q_max = std::sqrt(p_max);
        auto F = [&](double q) {
            const double gauss =
                (x == 0.0) ? 1.0 : std::exp(-x * x / (4.0 * q * q));
            return gauss * w(q * q, t);
        };
        std::vector<double> bp;
        add_edge_breaks(bp, 0.0, q_max, q_max * 0x1p-16, true);
        add_edge_breaks(bp, 0.0, q_max, q_max * 0x1p-8, false);
        if (x != 0.0) {
            const double q_x = 0.5 * std::abs(x) / std::sqrt(cfg.exp_cutoff);
            if (q_x < q_max) bp.push_back(q_x);
        }
        QuadratureConfig local = cfg;
        local.abs_tol = cfg.abs_tol;  // caller-scaled absolute target
        EvalResult r = integrate(F, 0.0, q_max, local, bp);
        const double c = 2.0 * kInvSqrt4Pi;
        return {c * r.value, c * r.err_est + cfg.wright_table_tol};
    }

    // orders 1 and 2 use the scaled variable v = p / x^2
    const double xa = std::abs(x);
    const double v_min = 1.0 / (4.0 * (cfg.exp_cutoff + 8.0));
    const double v_max = p_max / (x * x);
    if (!(v_max > v_min)) return {0.0, cfg.wright_table_tol};

    Integrand F;
    if (order == 1) {
        F = [&](double v) {
            return std::pow(v, -1.5) * std::exp(-0.25 / v) * w(x * x * v, t);
        };
    } else {
        F = [&](double v) {
            return (0.25 * std::pow(v, -2.5) - 0.5 * std::pow(v, -1.5)) *
                   std::exp(-0.25 / v) * w(x * x * v, t);
        };
    }

    std::vector<double> bp;
    add_edge_breaks(bp, v_min, v_max, v_min * 0.5, true);
    for (double s = v_min; s < v_max; s *= 4.0) bp.push_back(s);
    QuadratureConfig local = cfg;
    EvalResult r = integrate(F, v_min, v_max, local, bp);

    if (order == 1) {
        const double c = -std::copysign(0.5, x) * kInvSqrt4Pi;
        return {c * r.value, 0.5 * kInvSqrt4Pi * r.err_est + cfg.wright_table_tol};
    }
    const double c = kInvSqrt4Pi / xa;
    return {c * r.value, c * r.err_est + cfg.wright_table_tol};
}

}  // namespace

EvalResult gamma1(double mu, double x, double t, const MultiTermSpec& spec,
                  const QuadratureConfig& cfg, const MuSplit* split) {
    return gamma_deriv(0, mu, x, t, spec, cfg, split);
}

EvalResult gamma1_dx(double mu, double x, double t, const MultiTermSpec& spec,
                     const QuadratureConfig& cfg, const MuSplit* split) {
    return gamma_deriv(1, mu, x, t, spec, cfg, split);
}

EvalResult gamma1_dxx(double mu, double x, double t, const MultiTermSpec& spec,
                      const QuadratureConfig& cfg, const MuSplit* split) {
    return gamma_deriv(2, mu, x, t, spec, cfg, split);
}

EvalResult kernel_E(double x, double t, const MultiTermSpec& spec,
                    const QuadratureConfig& cfg) {
    return gamma_deriv(0, 0.0, x, t, spec, cfg, nullptr);
}

EvalResult kernel_E_dx(double x, double t, const MultiTermSpec& spec,
                       const QuadratureConfig& cfg) {
    return gamma_deriv(1, 0.0, x, t, spec, cfg, nullptr);
}

EvalResult kernel_E_dxx(double x, double t, const MultiTermSpec& spec,
                        const QuadratureConfig& cfg) {
    return gamma_deriv(2, 0.0, x, t, spec, cfg, nullptr);
}

namespace {

EvalResult z_sum(int order, double x, double t, const MultiTermSpec& spec,
                 const QuadratureConfig& cfg) {
    spec.validate();
    EvalResult total{0.0, 0.0};
    for (int k = 0; k < spec.m(); ++k) {
        const EvalResult g =
            gamma_deriv(order, 1.0 - spec.alphas[k], x, t, spec, cfg, nullptr);
        total.value += spec.lambdas[k] * g.value;
        total.err_est += spec.lambdas[k] * g.err_est;
    }
    return total;
}

}  // namespace

EvalResult kernel_Z(double x, double t, const MultiTermSpec& spec,
                    const QuadratureConfig& cfg) {
    return z_sum(0, x, t, spec, cfg);
}

EvalResult kernel_Z_dx(double x, double t, const MultiTermSpec& spec,
                       const QuadratureConfig& cfg) {
    return z_sum(1, x, t, spec, cfg);
}

EvalResult kernel_Z_dxx(double x, double t, const MultiTermSpec& spec,
                        const QuadratureConfig& cfg) {
    return z_sum(2, x, t, spec, cfg);
}

EvalResult z_total_mass(double t, const MultiTermSpec& spec,
                        const QuadratureConfig& cfg) {
    spec.validate();
    if (!(t > 0.0)) throw SingularInput("z_total_mass: t must be positive");
    const double am = spec.alpha_m();
    const double kk = cfg.kappa_fraction * spec.kappa_sup_kernel();
    const double scale = std::pow(t, 0.5 * am);
    const double R = scale * std::pow(cfg.exp_cutoff / kk, 0.5 * (2.0 - am));

    auto F = [&](double x) { return kernel_Z(x, t, spec, cfg.scaled(0.5)).value; };
    std::vector<double> bp;
    add_edge_breaks(bp, 0.0, R, scale * 0x1p-6, true);
    EvalResult half = integrate(F, 0.0, R, cfg, bp);

    // tail: fit the (ls4) envelope at 0.8 R and integrate it beyond R
    const double x_fit = 0.8 * R;
    const double env_fit =
        std::pow(t, -0.5 * am) *
        std::exp(-kk * std::pow(x_fit / scale, 2.0 / (2.0 - am)));
    const double c_fit = std::abs(F(x_fit)) / std::max(env_fit, 1e-300);
    auto env = [&](double x) {
        return std::pow(t, -0.5 * am) *
               std::exp(-kk * std::pow(x / scale, 2.0 / (2.0 - am)));
    };
    const EvalResult tail = integrate(env, R, 4.0 * R, cfg.scaled(100.0));
    const double tail_bound = c_fit * (tail.value + tail.err_est);

    return {2.0 * half.value, 2.0 * (half.err_est + tail_bound)};
}

const char* bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::Gam1: return "gam1";
        case BoundKind::Gam2: return "gam2";
        case BoundKind::Gam3: return "gam3";
        case BoundKind::Gam4: return "gam4";
        case BoundKind::Ls1: return "ls1";
        case BoundKind::Ls2: return "ls2";
        case BoundKind::Ls3: return "ls3";
        case BoundKind::Ls4: return "ls4";
        case BoundKind::Ls5: return "ls5";
        case BoundKind::Ls6: return "ls6";
    }
    return "?";
}

std::optional<BoundKind> bound_kind_from_name(const std::string& name) {
    static const std::pair<const char*, BoundKind> table[] = {
        {"gam1", BoundKind::Gam1}, {"gam2", BoundKind::Gam2},
        {"gam3", BoundKind::Gam3}, {"gam4", BoundKind::Gam4},
        {"ls1", BoundKind::Ls1},   {"ls2", BoundKind::Ls2},
        {"ls3", BoundKind::Ls3},   {"ls4", BoundKind::Ls4},
        {"ls5", BoundKind::Ls5},   {"ls6", BoundKind::Ls6}};
    for (const auto& [n, k] : table)
        if (name == n) return k;
    return std::nullopt;
}

double bound_eta(double z, double n) {
    if (n < 2.0) return 1.0;
    if (n == 2.0) return 1.0 + std::abs(std::log(z));
    return std::pow(z, 1.0 - 0.5 * n);
}

namespace {

// descriptor p of (gam2)/(gam3): 1 unless -mu is a nonnegative integer
double p_descriptor(double mu) {
    const double n = std::nearbyint(-mu);
    if (n >= 0.0 && std::abs(-mu - n) < 1e-12) return -1.0;
    return 1.0;
}

}  // namespace

double bound_majorant(double x, double t, const MultiTermSpec& spec,
                      const EstimateParams& params) {
    const double am = spec.alpha_m();
    const double z = x * x * std::pow(t, -am);
    const double ex =
        std::exp(-params.kappa * std::pow(z, 1.0 / (2.0 - am)));
    const double mu = params.mu;
    switch (params.kind) {
        case BoundKind::Gam1:
            return std::pow(t, mu + 0.5 * am - 1.0) * ex;
        case BoundKind::Gam2:
            return std::abs(x) * std::pow(t, mu - 0.5 * am - 1.0) *
                   bound_eta(z, p_descriptor(mu) + 2.0) * ex;
        case BoundKind::Gam3:
            return std::pow(t, mu - 0.5 * am - 1.0) *
                   bound_eta(z, p_descriptor(mu) + 2.0) * ex;
        case BoundKind::Gam4:
            return std::pow(t, mu - 0.5 * am - 1.0) * ex;
        case BoundKind::Ls1:
            return std::pow(t, 0.5 * am - 1.0) * ex;
        case BoundKind::Ls2:
            return std::abs(x) * std::pow(t, -0.5 * am - 1.0) * ex;
        case BoundKind::Ls3:
            return std::pow(t, -0.5 * am - 1.0) * ex;
        case BoundKind::Ls4:
            return std::pow(t, -0.5 * am) * ex;
        case BoundKind::Ls5:
            return std::pow(t, -am) * ex;
        case BoundKind::Ls6:
            return std::pow(t, -1.5 * am) * ex;
    }
    return 0.0;
}

EvalResult bound_quantity(double x, double t, const MultiTermSpec& spec,
                          const EstimateParams& params,
                          const QuadratureConfig& cfg) {
    switch (params.kind) {
        case BoundKind::Gam1: return gamma1(params.mu, x, t, spec, cfg);
        case BoundKind::Gam2: return gamma1_dx(params.mu, x, t, spec, cfg);
        case BoundKind::Gam3:
        case BoundKind::Gam4: return gamma1_dxx(params.mu, x, t, spec, cfg);
        case BoundKind::Ls1: return kernel_E(x, t, spec, cfg);
        case BoundKind::Ls2: return kernel_E_dx(x, t, spec, cfg);
        case BoundKind::Ls3: return kernel_E_dxx(x, t, spec, cfg);
        case BoundKind::Ls4: return kernel_Z(x, t, spec, cfg);
        case BoundKind::Ls5: return kernel_Z_dx(x, t, spec, cfg);
        case BoundKind::Ls6: return kernel_Z_dxx(x, t, spec, cfg);
    }
    return {0.0, 0.0};
}

namespace {

bool bound_needs_horizon(BoundKind k) {
    return k == BoundKind::Gam4 || k == BoundKind::Ls4 || k == BoundKind::Ls5 ||
           k == BoundKind::Ls6;
}

}  // namespace

SweepReport estimate_sweep(const MultiTermSpec& spec,
                           const EstimateParams& params, const GridSpec& grid,
                           const QuadratureConfig& cfg) {
    spec.validate();
    if (!(params.kappa > 0.0 && params.kappa < spec.kappa_sup_kernel()))
        throw DomainError("estimate_sweep: kappa outside the admissible range");
    if (bound_needs_horizon(params.kind) && grid.t_hi > params.T * 1.0000001)
        throw DomainError("estimate_sweep: this bound requires t <= T");

    SweepReport rep;
    rep.params = params;
    rep.points.reserve(static_cast<std::size_t>(grid.nx) * grid.nt);

    const double am = spec.alpha_m();
    for (int i = 0; i < grid.nt; ++i) {
        const double t =
            grid.t_lo * std::pow(grid.t_hi / grid.t_lo,
                                 grid.nt == 1 ? 0.0 : double(i) / (grid.nt - 1));
        for (int j = 0; j < grid.nx; ++j) {
            const double x =
                grid.x_lo * std::pow(grid.x_hi / grid.x_lo,
                                     grid.nx == 1 ? 0.0 : double(j) / (grid.nx - 1));
            SweepPoint pt;
            pt.x = x;
            pt.t = t;
            pt.z = x * x * std::pow(t, -am);
            pt.ok = true;
            try {
                pt.quantity = bound_quantity(x, t, spec, params, cfg).value;
                pt.majorant = bound_majorant(x, t, spec, params);
                pt.ratio = (pt.majorant > 0.0)
                               ? std::abs(pt.quantity) / pt.majorant
                               : 0.0;
                rep.fitted_C = std::max(rep.fitted_C, pt.ratio);
            } catch (const std::exception& e) {
                pt.ok = false;
                pt.quantity = pt.majorant = pt.ratio = 0.0;
                pt.note = e.what();
                ++rep.failures;
            }
            rep.points.push_back(std::move(pt));
        }
    }
    return rep;
}

}  // namespace fracpot
