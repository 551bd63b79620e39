#include "fracpot/wright.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace fracpot {

namespace {

// log of an upper bound on |1/Gamma(x)|, valid for all real x.
double log_recip_gamma_bound(double x) {
    if (x >= 0.5) return 0.1216;  // log(1/0.8856) and a little slack
    // reflection: |1/Gamma(x)| = |Gamma(1-x) sin(pi x)| / pi <= Gamma(1-x)/pi
    return std::lgamma(1.0 - x) - 1.1447298858494002;  // log(pi)
}

struct SeriesControl {
    double z, beta, delta;

    // log of the term majorant m_k = z^k / k! * bound(1/Gamma(delta-beta k))
    double log_majorant(double k) const {
        return k * std::log(z) - std::lgamma(k + 1.0) +
               log_recip_gamma_bound(delta - beta * k);
    }
};

}  // namespace

double wright_decay_coeff(double beta) {
    return (1.0 - beta) * std::pow(beta, beta / (1.0 - beta));
}

double recip_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    const double g = std::tgamma(x);
    if (std::isfinite(g) && g != 0.0) return 1.0 / g;
    // overflowed Gamma means the reciprocal underflows
    return 0.0;
}

EvalResult wright_neg(double z, const WrightParams& p, double tol,
                      int max_terms) {
    p.validate();
    if (!(z >= 0.0)) throw DomainError("wright_neg: z must be >= 0");
    if (!(tol > 0.0)) throw DomainError("wright_neg: tol must be positive");
    if (max_terms < 1) throw DomainError("wright_neg: max_terms must be >= 1");

    if (z == 0.0) {
        const double v = recip_gamma(p.delta);
        return {v, 4e-16 * std::abs(v)};
    }

    const double beta = p.beta, delta = p.delta;
    const double growth =
        wright_decay_coeff(beta) * std::pow(z, 1.0 / (1.0 - beta));

    // working precision: enough bits to absorb the full cancellation plus the
    // requested absolute tolerance
    long prec = 96;
    prec += static_cast<long>(std::ceil(std::max(0.0, growth) / M_LN2));
    prec += static_cast<long>(std::ceil(std::max(0.0, -std::log2(tol))));
    prec = std::min(prec, 1L << 16);

    const SeriesControl ctl{z, beta, delta};
    const double k_peak =
        std::pow(z * std::pow(beta, beta), 1.0 / (1.0 - beta));

    mpfr_t sum, sumabs, pw, garg, g, term;
    mpfr_inits2(prec, sum, sumabs, pw, garg, g, term, (mpfr_ptr)nullptr);
    mpfr_set_zero(sum, 1);
    mpfr_set_zero(sumabs, 1);
    mpfr_set_ui(pw, 1, MPFR_RNDN);  // (-z)^k / k!

    bool converged = false;
    double tail_bound = 0.0;
    for (int k = 0; k < max_terms; ++k) {
        // garg = delta - beta*k, exact in the working precision
        mpfr_set_d(garg, beta, MPFR_RNDN);
        mpfr_mul_ui(garg, garg, static_cast<unsigned long>(k), MPFR_RNDN);
        mpfr_d_sub(garg, delta, garg, MPFR_RNDN);

        const bool pole = mpfr_integer_p(garg) && mpfr_sgn(garg) <= 0;
        if (!pole) {
            mpfr_gamma(g, garg, MPFR_RNDN);
            mpfr_div(term, pw, g, MPFR_RNDN);
            mpfr_add(sum, sum, term, MPFR_RNDN);
            mpfr_abs(term, term, MPFR_RNDN);
            mpfr_add(sumabs, sumabs, term, MPFR_RNDN);
        }

        mpfr_mul_d(pw, pw, -z, MPFR_RNDN);
        mpfr_div_ui(pw, pw, static_cast<unsigned long>(k) + 1, MPFR_RNDN);

        if (k + 1 >= k_peak && k >= 2) {
            const double lm1 = ctl.log_majorant(k + 1.0);
            const double rho = std::exp(ctl.log_majorant(k + 2.0) - lm1);
            if (rho < 0.7) {
                const double bound = std::exp(lm1) / (1.0 - rho);
                if (bound < 0.25 * tol) {
                    converged = true;
                    tail_bound = bound;
                    break;
                }
            }
        }
    }

    const double value = mpfr_get_d(sum, MPFR_RNDN);
    const double round_err =
        mpfr_get_d(sumabs, MPFR_RNDN) * std::ldexp(1.0, -(int)(prec - 14));
    mpfr_clears(sum, sumabs, pw, garg, g, term, (mpfr_ptr)nullptr);

    if (!converged)
        throw NonConvergence(
            "wright_neg: series truncation bound not met within " +
            std::to_string(max_terms) + " terms at z=" + std::to_string(z) +
            ", beta=" + std::to_string(p.beta));

    return {value, tail_bound + round_err};
}

double wright_moment(double nu, const WrightParams& p) {
    p.validate();
    if (!(nu > 0.0)) throw DomainError("wright_moment: nu must be positive");
    const double arg = p.beta * nu + p.delta;
    const double nearest = std::nearbyint(arg);
    if (nearest <= 0.0 && std::abs(arg - nearest) < 1e-12)
        throw DomainError("wright_moment: beta*nu + delta is a Gamma pole");
    return std::tgamma(nu) * recip_gamma(arg);
}

double wright_rl_shift(double nu, double c, double t, const WrightParams& p) {
    p.validate();
    if (!(nu > 0.0 && c > 0.0 && t > 0.0))
        throw DomainError("wright_rl_shift: nu, c, t must be positive");
    const double z = c * std::pow(t, -p.beta);
    const double rough =
        std::exp(-wright_decay_coeff(p.beta) * std::pow(z, 1.0 / (1.0 - p.beta)));
    const double tol = std::max(1e-300, 1e-13 * std::min(1.0, rough));
    const EvalResult w =
        wright_neg(z, WrightParams{p.beta, p.delta + nu}, tol, 4096);
    return std::pow(t, p.delta + nu - 1.0) * w.value;
}

// ---------------------------------------------------------------------------
// tabulated profiles

namespace {

constexpr int kChebPts = 24;

// Chebyshev coefficients of f on [a,b] from kChebPts Gauss-Chebyshev nodes.
std::vector<double> cheb_fit(const std::vector<double>& fvals) {
    const int n = kChebPts;
    std::vector<double> c(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            s += fvals[j] * std::cos(k * std::numbers::pi * (j + 0.5) / n);
        c[k] = 2.0 * s / n;
    }
    c[0] *= 0.5;
    return c;
}

double cheb_eval(const std::vector<double>& c, double u) {
    // Clenshaw on [-1,1]
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
        const double b0 = 2.0 * u * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + c[0];
}

}  // namespace

WrightProfile::WrightProfile(WrightParams p, double tol, int max_terms)
    : params_(p), tol_(tol) {
    p.validate();
    if (!(tol > 0.0)) throw DomainError("WrightProfile: tol must be positive");

    const double B = wright_decay_coeff(p.beta);
    z_cut_ = std::pow((std::log(1.0 / tol) + 8.0) / B, 1.0 - p.beta);

    struct Todo {
        double a, b;
        int depth;
    };
    std::vector<Todo> stack{{0.0, z_cut_, 0}};
    const double node_tol = 0.125 * tol;

    while (!stack.empty()) {
        const Todo seg = stack.back();
        stack.pop_back();

        const double mid = 0.5 * (seg.a + seg.b), half = 0.5 * (seg.b - seg.a);
        std::vector<double> fv(kChebPts);
        for (int j = 0; j < kChebPts; ++j) {
            const double u = std::cos(std::numbers::pi * (j + 0.5) / kChebPts);
            fv[j] = wright_neg(mid + half * u, params_, node_tol, max_terms).value;
        }
        std::vector<double> c = cheb_fit(fv);
        const double tail = std::abs(c[kChebPts - 1]) + std::abs(c[kChebPts - 2]) +
                            std::abs(c[kChebPts - 3]);

        if (tail > 0.25 * tol && seg.depth < 36) {
            stack.push_back({mid, seg.b, seg.depth + 1});
            stack.push_back({seg.a, mid, seg.depth + 1});
            continue;
        }
        lo_.push_back(seg.a);
        hi_.push_back(seg.b);
        coef_.push_back(std::move(c));
    }

    // stack order already yields ascending segments; keep them sorted anyway
    std::vector<std::size_t> idx(lo_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [this](std::size_t l, std::size_t r) { return lo_[l] < lo_[r]; });
    std::vector<double> lo2, hi2;
    std::vector<std::vector<double>> c2;
    for (std::size_t i : idx) {
        lo2.push_back(lo_[i]);
        hi2.push_back(hi_[i]);
        c2.push_back(std::move(coef_[i]));
    }
    lo_ = std::move(lo2);
    hi_ = std::move(hi2);
    coef_ = std::move(c2);
}

double WrightProfile::operator()(double z) const {
    if (!(z >= 0.0)) throw DomainError("WrightProfile: z must be >= 0");
    if (z >= z_cut_) return 0.0;
    // binary search for the segment containing z
    std::size_t l = 0, r = hi_.size() - 1;
    while (l < r) {
        const std::size_t m = (l + r) / 2;
        if (z < hi_[m])
            r = m;
        else
            l = m + 1;
    }
    const double u = (2.0 * z - lo_[l] - hi_[l]) / (hi_[l] - lo_[l]);
    return cheb_eval(coef_[l], u);
}

namespace {

struct ProfileKey {
    double beta, delta, tol;
    bool operator<(const ProfileKey& o) const {
        if (beta != o.beta) return beta < o.beta;
        if (delta != o.delta) return delta < o.delta;
        return tol < o.tol;
    }
};

std::map<ProfileKey, std::unique_ptr<WrightProfile>>& profile_cache() {
    static std::map<ProfileKey, std::unique_ptr<WrightProfile>> cache;
    return cache;
}

std::mutex& profile_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

const WrightProfile& wright_profile(double beta, double delta, double tol) {
    const ProfileKey key{beta, delta, tol};
    std::lock_guard<std::mutex> lock(profile_mutex());
    auto& cache = profile_cache();
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache
                 .emplace(key, std::make_unique<WrightProfile>(
                                   WrightParams{beta, delta}, tol))
                 .first;
    }
    return *it->second;
}

double mwright_tail(double L, double beta, double tol) {
    if (!(L >= 0.0)) throw DomainError("mwright_tail: L must be >= 0");
    return wright_profile(beta, 1.0, tol)(L);
}

}  // namespace fracpot
