#include "fracpot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracpot {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1,1] (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value, err;
    int depth;
};

Panel eval_panel(const Integrand& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    // abscissae ordered: kXgk[0..6] give the symmetric pairs, kXgk[7]=0 center
    for (int j = 0; j < 7; ++j) {
        fv[2 * j] = f(c - h * kXgk[j]);
        fv[2 * j + 1] = f(c + h * kXgk[j]);
    }
    fv[14] = f(c);

    double resk = kWgk[7] * fv[14];
    double resg = kWg[3] * fv[14];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double fsum = fv[2 * j] + fv[2 * j + 1];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
        if (j % 2 == 1)  // kXgk[1],kXgk[3],kXgk[5] are the Gauss-7 nodes
            resg += kWg[j / 2] * fsum;
    }

    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[14] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));

    double err = std::abs(resk - resg) * h;
    resasc *= h;
    resabs *= h;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    if (eps50 > 0.0) err = std::max(err, eps50);

    return Panel{a, b, resk * h, err, depth};
}

}  // namespace

EvalResult gk15(const Integrand& f, double a, double b) {
    Panel p = eval_panel(f, a, b, 0);
    return {p.value, p.err};
}

void add_edge_breaks(std::vector<double>& bp, double lo, double hi,
                     double scale, bool toward_lo, double ratio) {
    if (!(scale > 0.0) || !(hi > lo) || !(ratio > 1.0)) return;
    const double len = hi - lo;
    for (double s = scale; s < 0.5 * len; s *= ratio)
        bp.push_back(toward_lo ? lo + s : hi - s);
}

EvalResult integrate(const Integrand& f, double a, double b,
                     const QuadratureConfig& cfg,
                     std::span<const double> breakpoints) {
    if (!(b > a)) return {0.0, 0.0};

    std::vector<double> edges;
    edges.reserve(breakpoints.size() + 2);
    edges.push_back(a);
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Panel> panels;
    panels.reserve(edges.size() + 64);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(eval_panel(f, edges[i], edges[i + 1], 0));

    auto totals = [&panels]() {
        double v = 0.0, e = 0.0;
        for (const Panel& p : panels) {
            v += p.value;
            e += p.err;
        }
        return std::pair<double, double>{v, e};
    };

    auto [val, err] = totals();
    while (static_cast<int>(panels.size()) < cfg.max_panels) {
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(val));
        if (err <= target) break;

        // deterministic worst-first: first panel attaining the max error
        std::size_t worst = 0;
        double we = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].err > we && panels[i].depth < cfg.max_depth) {
                we = panels[i].err;
                worst = i;
            }
        }
        if (we <= 0.0) break;  // everything at depth cap

        Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {  // interval at floating-point resolution
            panels[worst].depth = cfg.max_depth;
            continue;
        }
        panels[worst] = eval_panel(f, p.a, mid, p.depth + 1);
        panels.push_back(eval_panel(f, mid, p.b, p.depth + 1));

        std::tie(val, err) = totals();
    }

    // final deterministic reduction in interval order
    std::sort(panels.begin(), panels.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    double sum = 0.0, comp = 0.0, esum = 0.0;
    for (const Panel& p : panels) {
        const double y = p.value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        esum += p.err;
    }

    const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum));
    if (esum > 10.0 * target)
        throw QuadratureFailure("integrate: error " + std::to_string(esum) +
                                " exceeds tolerance " + std::to_string(target) +
                                " with " + std::to_string(panels.size()) + " panels");
    return {sum, esum};
}

EvalResult integrate_power_endpoint(const Integrand& F, double t, double a,
                                    const QuadratureConfig& cfg,
                                    std::span<const double> extra) {
    if (!(t > 0.0)) return {0.0, 0.0};
    if (!(a > 0.0) || a > 1.0 + 1e-14)
        throw DomainError("integrate_power_endpoint: exponent must lie in (0,1]");

    const double cut = 0.5 * t;
    // v = u^a on (0, cut]: integrand F(v^{1/a}) * v^{1/a - 1} / a
    const double inv_a = 1.0 / a;
    auto G = [&](double v) {
        const double u = std::pow(v, inv_a);
        return F(u) * inv_a * std::pow(v, inv_a - 1.0);
    };
    const double v_hi = std::pow(cut, a);

    std::vector<double> bp;
    add_edge_breaks(bp, 0.0, v_hi, v_hi * 0x1p-20, true);
    for (double s : extra) {
        if (s > 0.0 && s < cut) bp.push_back(std::pow(s, a));
    }
    EvalResult left = integrate(G, 0.0, v_hi, cfg.scaled(0.5), bp);

    std::vector<double> bp2;
    for (double s : extra)
        if (s > cut && s < t) bp2.push_back(s);
    EvalResult right = integrate(F, cut, t, cfg.scaled(0.5), bp2);

    return {left.value + right.value, left.err_est + right.err_est};
}

EvalResult integrate_two_sided(const Integrand2& F, double t, double a0,
                               double a1, const QuadratureConfig& cfg,
                               std::span<const double> scales_at_0,
                               std::span<const double> scales_at_t) {
    if (!(t > 0.0)) return {0.0, 0.0};
    if (!(a0 > 0.0 && a0 <= 1.0 + 1e-14) || !(a1 > 0.0 && a1 <= 1.0 + 1e-14))
        throw DomainError("integrate_two_sided: exponents must lie in (0,1]");
    const double cut = 0.5 * t;
    const QuadratureConfig half = cfg.scaled(0.5);

    // left half: tau in (0, cut], F ~ tau^{a0-1}; substitute v = tau^{a0}
    const double inv0 = 1.0 / a0;
    auto G0 = [&](double v) {
        const double tau = std::pow(v, inv0);
        return F(tau, t - tau) * inv0 * std::pow(v, inv0 - 1.0);
    };
    const double v0_hi = std::pow(cut, a0);
    std::vector<double> bp0;
    add_edge_breaks(bp0, 0.0, v0_hi, v0_hi * 0x1p-8, true);
    for (double s : scales_at_0)
        if (s > 0.0 && s < cut) bp0.push_back(std::pow(s, a0));
    EvalResult left = integrate(G0, 0.0, v0_hi, half, bp0);

    // right half: u = t-tau in (0, cut], F ~ u^{a1-1}; substitute v = u^{a1}
    const double inv1 = 1.0 / a1;
    auto G1 = [&](double v) {
        const double u = std::pow(v, inv1);
        return F(t - u, u) * inv1 * std::pow(v, inv1 - 1.0);
    };
    const double v1_hi = std::pow(cut, a1);
    std::vector<double> bp1;
    add_edge_breaks(bp1, 0.0, v1_hi, v1_hi * 0x1p-12, true);
    for (double s : scales_at_t)
        if (s > 0.0 && s < cut) bp1.push_back(std::pow(s, a1));
    EvalResult right = integrate(G1, 0.0, v1_hi, half, bp1);

    return {left.value + right.value, left.err_est + right.err_est};
}

}  // namespace fracpot
