#include "aoiq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "aoiq/errors.hpp"
#include "aoiq/parallel.hpp"
#include "aoiq/rng.hpp"

namespace aoiq {

namespace {

constexpr double kGolden = 0.6180339887498949;

struct Eval {
    Scheme scheme;
    const ServiceDistribution* dist;
    double lambda;
    Objective w;

    double operator()(double ei, double eb) const {
        const AoiMetrics m = analytic_metrics(scheme, *dist, lambda, ei, eb);
        const double v = w.w1 * m.avg_aoi + w.w2 * m.avg_peak_aoi;
        if (!std::isfinite(v)) {
            throw NumericalError("objective non-finite at eps_i=" + std::to_string(ei) +
                                 " eps_b=" + std::to_string(eb));
        }
        return v;
    }
};

// Golden-section minimization on [lo, hi] to absolute x-tolerance tol.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double tol) {
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (lo + hi);
    return {xm, f(xm)};
}

// Bracketed line minimization that walks downhill when the minimum sits on
// the bracket edge, so refinement started anywhere in a quasi-convex basin
// reaches the same floor.
template <class F>
std::pair<double, double> walking_line_min(F&& f, double x0, double step, double lo_bound,
                                           double hi_bound, double tol) {
    double center = x0;
    for (int iter = 0; iter < 256; ++iter) {
        const double lo = std::max(lo_bound, center - step);
        const double hi = std::min(hi_bound, center + step);
        auto [x, v] = golden_min(f, lo, hi, tol);
        const bool at_lo = x - lo < 2.0 * tol && lo > lo_bound;
        const bool at_hi = hi - x < 2.0 * tol && hi < hi_bound;
        if (!at_lo && !at_hi) return {x, v};
        center = x;
    }
    return {center, f(center)};
}

struct GridBest {
    double ei, eb, value;
    bool on_upper;
};

GridBest scan_grid(const Eval& f, bool two_d, double ub, int points, int jobs) {
    const std::size_t n = static_cast<std::size_t>(points);
    const double step = ub / static_cast<double>(points - 1);
    const std::size_t total = two_d ? n * n : n;
    std::vector<double> vals(total);
    parallel_map(total, jobs, [&](std::size_t idx) {
        const double ei = step * static_cast<double>(two_d ? idx / n : idx);
        const double eb = two_d ? step * static_cast<double>(idx % n) : 0.0;
        vals[idx] = f(ei, eb);
    });
    // Ascending index scan with strict '<' keeps ties at the smaller waits.
    std::size_t best = 0;
    for (std::size_t i = 1; i < total; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    GridBest g{};
    g.ei = step * static_cast<double>(two_d ? best / n : best);
    g.eb = two_d ? step * static_cast<double>(best % n) : 0.0;
    g.value = vals[best];
    g.on_upper = g.ei >= ub - 0.5 * step || (two_d && g.eb >= ub - 0.5 * step);
    return g;
}

struct Refined {
    double ei, eb, value;
};

Refined refine(const Eval& f, bool two_d, double ei0, double eb0, double step, double ub,
               double tol) {
    if (!two_d) {
        auto [x, v] = walking_line_min([&](double e) { return f(e, 0.0); }, ei0, step, 0.0,
                                       ub, tol);
        if (f(0.0, 0.0) <= v) return {0.0, 0.0, f(0.0, 0.0)};
        return {x, 0.0, v};
    }
    double ei = ei0, eb = eb0;
    double value = f(ei, eb);
    // Coordinate descent: at each bracket width, sweep both axes until the
    // point stops moving, then shrink. The line searches walk downhill, so a
    // restart anywhere in a quasi-convex basin reaches the same floor.
    for (double w = step; w > tol; w *= 0.5) {
        for (int sweep = 0; sweep < 64; ++sweep) {
            const double pei = ei, peb = eb;
            auto [xi, vi] = walking_line_min([&](double e) { return f(e, eb); }, ei, w, 0.0,
                                             ub, tol);
            ei = xi;
            auto [xb, vb] = walking_line_min([&](double e) { return f(ei, e); }, eb, w, 0.0,
                                             ub, tol);
            eb = xb;
            value = std::min(vi, vb);
            if (std::fabs(ei - pei) <= tol && std::fabs(eb - peb) <= tol) break;
        }
    }
    // Waits within tolerance of zero collapse to exactly zero when not worse.
    for (const auto& [ci, cb] : {std::pair{0.0, eb}, {ei, 0.0}, {0.0, 0.0}}) {
        const double v = f(ci, cb);
        if (v <= value) {
            ei = ci;
            eb = cb;
            value = v;
        }
    }
    return {ei, eb, value};
}

}  // namespace

OptResult optimize_waiting(Scheme scheme, const ServiceDistribution& dist, double lambda,
                           Objective objective, SearchConfig search) {
    if (objective.w1 < 0.0 || objective.w2 < 0.0 || objective.w1 + objective.w2 <= 0.0) {
        throw UsageError("objective weights must be nonnegative and not both zero");
    }
    if (search.grid_points < 3) throw UsageError("grid_points must be >= 3");
    const Eval f{scheme, &dist, lambda, objective};
    const bool two_d = scheme == Scheme::MG12Star;
    const double es = dist.mean();
    const double tol = search.tol_factor * (es > 0.0 ? es : 1.0);
    double ub = search.upper > 0.0 ? search.upper : 20.0 * (es > 0.0 ? es : 1.0);

    GridBest g{};
    for (int attempt = 0;; ++attempt) {
        g = scan_grid(f, two_d, ub, search.grid_points, search.jobs);
        if (!g.on_upper || attempt >= 3) break;
        ub *= 2.0;  // minimizer on the boundary: enlarge the search box
    }
    const double step = ub / static_cast<double>(search.grid_points - 1);

    Refined r = refine(f, two_d, g.ei, g.eb, step, ub, tol);
    if (g.value < r.value) r = {g.ei, g.eb, g.value};

    const double zero = f(0.0, 0.0);
    if (zero <= r.value) r = {0.0, 0.0, zero};  // prefer no waiting on ties

    if (search.health_check) {
        // Quasi-convexity is observed, not guaranteed: refinements restarted
        // from random cells should land on (nearly) the same value.
        Rng rng(mix_seed(0x9c0ffee, static_cast<std::uint64_t>(search.grid_points)));
        double vmin = r.value, vmax = r.value;
        for (int k = 0; k < 3; ++k) {
            const double ei = rng.u01() * ub;
            const double eb = two_d ? rng.u01() * ub : 0.0;
            const Refined rr = refine(f, two_d, ei, eb, step, ub, tol);
            vmin = std::min(vmin, rr.value);
            vmax = std::max(vmax, rr.value);
        }
        if (vmax - vmin > 1e-3 * (es > 0.0 ? es : 1.0)) {
            std::fprintf(stderr,
                         "warning: objective may not be quasi-convex (restart spread %g) "
                         "at lambda=%g %s\n",
                         vmax - vmin, lambda, dist.spec_string().c_str());
        }
    }

    OptResult out;
    out.eps_i_star = r.ei;
    out.eps_b_star = two_d ? r.eb : 0.0;
    out.value_star = r.value;
    out.value_zero_wait = zero;
    out.improvement = std::max(0.0, 1.0 - r.value / zero);
    out.grid_resolution = step;
    return out;
}

std::vector<TradeoffPoint> tradeoff_curve(Scheme scheme, const ServiceDistribution& dist,
                                          double lambda, const GridSpec& eps_i_grid,
                                          const GridSpec& eps_b_grid, int jobs) {
    const std::vector<double>& eis = eps_i_grid.values;
    const std::vector<double> ebs =
        scheme == Scheme::MG11 ? std::vector<double>{0.0} : eps_b_grid.values;
    std::vector<TradeoffPoint> pts(eis.size() * ebs.size());
    parallel_map(pts.size(), jobs, [&](std::size_t idx) {
        const double ei = eis[idx / ebs.size()];
        const double eb = ebs[idx % ebs.size()];
        const AoiMetrics m = analytic_metrics(scheme, dist, lambda, ei, eb);
        pts[idx] = {ei, eb, m.avg_aoi, m.avg_peak_aoi};
    });
    return pts;
}

std::vector<std::size_t> pareto_front(const std::vector<TradeoffPoint>& points) {
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].avg_aoi != points[b].avg_aoi) {
            return points[a].avg_aoi < points[b].avg_aoi;
        }
        return points[a].avg_peak_aoi < points[b].avg_peak_aoi;
    });
    std::vector<std::size_t> front;
    double best_peak = std::numeric_limits<double>::infinity();
    for (std::size_t idx : order) {
        if (points[idx].avg_peak_aoi < best_peak) {
            front.push_back(idx);
            best_peak = points[idx].avg_peak_aoi;
        }
    }
    return front;
}

std::vector<ImprovementRow> improvement_report(Scheme scheme, const ServiceDistribution& dist,
                                               std::span<const double> lambdas,
                                               SearchConfig search) {
    std::vector<ImprovementRow> rows;
    rows.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const OptResult r = optimize_waiting(scheme, dist, lambda, Objective{1.0, 0.0}, search);
        rows.push_back({lambda, r.value_zero_wait, r.value_star, r.eps_i_star, r.eps_b_star,
                        r.improvement});
    }
    return rows;
}

}  // namespace aoiq
