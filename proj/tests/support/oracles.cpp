#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "aoiq/errors.hpp"
#include "aoiq/rng.hpp"

namespace aoiq::test {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

namespace {

// log f_S(s); -inf where the density vanishes. Log space keeps the s -> 0
// endpoint finite for exp-sinh nodes at extreme abscissae.
double log_density(const ServiceDistribution& d, double s) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (s <= 0.0) return kNegInf;
    switch (d.kind()) {
        case DistKind::Gamma: {
            const double k = d.shape(), mu = d.rate();
            const double beta = k * mu;
            return k * std::log(beta) + (k - 1.0) * std::log(s) - beta * s - std::lgamma(k);
        }
        case DistKind::InverseGaussian: {
            const double a = d.shape(), mu = d.rate();
            const double dev = s - 1.0 / mu;
            return 0.5 * (std::log(a) - std::log(2.0 * M_PI) - 3.0 * std::log(s)) -
                   a * mu * mu * dev * dev / (2.0 * s);
        }
        case DistKind::Exponential: return std::log(d.rate()) - d.rate() * s;
        case DistKind::Deterministic:
            throw NumericalError("deterministic service has no density");
    }
    return kNegInf;
}

}  // namespace

double density(const ServiceDistribution& d, double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(log_density(d, s));
}

double cdf(const ServiceDistribution& d, double s) {
    if (s <= 0.0) return 0.0;
    switch (d.kind()) {
        case DistKind::Gamma:
            return boost::math::gamma_p(d.shape(), d.shape() * d.rate() * s);
        case DistKind::InverseGaussian: {
            // Shuster's form of the inverse Gaussian CDF via the normal CDF.
            const double a = d.shape(), mu = d.rate();
            const double m = 1.0 / mu;
            const double q = std::sqrt(a / s);
            return normal_cdf(q * (s / m - 1.0)) +
                   std::exp(2.0 * a * mu) * normal_cdf(-q * (s / m + 1.0));
        }
        case DistKind::Exponential: return -std::expm1(-d.rate() * s);
        case DistKind::Deterministic: return s >= d.shape() ? 1.0 : 0.0;
    }
    return 0.0;
}

double survival(const ServiceDistribution& d, double s) {
    if (s <= 0.0) return 1.0;
    switch (d.kind()) {
        case DistKind::Gamma:
            return boost::math::gamma_q(d.shape(), d.shape() * d.rate() * s);
        case DistKind::Exponential: return std::exp(-d.rate() * s);
        default: return 1.0 - cdf(d, s);
    }
}

QuadTriple mgf_quadrature_oracle(const ServiceDistribution& d, double gamma, int order) {
    if (d.kind() == DistKind::Deterministic) {
        throw NumericalError("quadrature oracle requires a density");
    }
    if (!(gamma >= 0.0)) throw UsageError("gamma must be >= 0");
    boost::math::quadrature::exp_sinh<double> integrator(order);
    QuadTriple out{};
    double* slots[3] = {&out.mgf, &out.mgf1, &out.mgf2};
    out.err = 0.0;
    for (int j = 0; j < 3; ++j) {
        double err = 0.0, v = 0.0;
        if (d.kind() == DistKind::Gamma) {
            // Substituting u = s^k turns the s^{k-1} endpoint singularity into
            // a smooth integrand: integral of C u^{j/k} e^{-(beta+gamma) u^{1/k}}
            // with C = beta^k / (k Gamma(k)).
            const double k = d.shape();
            const double beta = k * d.rate();
            const double c = beta + gamma;
            const double log_c0 = k * std::log(beta) - std::lgamma(k) - std::log(k);
            v = integrator.integrate(
                [&](double u) {
                    const double lv = log_c0 + (j / k) * std::log(u) - c * std::pow(u, 1.0 / k);
                    return std::exp(lv);
                },
                1e-11, &err);
        } else {
            v = integrator.integrate(
                [&](double s) {
                    return std::exp(log_density(d, s) + j * std::log(s) - gamma * s);
                },
                1e-11, &err);
        }
        *slots[j] = v;
        out.err = std::max(out.err, err);
    }
    if (!(out.err <= 1e-8)) {
        throw NumericalError("quadrature oracle did not converge (achieved " +
                             std::to_string(out.err) + ", wanted 1e-8)");
    }
    return out;
}

double residual_mgf1_quadrature(const ServiceDistribution& d, double gamma) {
    const double m = d.mean();
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(
        [&](double r) { return r * std::exp(-gamma * r) * survival(d, r) / m; });
}

double residual_mean_quadrature(const ServiceDistribution& d) {
    const double m = d.mean();
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double r) { return r * survival(d, r) / m; });
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double ks_statistic(std::vector<double> samples, const ServiceDistribution& d) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = cdf(d, samples[i]);
        dmax = std::max(dmax, std::fabs(c - static_cast<double>(i) / n));
        dmax = std::max(dmax, std::fabs(static_cast<double>(i + 1) / n - c));
    }
    return dmax;
}

double ks_critical_001(std::size_t n) {
    return 1.94947 / std::sqrt(static_cast<double>(n));  // sqrt(-0.5 ln(0.0005))
}

namespace {

struct Welford {
    double n = 0.0, mean = 0.0, m2 = 0.0;
    void add(double x) {
        n += 1.0;
        const double d1 = x - mean;
        mean += d1 / n;
        m2 += d1 * (x - mean);
    }
    McStat stat() const {
        return {mean, n > 1.5 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0};
    }
};

}  // namespace

IdleCaseStats mc_xt_residual_11(double lambda, const ServiceDistribution& d, double eps_i,
                                double r, std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    Welford tot, wwait, wsrv, widle;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = rng.exponential(lambda);
        const double sp = d.sample(rng);
        const double si = d.sample(rng);
        const double xt = rng.exponential(lambda);
        double t;
        double vwait = 0.0, vsrv = 0.0, vidle = 0.0;
        if (x < r) {
            t = r - x + si;
            vwait = x * t;
        } else if (x < r + sp) {
            t = r - x + sp + xt + eps_i + si;
            vsrv = x * t;
        } else {
            t = eps_i + si;
            vidle = x * t;
        }
        tot.add(vwait + vsrv + vidle);
        wwait.add(vwait);
        wsrv.add(vsrv);
        widle.add(vidle);
    }
    return {tot.stat(), wwait.stat(), wsrv.stat(), widle.stat()};
}

BusyStats mc_xt_busy_11(double lambda, const ServiceDistribution& d, double eps_i,
                        std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    const double m = d.mean();
    Welford xt_acc, gap_acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double s = d.sample(rng);
        const double w = s / m;  // size weight: R = U S then has density P(S>r)/E[S]
        const double rr = rng.u01() * s;
        const double x = rng.exponential(lambda);
        const double si = d.sample(rng);
        const double xt = rng.exponential(lambda);
        double t;
        if (x > rr) {
            t = eps_i + si;
            gap_acc.add(w);
        } else {
            t = rr - x + xt + eps_i + si;
            gap_acc.add(0.0);
        }
        xt_acc.add(w * x * t);
    }
    return {xt_acc.stat(), gap_acc.stat()};
}

IdleCaseStats mc_xt_residual_2s(double lambda, const ServiceDistribution& d, double eps_i,
                                double eps_b, double r, std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    Welford tot, wwait, wsrv, widle;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = rng.exponential(lambda);
        const double sp = d.sample(rng);
        const double si = d.sample(rng);
        double vwait = 0.0, vsrv = 0.0, vidle = 0.0;
        if (x < r) {
            vwait = x * (r - x + si);
        } else if (x < r + sp) {
            vsrv = x * (r - x + sp + eps_b + si);
        } else {
            vidle = x * (eps_i + si);
        }
        tot.add(vwait + vsrv + vidle);
        wwait.add(vwait);
        wsrv.add(vsrv);
        widle.add(vidle);
    }
    return {tot.stat(), wwait.stat(), wsrv.stat(), widle.stat()};
}

BusyStats mc_xt_busy_2s(double lambda, const ServiceDistribution& d, double eps_i,
                        double eps_b, std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    const double m = d.mean();
    Welford xt_acc, gap_acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double s = d.sample(rng);
        const double w = s / m;
        const double rr = rng.u01() * s;
        const double x = rng.exponential(lambda);
        const double sp = d.sample(rng);
        const double si = d.sample(rng);
        double t;
        if (x > rr) {
            const double xt = x - rr;  // measured from the wait start
            if (xt < eps_b) {
                t = eps_b - xt + si;
            } else if (xt < eps_b + sp) {
                t = eps_b + sp - xt + eps_b + si;
            } else {
                t = eps_i + si;
            }
            gap_acc.add(w);
        } else {
            t = rr - x + eps_b + si;
            gap_acc.add(0.0);
        }
        xt_acc.add(w * x * t);
    }
    return {xt_acc.stat(), gap_acc.stat()};
}

BusyStats mc_peak_busy_2s(double lambda, const ServiceDistribution& d, double eps_i,
                          double eps_b, std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed);
    const double m = d.mean();
    Welford val_acc, pr_acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double s = d.sample(rng);
        const double w = s / m;
        const double rr = rng.u01() * s;
        const double x = rng.exponential(lambda);
        const double sp = d.sample(rng);
        const double si = d.sample(rng);
        double v = 0.0, is_star = 0.0;
        if (x > rr) {
            const double xt = x - rr;
            if (xt >= eps_b) {  // otherwise it joins the previous batch
                is_star = 1.0;
                double t;
                if (xt < eps_b + sp) {
                    t = eps_b + sp - xt + eps_b + si;
                } else {
                    t = eps_i + si;
                }
                v = x + t;
            }
        }
        val_acc.add(w * v);
        pr_acc.add(w * is_star);
    }
    return {val_acc.stat(), pr_acc.stat()};
}

}  // namespace aoiq::test
