#include "aoiq/mg11.hpp"

#include <cmath>

#include "aoiq/errors.hpp"
#include "aoiq/math_util.hpp"

namespace aoiq::mg11 {

namespace {

using num::exp_poly2;
using num::one_minus_exp;
using num::ramp1;
using num::ramp2;

struct Ctx {
    double lam, ei, m, m2;
    double M0, M1, M2;    // service MGF triple at gamma = lambda
    double MR, MR1, ER;   // residual MGF, its first derivative value, E[R]
    double il, il2;       // 1/lambda, 1/lambda^2
};

Ctx make_ctx(const Config& cfg) {
    if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
        throw UsageError("lambda must be finite and > 0");
    }
    if (!(cfg.eps_i >= 0.0) || !std::isfinite(cfg.eps_i)) {
        throw UsageError("eps_i must be finite and >= 0");
    }
    Ctx c{};
    c.lam = cfg.lambda;
    c.ei = cfg.eps_i;
    c.m = cfg.dist.mean();
    c.m2 = cfg.dist.second_moment();
    const MgfTriple t = cfg.dist.mgf_triple(cfg.lambda);
    c.M0 = t.mgf;
    c.M1 = t.mgf1;
    c.M2 = t.mgf2;
    if (c.m > 0.0) {
        const ResidualStats rs = cfg.dist.residual_stats(cfg.lambda);
        c.MR = rs.mgf_r;
        c.MR1 = rs.mgf_r1;
        c.ER = rs.mean_r;
    }
    c.il = 1.0 / c.lam;
    c.il2 = c.il * c.il;
    return c;
}

CaseTerms case_terms(const Ctx& c, double r) {
    const double x = c.lam * r;
    CaseTerms t{};
    t.during_wait = (r + c.m) * c.il * ramp1(x) - c.il2 * ramp2(x);
    t.during_service =
        (c.m + r + c.ei + c.il) * c.il * exp_poly2(x, 1.0, 1.0, 0.0)
        - c.il2 * exp_poly2(x, 2.0, 2.0, 1.0)
        - (c.m + c.ei + c.il + r) * c.il * exp_poly2(x, c.M0 + c.lam * c.M1, c.M0, 0.0)
        - c.il * exp_poly2(x, c.M1 + c.lam * c.M2, c.M1, 0.0)
        + c.m * c.il * exp_poly2(x, 1.0, 1.0, 0.0)
        + c.il2 * exp_poly2(x, 2.0 * c.M0 + 2.0 * c.lam * c.M1 + c.lam * c.lam * c.M2,
                            2.0 * c.M0 + 2.0 * c.lam * c.M1, c.M0);
    t.after_idle = (c.ei + c.m) * exp_poly2(x, c.il * c.M0 + c.M1, c.M0 * c.il, 0.0);
    return t;
}

// xt_given_residual collapses to a0 + r/lambda + e^{-lambda r} (b0 + b1 r);
// the antiderivative below integrates exactly that.
struct HCoeffs {
    double a0, b0, b1;
};

HCoeffs h_coeffs(const Ctx& c) {
    const double cc = c.ei + c.il + c.m;
    return {c.m * c.il - 2.0 * c.il2, cc * c.il + c.M0 * c.il2, cc};
}

double antideriv(const Ctx& c, double x) {
    const auto [a0, b0, b1] = h_coeffs(c);
    return a0 * x + x * x * (0.5 * c.il)
         - std::exp(-c.lam * x) * (b0 * c.il + b1 * (x * c.il + c.il2));
}

// (H(eps) - H(0)) / eps, grouped so the eps -> 0 limit degrades gracefully.
double antideriv_mean(const Ctx& c, double eps) {
    const auto [a0, b0, b1] = h_coeffs(c);
    const double x = c.lam * eps;
    const double diff = a0 * eps + eps * eps * (0.5 * c.il)
                      + (b0 * c.il + b1 * c.il2) * one_minus_exp(x)
                      - std::exp(-x) * b1 * eps * c.il;
    return diff / eps;
}

}  // namespace

StateProbs state_probs(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    StateProbs p{};
    p.t_cycle = c.il + c.ei + c.m;
    p.p_i = c.il / p.t_cycle;
    p.p_w = c.ei / p.t_cycle;
    p.p_b = c.m / p.t_cycle;
    return p;
}

CaseTerms residual_case_terms(const Config& cfg, double r) {
    if (!(r >= 0.0)) throw UsageError("residual r must be >= 0");
    return case_terms(make_ctx(cfg), r);
}

double xt_given_residual(const Config& cfg, double r) {
    return residual_case_terms(cfg, r).sum();
}

double xt_residual_antideriv(const Config& cfg, double x) {
    if (!(x >= 0.0)) throw UsageError("antiderivative argument must be >= 0");
    return antideriv(make_ctx(cfg), x);
}

double xt_given_idle(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    return case_terms(c, c.ei).sum();
}

std::optional<double> xt_given_wait(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    if (c.ei == 0.0) return std::nullopt;
    return antideriv_mean(c, c.ei);
}

BusyTerms busy_terms(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    BusyTerms t{};
    t.gap = c.il * (c.ei + c.m) * c.MR;
    t.residual = c.MR1 * (c.ei + c.m);
    t.overlap = (c.lam * (c.ei + c.m + c.ER) - 1.0) * c.il2
              + c.MR * (1.0 - c.lam * (c.ei + c.m)) * c.il2
              - (c.ei + c.m) * c.MR1;
    return t;
}

double xt_given_busy(const Config& cfg) { return busy_terms(cfg).sum(); }

double avg_aoi(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    const StateProbs p = state_probs(cfg);
    double xt = p.p_i * case_terms(c, c.ei).sum() + p.p_b * xt_given_busy(cfg);
    if (c.ei > 0.0) xt += p.p_w * antideriv_mean(c, c.ei);
    return c.lam * xt + c.il;
}

PeakPieces peak_pieces(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    const StateProbs p = state_probs(cfg);
    const double x = c.lam * c.ei;
    const double Ei = std::exp(-x);
    PeakPieces pk{};
    pk.v_idle = Ei * (c.il + 2.0 * c.m + 2.0 * c.ei);
    pk.q_idle = Ei;
    if (c.ei > 0.0) {
        const double K = c.il + 2.0 * c.m + c.ei;
        pk.v_wait = (K * one_minus_exp(x) * c.il + ramp1(x) * c.il2) / c.ei;
        pk.q_wait = one_minus_exp(x) / x;
    }
    pk.v_busy = 0.0;  // a busy-state arrival is never the smallest index served
    pk.q_busy = 0.0;
    pk.numerator = p.p_i * pk.v_idle + p.p_w * pk.v_wait;
    pk.pr_istar = p.p_i * pk.q_idle + p.p_w * pk.q_wait;
    pk.pr_istar_compact = c.il / p.t_cycle;
    pk.compact = c.ei - Ei * c.il + 2.0 * c.il + 2.0 * c.m;
    return pk;
}

double avg_peak_aoi(const Config& cfg) { return peak_pieces(cfg).compact; }

}  // namespace aoiq::mg11
