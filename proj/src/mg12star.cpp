#include "aoiq/mg12star.hpp"

#include <cmath>

#include "aoiq/errors.hpp"
#include "aoiq/math_util.hpp"

namespace aoiq::mg12star {

namespace {

using num::exp_poly2;
using num::one_minus_exp;
using num::ramp1;
using num::ramp2;

struct Ctx {
    double lam, ei, eb, m, m2;
    double M0, M1, M2;
    double MR, MR1, ER;
    double il, il2;
};

Ctx make_ctx(const Config& cfg) {
    if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
        throw UsageError("lambda must be finite and > 0");
    }
    if (!(cfg.eps_i >= 0.0) || !std::isfinite(cfg.eps_i)) {
        throw UsageError("eps_i must be finite and >= 0");
    }
    if (!(cfg.eps_b >= 0.0) || !std::isfinite(cfg.eps_b)) {
        throw UsageError("eps_b must be finite and >= 0");
    }
    Ctx c{};
    c.lam = cfg.lambda;
    c.ei = cfg.eps_i;
    c.eb = cfg.eps_b;
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
        (2.0 * c.m + r + c.eb) * c.il * exp_poly2(x, 1.0, 1.0, 0.0)
        - c.il2 * exp_poly2(x, 2.0, 2.0, 1.0)
        - (c.m + c.eb + r) * c.il * exp_poly2(x, c.M0 + c.lam * c.M1, c.M0, 0.0)
        - c.il * exp_poly2(x, c.M1 + c.lam * c.M2, c.M1, 0.0)
        + c.il2 * exp_poly2(x, 2.0 * c.M0 + 2.0 * c.lam * c.M1 + c.lam * c.lam * c.M2,
                            2.0 * c.M0 + 2.0 * c.lam * c.M1, c.M0);
    t.after_idle = (c.ei + c.m) * exp_poly2(x, c.il * c.M0 + c.M1, c.M0 * c.il, 0.0);
    return t;
}

struct HCoeffs {
    double a0, b0, b1;
};

// The case-term sum collapses to a0 + r/lambda + e^{-lambda r}(b0 + b1 r)
// with D = 1/lambda + eps_i - eps_b.
HCoeffs h_coeffs(const Ctx& c) {
    const double D = c.il + c.ei - c.eb;
    HCoeffs h{};
    h.a0 = c.m * c.il - 2.0 * c.il2;
    h.b1 = (c.eb + c.m) + D * c.M0;
    h.b0 = (c.eb + c.m) * c.il + D * (c.M0 * c.il + c.M1) + c.M0 * c.il2;
    return h;
}

double antideriv(const Ctx& c, double x) {
    const auto [a0, b0, b1] = h_coeffs(c);
    return a0 * x + x * x * (0.5 * c.il)
         - std::exp(-c.lam * x) * (b0 * c.il + b1 * (x * c.il + c.il2));
}

double antideriv_mean(const Ctx& c, double eps) {
    const auto [a0, b0, b1] = h_coeffs(c);
    const double x = c.lam * eps;
    const double diff = a0 * eps + eps * eps * (0.5 * c.il)
                      + (b0 * c.il + b1 * c.il2) * one_minus_exp(x)
                      - std::exp(-x) * b1 * eps * c.il;
    return diff / eps;
}

double tau_wait_start(const Ctx& c) {
    const double xb = c.lam * c.eb;
    const double Eb = std::exp(-xb);
    return Eb * ((c.eb + c.m - c.il) + c.m + (c.il + c.ei - c.eb) * c.M0)
         + (c.eb + c.m) * one_minus_exp(xb) - c.il + Eb * (c.il + c.eb);
}

BusyTerms busy_terms_impl(const Ctx& c) {
    BusyTerms t{};
    t.gap = c.MR * case_terms(c, c.eb).sum();
    t.residual = c.MR1 * tau_wait_start(c);
    t.overlap = (c.lam * (c.eb + c.m + c.ER) - 2.0) * c.il2
              + c.MR * (2.0 - c.lam * (c.eb + c.m)) * c.il2
              + (1.0 - c.lam * c.eb - c.lam * c.m) * c.MR1 * c.il;
    return t;
}

double peak_residual(const Ctx& c, double r) {
    const double D = c.il + c.ei - c.eb;
    return std::exp(-c.lam * r) * (2.0 * c.m + r + c.eb + c.M0 * D);
}

}  // namespace

StateProbs state_probs(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    StateProbs p{};
    p.t_cycle = c.il + c.ei + c.eb * (1.0 / c.M0 - 1.0) + c.m / c.M0;
    p.p_i = c.il / p.t_cycle;
    p.p_wai = c.ei / p.t_cycle;
    p.p_b = c.m / (p.t_cycle * c.M0);
    p.p_wab = (c.eb / p.t_cycle) * (1.0 / c.M0 - 1.0);
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

std::optional<double> xt_given_wait_idle(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    if (c.ei == 0.0) return std::nullopt;
    return antideriv_mean(c, c.ei);
}

std::optional<double> xt_given_wait_busy(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    if (c.eb == 0.0) return std::nullopt;
    return antideriv_mean(c, c.eb);
}

double wait_start_system_time(const Config& cfg) { return tau_wait_start(make_ctx(cfg)); }

BusyTerms busy_terms(const Config& cfg) { return busy_terms_impl(make_ctx(cfg)); }

double xt_given_busy(const Config& cfg) { return busy_terms(cfg).sum(); }

double avg_aoi(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    const StateProbs p = state_probs(cfg);
    double xt = p.p_i * case_terms(c, c.ei).sum() + p.p_b * busy_terms_impl(c).sum();
    if (c.ei > 0.0) xt += p.p_wai * antideriv_mean(c, c.ei);
    if (c.eb > 0.0) xt += p.p_wab * antideriv_mean(c, c.eb);
    return c.lam * xt + c.il;
}

double peak_given_residual(const Config& cfg, double r) {
    if (!(r >= 0.0)) throw UsageError("residual r must be >= 0");
    return peak_residual(make_ctx(cfg), r);
}

PeakPieces peak_pieces(const Config& cfg) {
    const Ctx c = make_ctx(cfg);
    const StateProbs p = state_probs(cfg);
    const double xi = c.lam * c.ei, xb = c.lam * c.eb;
    const double Ei = std::exp(-xi), Eb = std::exp(-xb);
    const double D = c.il + c.ei - c.eb;
    const double K = 2.0 * c.m + c.eb + c.M0 * D;
    PeakPieces pk{};
    pk.v_idle = peak_residual(c, c.ei);
    pk.q_idle = Ei;
    if (c.ei > 0.0) {
        pk.v_wai = (K * one_minus_exp(xi) * c.il + ramp1(xi) * c.il2) / c.ei;
        pk.q_wai = one_minus_exp(xi) / xi;
    }
    if (c.eb > 0.0) {
        pk.v_wab = (K * one_minus_exp(xb) * c.il + ramp1(xb) * c.il2) / c.eb;
        pk.q_wab = one_minus_exp(xb) / xb;
    }
    pk.v_busy = peak_residual(c, c.eb) * c.MR + Eb * c.MR1;
    pk.q_busy = Eb * c.MR;
    pk.numerator = p.p_i * pk.v_idle + p.p_wai * pk.v_wai + p.p_b * pk.v_busy
                 + p.p_wab * pk.v_wab;
    pk.pr_istar = p.p_i * pk.q_idle + p.p_wai * pk.q_wai + p.p_b * pk.q_busy
                + p.p_wab * pk.q_wab;
    pk.pr_istar_compact = 1.0 / (c.lam * c.M0 * p.t_cycle);
    pk.compact = c.eb * (1.0 - c.M0) - c.M1 * Eb + c.M0 * c.ei - c.M0 * c.il * Ei
               + 2.0 * c.m + (1.0 + c.M0) * c.il;
    return pk;
}

double avg_peak_aoi(const Config& cfg) {
    const PeakPieces pk = peak_pieces(cfg);
    return pk.numerator / pk.pr_istar;
}

}  // namespace aoiq::mg12star
