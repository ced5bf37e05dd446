#pragma once

#include <optional>

#include "aoiq/service_distribution.hpp"

// Average AoI and average peak AoI for the M/GI/1/1 discipline with a
// deterministic wait eps_i inserted after an idle-state arrival.
//
// Conventions used throughout this module: the renewal states are (I)dle,
// (W)aiting and (B)usy; conditioning is on the state seen by the previous
// arrival. xt_* functions return E[X T | state] where X is the inter-arrival
// gap and T the system time of the next packet in the batching formulation.
// xt_given_residual(r) generalizes the idle case to a packet with residual
// wait r; its antiderivative in r backs the waiting-state average.

namespace aoiq::mg11 {

struct Config {
    double lambda;
    double eps_i;
    ServiceDistribution dist;
};

struct StateProbs {
    double p_i;
    double p_w;
    double p_b;
    double t_cycle;
};

// The three exclusive ways the next arrival can land, given the previous one
// entered service after a (residual) wait: during the wait itself, during the
// ensuing service, or after the system went idle again.
struct CaseTerms {
    double during_wait;
    double during_service;
    double after_idle;
    double sum() const { return during_wait + during_service + after_idle; }
};

// Busy-state decomposition: the post-residual gap term and residual product
// term (arrival after the in-progress service ends), plus the overlap term
// (arrival before it ends).
struct BusyTerms {
    double gap;
    double residual;
    double overlap;
    double sum() const { return gap + residual + overlap; }
};

// Per-state peak-AoI pieces: v_* = E[(X+T) 1{i=i*} | state], q_* = Pr(i=i* | state).
struct PeakPieces {
    double v_idle, v_wait, v_busy;
    double q_idle, q_wait, q_busy;
    double numerator;          // sum_s p_s v_s
    double pr_istar;           // sum_s p_s q_s
    double pr_istar_compact;   // 1 / (lambda t_cycle)
    double compact;            // closed form of the average peak AoI
};

StateProbs state_probs(const Config& cfg);

CaseTerms residual_case_terms(const Config& cfg, double r);
double xt_given_residual(const Config& cfg, double r);
// Antiderivative H with H'(x) = xt_given_residual(x); only differences matter.
double xt_residual_antideriv(const Config& cfg, double x);

double xt_given_idle(const Config& cfg);
// Mean of xt_given_residual over a uniform residual in [0, eps_i];
// empty when eps_i == 0 (the waiting state then has probability zero).
std::optional<double> xt_given_wait(const Config& cfg);
BusyTerms busy_terms(const Config& cfg);
double xt_given_busy(const Config& cfg);

double avg_aoi(const Config& cfg);
PeakPieces peak_pieces(const Config& cfg);
double avg_peak_aoi(const Config& cfg);

}  // namespace aoiq::mg11
