#pragma once

#include <optional>

#include "aoiq/service_distribution.hpp"

// Average AoI and average peak AoI for the M/GI/1/2* discipline (single
// replaceable buffer slot) with deterministic waits: eps_i after an idle-state
// arrival and eps_b after each service completion that leaves a buffered
// packet. States: (I)dle, (WaI) waiting after idle, (B)usy, (WaB) waiting
// after busy. Same conditional-expectation layout as the mg11 module.

namespace aoiq::mg12star {

struct Config {
    double lambda;
    double eps_i;
    double eps_b;
    ServiceDistribution dist;
};

struct StateProbs {
    double p_i;
    double p_wai;
    double p_b;
    double p_wab;
    double t_cycle;
};

struct CaseTerms {
    double during_wait;
    double during_service;
    double after_idle;
    double sum() const { return during_wait + during_service + after_idle; }
};

struct BusyTerms {
    double gap;       // MGF_R * xt_given_residual(eps_b)
    double residual;  // MGF_R1 * expected system time from a wait start
    double overlap;   // arrival before the in-progress service ends
    double sum() const { return gap + residual + overlap; }
};

struct PeakPieces {
    double v_idle, v_wai, v_busy, v_wab;
    double q_idle, q_wai, q_busy, q_wab;
    double numerator;
    double pr_istar;
    double pr_istar_compact;  // 1 / (lambda MGF_S t_cycle)
    double compact;           // closed form of the average peak AoI
};

StateProbs state_probs(const Config& cfg);

CaseTerms residual_case_terms(const Config& cfg, double r);
double xt_given_residual(const Config& cfg, double r);
double xt_residual_antideriv(const Config& cfg, double x);

double xt_given_idle(const Config& cfg);
std::optional<double> xt_given_wait_idle(const Config& cfg);
std::optional<double> xt_given_wait_busy(const Config& cfg);
// Expected system time of the next packet measured from the start of a full
// eps_b wait; multiplies MGF_R1 in the busy residual term.
double wait_start_system_time(const Config& cfg);
BusyTerms busy_terms(const Config& cfg);
double xt_given_busy(const Config& cfg);

double avg_aoi(const Config& cfg);
// E[(X+T) 1{i=i*} | residual r]; boundary value at r = eps_i is the idle piece.
double peak_given_residual(const Config& cfg, double r);
PeakPieces peak_pieces(const Config& cfg);
double avg_peak_aoi(const Config& cfg);

}  // namespace aoiq::mg12star
