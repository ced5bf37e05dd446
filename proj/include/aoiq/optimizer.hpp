#pragma once

#include <span>
#include <vector>

#include "aoiq/grid.hpp"
#include "aoiq/metrics.hpp"
#include "aoiq/scheme.hpp"
#include "aoiq/service_distribution.hpp"

namespace aoiq {

// Weighted objective w1 * E[AoI] + w2 * E[peak AoI]; weights nonnegative,
// not both zero.
struct Objective {
    double w1 = 1.0;
    double w2 = 0.0;
};

struct SearchConfig {
    double upper = 0.0;        // 0 -> 20 * E[S]
    int grid_points = 101;     // per axis
    double tol_factor = 1e-4;  // refinement tolerance = tol_factor * E[S]
    int jobs = 1;              // grid evaluation parallelism
    bool health_check = true;  // restart-consistency warning
};

struct OptResult {
    double eps_i_star = 0.0;
    double eps_b_star = 0.0;  // 0 and unused for MG11
    double value_star = 0.0;
    double value_zero_wait = 0.0;
    double improvement = 0.0;  // 1 - value_star / value_zero_wait
    double grid_resolution = 0.0;
};

// Coarse grid scan (with up to three upper-bound doublings if the minimizer
// lands on the boundary) followed by golden-section refinement: plain on one
// axis for MG11, coordinate descent for MG12*. Ties break toward smaller
// waits. Throws NumericalError if the objective is non-finite anywhere.
OptResult optimize_waiting(Scheme scheme, const ServiceDistribution& dist, double lambda,
                           Objective objective, SearchConfig search = {});

struct TradeoffPoint {
    double eps_i;
    double eps_b;
    double avg_aoi;
    double avg_peak_aoi;
};

// Both metrics on the cross product of the wait grids (eps_b_grid = {0} for
// MG11).
std::vector<TradeoffPoint> tradeoff_curve(Scheme scheme, const ServiceDistribution& dist,
                                          double lambda, const GridSpec& eps_i_grid,
                                          const GridSpec& eps_b_grid, int jobs = 1);

// Indices of the dominance-free subset (minimal peak for each achieved
// average AoI), sorted by ascending average AoI.
std::vector<std::size_t> pareto_front(const std::vector<TradeoffPoint>& points);

struct ImprovementRow {
    double lambda;
    double zero_wait_aoi;
    double optimal_aoi;
    double eps_i_star;
    double eps_b_star;
    double improvement;
};

// Zero wait versus optimal deterministic waiting for average AoI (w1=1, w2=0),
// one row per arrival rate.
std::vector<ImprovementRow> improvement_report(Scheme scheme, const ServiceDistribution& dist,
                                               std::span<const double> lambdas,
                                               SearchConfig search = {});

}  // namespace aoiq
