#pragma once

#include "aoiq/mg11.hpp"
#include "aoiq/mg12star.hpp"
#include "aoiq/scheme.hpp"

namespace aoiq {

struct AoiMetrics {
    double avg_aoi;
    double avg_peak_aoi;
};

inline AoiMetrics analytic_metrics(Scheme scheme, const ServiceDistribution& dist,
                                   double lambda, double eps_i, double eps_b) {
    if (scheme == Scheme::MG11) {
        const mg11::Config cfg{lambda, eps_i, dist};
        return {mg11::avg_aoi(cfg), mg11::avg_peak_aoi(cfg)};
    }
    const mg12star::Config cfg{lambda, eps_i, eps_b, dist};
    return {mg12star::avg_aoi(cfg), mg12star::avg_peak_aoi(cfg)};
}

}  // namespace aoiq
