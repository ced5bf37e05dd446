#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aoiq/scheme.hpp"
#include "aoiq/service_distribution.hpp"

// Packet-level discrete-event simulation of both packet management schemes,
// in two bookkeeping variants:
//   Original   — packets are discarded on replacement, as the system runs;
//   Equivalent — unlimited buffer, nothing discarded, packets that would have
//                been discarded are served simultaneously with the survivor.
// Both consume the same two random streams (arrivals, services) derived from
// the seed, so coupled runs produce identical AoI sample paths.

namespace aoiq {

enum class SimModel { Original, Equivalent };

struct SimConfig {
    Scheme scheme = Scheme::MG11;
    SimModel model = SimModel::Original;
    double lambda = 1.0;
    double eps_i = 0.0;
    double eps_b = 0.0;  // ignored for MG11
    ServiceDistribution dist;
    std::uint64_t n_packets = 1'000'000;
    std::uint64_t seed = 1;
    int n_batches = 20;
    bool record_trajectory = false;
};

// One entry per service completion: when it was delivered and the generation
// time of the freshest packet delivered by it. Delta(t) drops to
// delivery_time - generation_time at each entry and grows with slope 1 in
// between.
struct AoiTrajectory {
    std::vector<double> delivery_time;
    std::vector<double> generation_time;
};

struct TrajEvent {
    double t;
    char type;  // 'a' arrival, 'w' wait expiry, 'd' delivery
    double delta_before;
    double delta_after;
};

struct SimResult {
    double avg_aoi = 0.0;
    double avg_peak_aoi = 0.0;
    double se_aoi = 0.0;
    double se_peak = 0.0;
    std::uint64_t arrivals = 0;
    std::uint64_t deliveries = 0;
    std::uint64_t discarded = 0;
    std::uint64_t in_flight = 0;
    double horizon = 0.0;
    std::map<std::string, double> occupancy;     // fraction of time per state
    std::map<std::string, double> arrival_seen;  // fraction of arrivals per state
    AoiTrajectory trajectory;                    // when record_trajectory
    std::vector<TrajEvent> events;               // when record_trajectory
};

SimResult simulate_run(const SimConfig& cfg);

// Time-in-state fractions of a run (convenience wrapper).
std::map<std::string, double> empirical_occupancy(const SimConfig& cfg);

struct BatchStats {
    double mean;
    double se;
};

// Batch-means estimate: mean of the per-batch means and its standard error
// (sample std over sqrt(n)). Requires at least 10 batches.
BatchStats batch_ci(std::span<const double> batch_means);

}  // namespace aoiq
