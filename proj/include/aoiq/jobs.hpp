#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aoiq/grid.hpp"
#include "aoiq/scheme.hpp"
#include "aoiq/service_distribution.hpp"

namespace aoiq {

enum class Command { Analytic, Simulate, Optimize, Sweep, Tradeoff };

// A fully parsed CLI job. run_job validates cross-field consistency and
// dispatches; all outputs are a pure function of this struct.
struct JobSpec {
    Command command = Command::Analytic;
    Scheme scheme = Scheme::MG11;
    std::optional<ServiceDistribution> dist;
    GridSpec lambda_grid = GridSpec::single(1.0);
    GridSpec eps_i_grid = GridSpec::single(0.0);
    std::optional<GridSpec> eps_b_grid;  // only meaningful for mg12star

    double w1 = 1.0;
    double w2 = 0.0;

    std::uint64_t packets = 1'000'000;
    std::uint64_t seed = 1;
    int batches = 20;
    int jobs = 1;
    std::string model = "original";  // simulate: original | equivalent
    bool sim_sweep = false;          // sweep rows from simulation
    bool dump_trajectory = false;

    std::string out;       // CSV path; some commands require it
    std::string traj_out;  // trajectory CSV (defaults derived from out)
};

// Returns the process exit code (0 on success); throws UsageError /
// NumericalError / IoError for the CLI to map to exit codes 2/3/4.
int run_job(const JobSpec& spec);

}  // namespace aoiq
