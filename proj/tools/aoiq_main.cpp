// Command-line front end: analytic | simulate | optimize | sweep | tradeoff.
// Exit codes: 0 success, 2 usage error, 3 numerical error, 4 I/O error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "aoiq/errors.hpp"
#include "aoiq/jobs.hpp"

namespace {

struct RawArgs {
    std::string scheme = "mg11";
    std::string dist;
    std::string lambda = "1";
    std::string eps_i = "0";
    std::string eps_b;
    double w1 = 1.0;
    double w2 = 0.0;
    std::uint64_t packets = 1'000'000;
    std::uint64_t seed = 1;
    int batches = 20;
    int jobs = 1;
    std::string model = "original";
    bool sim_sweep = false;
    bool dump_trajectory = false;
    std::string out;
    std::string traj_out;
};

void add_common(CLI::App* cmd, RawArgs& a) {
    cmd->add_option("--scheme", a.scheme, "Packet management scheme: mg11 | mg12star")
        ->capture_default_str();
    cmd->add_option("--dist", a.dist,
                    "Service distribution: gamma:k=<f>,mu=<f> | invgauss:alpha=<f>,mu=<f> | "
                    "exp:mu=<f> | det:c=<f>")
        ->required();
    cmd->add_option("--lambda", a.lambda, "Arrival rate (value or grid start:stop:count)")
        ->capture_default_str();
    cmd->add_option("--eps-i", a.eps_i, "Waiting after idle (value or grid)")
        ->capture_default_str();
    cmd->add_option("--eps-b", a.eps_b, "Waiting after busy, mg12star only (value or grid)");
    cmd->add_option("--out", a.out, "Output CSV path");
    cmd->add_option("--jobs", a.jobs, "Parallel grid evaluations (0 = all cores)")
        ->capture_default_str();
}

void add_sim_controls(CLI::App* cmd, RawArgs& a) {
    cmd->add_option("--packets", a.packets, "Packets (arrivals) to simulate")
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "Master RNG seed")->capture_default_str();
    cmd->add_option("--batches", a.batches, "Batch count for batch-means errors")
        ->capture_default_str();
}

aoiq::JobSpec to_spec(aoiq::Command command, const RawArgs& a) {
    aoiq::JobSpec s;
    s.command = command;
    s.scheme = aoiq::parse_scheme(a.scheme);
    s.dist = aoiq::parse_dist_spec(a.dist);
    s.lambda_grid = aoiq::GridSpec::parse(a.lambda);
    s.eps_i_grid = aoiq::GridSpec::parse(a.eps_i);
    if (!a.eps_b.empty()) s.eps_b_grid = aoiq::GridSpec::parse(a.eps_b);
    s.w1 = a.w1;
    s.w2 = a.w2;
    s.packets = a.packets;
    s.seed = a.seed;
    s.batches = a.batches;
    s.jobs = a.jobs;
    s.model = a.model;
    s.sim_sweep = a.sim_sweep;
    s.dump_trajectory = a.dump_trajectory;
    s.out = a.out;
    s.traj_out = a.traj_out;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Average AoI and average peak AoI for M/GI/1/1 and M/GI/1/2* "
                 "status-update queues with waiting before serving"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; command-line flags override");

    RawArgs analytic_args, sim_args, opt_args, sweep_args, tradeoff_args;

    CLI::App* analytic =
        app.add_subcommand("analytic", "Closed-form average AoI / peak AoI for one config");
    add_common(analytic, analytic_args);

    CLI::App* simulate =
        app.add_subcommand("simulate", "Packet-level discrete-event simulation of one config");
    add_common(simulate, sim_args);
    add_sim_controls(simulate, sim_args);
    simulate->add_option("--model", sim_args.model, "original | equivalent")
        ->capture_default_str();
    simulate->add_flag("--dump-trajectory", sim_args.dump_trajectory,
                       "Write per-event trajectory CSV");
    simulate->add_option("--traj-out", sim_args.traj_out,
                         "Trajectory CSV path (default: <out>.traj.csv)");

    CLI::App* optimize = app.add_subcommand(
        "optimize", "Minimize w1*E[AoI] + w2*E[peak AoI] over the waiting times; "
                    "a --lambda grid yields one report row per rate");
    add_common(optimize, opt_args);
    optimize->add_option("--w1", opt_args.w1, "Average AoI weight")->capture_default_str();
    optimize->add_option("--w2", opt_args.w2, "Average peak AoI weight")->capture_default_str();

    CLI::App* sweep =
        app.add_subcommand("sweep", "Cross lambda/eps grids, one CSV row per point");
    add_common(sweep, sweep_args);
    add_sim_controls(sweep, sweep_args);
    sweep->add_flag("--sim", sweep_args.sim_sweep,
                    "Rows from simulation instead of the closed forms");

    CLI::App* tradeoff = app.add_subcommand(
        "tradeoff", "Average AoI vs average peak AoI curve over the wait grids, "
                    "plus its Pareto front");
    add_common(tradeoff, tradeoff_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (analytic->parsed()) return aoiq::run_job(to_spec(aoiq::Command::Analytic, analytic_args));
        if (simulate->parsed()) return aoiq::run_job(to_spec(aoiq::Command::Simulate, sim_args));
        if (optimize->parsed()) return aoiq::run_job(to_spec(aoiq::Command::Optimize, opt_args));
        if (sweep->parsed()) return aoiq::run_job(to_spec(aoiq::Command::Sweep, sweep_args));
        if (tradeoff->parsed()) return aoiq::run_job(to_spec(aoiq::Command::Tradeoff, tradeoff_args));
    } catch (const aoiq::UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const aoiq::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const aoiq::NumericalError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
