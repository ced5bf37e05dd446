#include "aoiq/jobs.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "aoiq/csv.hpp"
#include "aoiq/des.hpp"
#include "aoiq/errors.hpp"
#include "aoiq/metrics.hpp"
#include "aoiq/optimizer.hpp"
#include "aoiq/parallel.hpp"
#include "aoiq/rng.hpp"

namespace aoiq {

namespace {

void validate(const JobSpec& s) {
    if (!s.dist) throw UsageError("missing --dist");
    if (s.scheme == Scheme::MG11 && s.eps_b_grid) {
        throw UsageError("--eps-b is not valid with --scheme mg11");
    }
    for (double l : s.lambda_grid.values) {
        if (!(l > 0.0) || !std::isfinite(l)) throw UsageError("--lambda values must be > 0");
    }
    for (double e : s.eps_i_grid.values) {
        if (!(e >= 0.0)) throw UsageError("--eps-i values must be >= 0");
    }
    if (s.eps_b_grid) {
        for (double e : s.eps_b_grid->values) {
            if (!(e >= 0.0)) throw UsageError("--eps-b values must be >= 0");
        }
    }
    if (s.w1 < 0.0 || s.w2 < 0.0 || s.w1 + s.w2 <= 0.0) {
        throw UsageError("weights must be nonnegative and not both zero");
    }
    const bool scalar_cmd = s.command == Command::Analytic || s.command == Command::Simulate;
    if (scalar_cmd && (s.lambda_grid.size() != 1 || s.eps_i_grid.size() != 1 ||
                       (s.eps_b_grid && s.eps_b_grid->size() != 1))) {
        throw UsageError("this command takes single values, not grids");
    }
    if (s.command == Command::Tradeoff && s.lambda_grid.size() != 1) {
        throw UsageError("tradeoff takes a single --lambda");
    }
    if ((s.command == Command::Sweep || s.command == Command::Tradeoff) && s.out.empty()) {
        throw UsageError("--out is required for this command");
    }
    if (s.command == Command::Simulate && s.model != "original" && s.model != "equivalent") {
        throw UsageError("--model must be 'original' or 'equivalent'");
    }
}

GridSpec eps_b_or_zero(const JobSpec& s) {
    if (s.scheme == Scheme::MG12Star && s.eps_b_grid) return *s.eps_b_grid;
    return GridSpec::single(0.0);
}

ResultRow analytic_row(const JobSpec& s, double lambda, double ei, double eb) {
    const AoiMetrics m = analytic_metrics(s.scheme, *s.dist, lambda, ei, eb);
    ResultRow r;
    r.scheme = to_string(s.scheme);
    r.dist = s.dist->spec_string();
    r.lambda = lambda;
    r.eps_i = ei;
    r.eps_b = s.scheme == Scheme::MG12Star ? eb : 0.0;
    r.avg_aoi = m.avg_aoi;
    r.avg_peak_aoi = m.avg_peak_aoi;
    r.source = RowSource::Analytic;
    return r;
}

SimConfig sim_config(const JobSpec& s, double lambda, double ei, double eb,
                     std::uint64_t seed) {
    SimConfig cfg{.scheme = s.scheme,
                  .model = s.model == "equivalent" ? SimModel::Equivalent : SimModel::Original,
                  .lambda = lambda,
                  .eps_i = ei,
                  .eps_b = eb,
                  .dist = *s.dist,
                  .n_packets = s.packets,
                  .seed = seed,
                  .n_batches = s.batches,
                  .record_trajectory = s.dump_trajectory};
    return cfg;
}

ResultRow sim_row(const JobSpec& s, double lambda, double ei, double eb,
                  const SimResult& sim) {
    ResultRow r;
    r.scheme = to_string(s.scheme);
    r.dist = s.dist->spec_string();
    r.lambda = lambda;
    r.eps_i = ei;
    r.eps_b = s.scheme == Scheme::MG12Star ? eb : 0.0;
    r.avg_aoi = sim.avg_aoi;
    r.avg_peak_aoi = sim.avg_peak_aoi;
    r.source = RowSource::Sim;
    r.se_aoi = sim.se_aoi;
    r.se_peak = sim.se_peak;
    return r;
}

std::string trajectory_csv(const SimResult& sim) {
    std::string out = "t_event,event_type,delta_before,delta_after\n";
    for (const TrajEvent& e : sim.events) {
        out += format_double(e.t);
        out += ',';
        out += e.type == 'a' ? "arrival" : (e.type == 'w' ? "wait_expiry" : "delivery");
        out += ',';
        out += format_double(e.delta_before);
        out += ',';
        out += format_double(e.delta_after);
        out += '\n';
    }
    return out;
}

void maybe_dump_trajectory(const JobSpec& s, const SimResult& sim) {
    if (!s.dump_trajectory) return;
    const std::string path = !s.traj_out.empty()
                                 ? s.traj_out
                                 : (s.out.empty() ? "trajectory.csv" : s.out + ".traj.csv");
    write_text_file(path, trajectory_csv(sim));
    std::printf("trajectory written to %s (%zu events)\n", path.c_str(), sim.events.size());
}

int run_analytic(const JobSpec& s) {
    const double eb = eps_b_or_zero(s).values[0];
    const ResultRow r = analytic_row(s, s.lambda_grid.values[0], s.eps_i_grid.values[0], eb);
    std::printf("scheme=%s dist=%s lambda=%s eps_i=%s eps_b=%s\n", r.scheme.c_str(),
                r.dist.c_str(), format_double(r.lambda).c_str(),
                format_double(r.eps_i).c_str(), format_double(r.eps_b).c_str());
    std::printf("avg_aoi=%s\navg_peak_aoi=%s\n", format_double(r.avg_aoi).c_str(),
                format_double(r.avg_peak_aoi).c_str());
    if (!s.out.empty()) emit_csv({r}, s.out);
    return 0;
}

int run_simulate(const JobSpec& s) {
    const double lambda = s.lambda_grid.values[0];
    const double ei = s.eps_i_grid.values[0];
    const double eb = eps_b_or_zero(s).values[0];
    const SimResult sim = simulate_run(sim_config(s, lambda, ei, eb, s.seed));
    std::printf("avg_aoi=%s se=%s\navg_peak_aoi=%s se=%s\n",
                format_double(sim.avg_aoi).c_str(), format_double(sim.se_aoi).c_str(),
                format_double(sim.avg_peak_aoi).c_str(), format_double(sim.se_peak).c_str());
    std::printf("arrivals=%" PRIu64 " deliveries=%" PRIu64 " discarded=%" PRIu64
                " in_flight=%" PRIu64 " horizon=%s\n",
                sim.arrivals, sim.deliveries, sim.discarded, sim.in_flight,
                format_double(sim.horizon).c_str());
    for (const auto& [name, frac] : sim.occupancy) {
        std::printf("occupancy[%s]=%s arrival_seen=%s\n", name.c_str(),
                    format_double(frac).c_str(),
                    format_double(sim.arrival_seen.at(name)).c_str());
    }
    if (!s.out.empty()) emit_csv({sim_row(s, lambda, ei, eb, sim)}, s.out);
    maybe_dump_trajectory(s, sim);
    return 0;
}

int run_optimize(const JobSpec& s) {
    SearchConfig search;
    search.jobs = s.jobs;
    std::string out = "scheme,dist,lambda,w1,w2,eps_i_star,eps_b_star,value_star,"
                      "value_zero_wait,improvement\n";
    for (double lambda : s.lambda_grid.values) {
        const OptResult r =
            optimize_waiting(s.scheme, *s.dist, lambda, Objective{s.w1, s.w2}, search);
        std::printf("lambda=%s eps_i*=%s eps_b*=%s value*=%s zero_wait=%s improvement=%s\n",
                    format_double(lambda).c_str(), format_double(r.eps_i_star).c_str(),
                    format_double(r.eps_b_star).c_str(), format_double(r.value_star).c_str(),
                    format_double(r.value_zero_wait).c_str(),
                    format_double(r.improvement).c_str());
        out += to_string(s.scheme) + ",\"" + s.dist->spec_string() + "\"," +
               format_double(lambda) + ',' + format_double(s.w1) + ',' + format_double(s.w2) +
               ',' + format_double(r.eps_i_star) + ',' + format_double(r.eps_b_star) + ',' +
               format_double(r.value_star) + ',' + format_double(r.value_zero_wait) + ',' +
               format_double(r.improvement) + '\n';
    }
    if (!s.out.empty()) write_text_file(s.out, out);
    return 0;
}

int run_sweep(const JobSpec& s) {
    const GridSpec ebg = eps_b_or_zero(s);
    const std::size_t nl = s.lambda_grid.size(), ni = s.eps_i_grid.size(), nb = ebg.size();
    const std::size_t total = nl * ni * nb;
    std::vector<ResultRow> rows(total);
    parallel_map(total, s.jobs, [&](std::size_t idx) {
        const double lambda = s.lambda_grid.values[idx / (ni * nb)];
        const double ei = s.eps_i_grid.values[(idx / nb) % ni];
        const double eb = ebg.values[idx % nb];
        if (s.sim_sweep) {
            const SimResult sim =
                simulate_run(sim_config(s, lambda, ei, eb, mix_seed(s.seed, idx)));
            rows[idx] = sim_row(s, lambda, ei, eb, sim);
        } else {
            rows[idx] = analytic_row(s, lambda, ei, eb);
        }
    });
    emit_csv(rows, s.out);
    std::printf("%zu rows written to %s\n", total, s.out.c_str());
    return 0;
}

int run_tradeoff(const JobSpec& s) {
    const double lambda = s.lambda_grid.values[0];
    const GridSpec ebg = eps_b_or_zero(s);
    const std::vector<TradeoffPoint> pts =
        tradeoff_curve(s.scheme, *s.dist, lambda, s.eps_i_grid, ebg, s.jobs);
    std::vector<ResultRow> rows;
    rows.reserve(pts.size());
    for (const TradeoffPoint& p : pts) {
        ResultRow r;
        r.scheme = to_string(s.scheme);
        r.dist = s.dist->spec_string();
        r.lambda = lambda;
        r.eps_i = p.eps_i;
        r.eps_b = p.eps_b;
        r.avg_aoi = p.avg_aoi;
        r.avg_peak_aoi = p.avg_peak_aoi;
        r.source = RowSource::Analytic;
        rows.push_back(std::move(r));
    }
    emit_csv(rows, s.out);
    const std::vector<std::size_t> front = pareto_front(pts);
    std::vector<ResultRow> frows;
    frows.reserve(front.size());
    for (std::size_t idx : front) frows.push_back(rows[idx]);
    const std::string pareto_path = s.out + ".pareto.csv";
    emit_csv(frows, pareto_path);
    std::printf("%zu points written to %s (%zu on the Pareto front -> %s)\n", rows.size(),
                s.out.c_str(), frows.size(), pareto_path.c_str());
    return 0;
}

}  // namespace

int run_job(const JobSpec& spec) {
    validate(spec);
    switch (spec.command) {
        case Command::Analytic: return run_analytic(spec);
        case Command::Simulate: return run_simulate(spec);
        case Command::Optimize: return run_optimize(spec);
        case Command::Sweep: return run_sweep(spec);
        case Command::Tradeoff: return run_tradeoff(spec);
    }
    return 0;
}

}  // namespace aoiq
