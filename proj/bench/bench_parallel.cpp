// Compares the serial reference against the OpenMP kernels on the two
// data-parallel workloads: closed-form metric grids and independent
// simulation runs. Usage: aoiq_bench [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#include "aoiq/des.hpp"
#include "aoiq/metrics.hpp"
#include "aoiq/parallel.hpp"
#include "aoiq/rng.hpp"

using namespace aoiq;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class F>
double timed(F&& f) {
    const double t0 = now_seconds();
    f();
    return now_seconds() - t0;
}

void run_case(const char* name, std::size_t n, const std::function<void(std::size_t)>& body) {
    const double t_serial = timed([&] { parallel_map_serial(n, body); });
    const double t_omp = timed([&] { parallel_map(n, 0, body); });
    std::printf("%-28s n=%-8zu serial %8.3fs   omp(%d) %8.3fs   speedup %.2fx\n", name, n,
                t_serial, hardware_jobs(), t_omp, t_serial / t_omp);
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

    const auto ig = ServiceDistribution::inverse_gaussian(0.1, 0.1);
    const std::size_t grid_n = quick ? 20'000 : 400'000;
    std::vector<double> sink(grid_n);
    run_case("analytic metric grid", grid_n, [&](std::size_t i) {
        const double lam = 0.05 + 1e-5 * static_cast<double>(i % 1000);
        const double ei = 0.2 * static_cast<double>(i / 1000);
        const AoiMetrics m = analytic_metrics(Scheme::MG12Star, ig, lam, ei, 0.5 * ei);
        sink[i] = m.avg_aoi + m.avg_peak_aoi;
    });

    const auto gam = ServiceDistribution::gamma(0.5, 0.5);
    const std::size_t sim_n = quick ? 4 : 16;
    std::vector<double> sim_sink(sim_n);
    const std::uint64_t packets = quick ? 100'000 : 2'000'000;
    run_case("independent DES runs", sim_n, [&](std::size_t i) {
        SimConfig cfg{.scheme = Scheme::MG12Star,
                      .model = SimModel::Original,
                      .lambda = 0.5 + 0.05 * static_cast<double>(i),
                      .eps_i = 1.0,
                      .eps_b = 1.0,
                      .dist = gam,
                      .n_packets = packets,
                      .seed = mix_seed(1, i),
                      .n_batches = 20};
        sim_sink[i] = simulate_run(cfg).avg_aoi;
    });

    double checksum = 0.0;
    for (double v : sink) checksum += v;
    for (double v : sim_sink) checksum += v;
    std::printf("checksum %.6g\n", checksum);
    return 0;
}
