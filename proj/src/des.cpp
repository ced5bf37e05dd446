#include "aoiq/des.hpp"

#include <cmath>
#include <limits>

#include "aoiq/errors.hpp"
#include "aoiq/rng.hpp"

namespace aoiq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum StateIdx { kIdle = 0, kWaitI = 1, kBusy = 2, kWaitB = 3 };

const char* state_name(Scheme scheme, int s) {
    static const char* kNames11[] = {"idle", "waiting", "busy"};
    static const char* kNames2s[] = {"idle", "waiting_after_idle", "busy",
                                     "waiting_after_busy"};
    return scheme == Scheme::MG11 ? kNames11[s] : kNames2s[s];
}

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        const double t = s + v;
        c += (std::fabs(s) >= std::fabs(v)) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

double se_of(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

// Sawtooth accounting shared by both models: exact trapezoid areas between
// deliveries, one peak per delivery, batch tallies by arrival count.
struct Accum {
    double u = 0.0;       // generation time of the freshest delivered packet
    double last_t = 0.0;  // area is integrated up to here
    KahanSum area;
    double peak_sum = 0.0;
    std::uint64_t peak_count = 0;

    double batch_t0 = 0.0, batch_area0 = 0.0, batch_peak0 = 0.0;
    std::uint64_t batch_peaks0 = 0;
    std::vector<double> aoi_means, peak_means;

    void advance(double t) {
        area.add((t - last_t) * ((last_t - u) + (t - u)) * 0.5);
        last_t = t;
    }
    // Returns the peak recorded at this delivery.
    double delivery(double t, double gen) {
        advance(t);
        const double peak = t - u;
        peak_sum += peak;
        ++peak_count;
        u = gen;
        return peak;
    }
    void close_batch(double t) {
        advance(t);
        const double a = area.value();
        if (t > batch_t0) aoi_means.push_back((a - batch_area0) / (t - batch_t0));
        if (peak_count > batch_peaks0) {
            peak_means.push_back((peak_sum - batch_peak0) /
                                 static_cast<double>(peak_count - batch_peaks0));
        }
        batch_t0 = t;
        batch_area0 = a;
        batch_peak0 = peak_sum;
        batch_peaks0 = peak_count;
    }
};

void validate(const SimConfig& cfg) {
    if (cfg.n_packets < 10'000) throw UsageError("n_packets must be >= 10000");
    if (cfg.n_batches < 10) throw UsageError("n_batches must be >= 10");
    if (static_cast<std::uint64_t>(cfg.n_batches) > cfg.n_packets) {
        throw UsageError("n_batches must not exceed n_packets");
    }
    if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) throw UsageError("lambda must be > 0");
    if (!(cfg.eps_i >= 0.0) || !std::isfinite(cfg.eps_i)) throw UsageError("eps_i must be >= 0");
    if (!(cfg.eps_b >= 0.0) || !std::isfinite(cfg.eps_b)) throw UsageError("eps_b must be >= 0");
}

template <bool Equivalent>
SimResult run_sim(const SimConfig& cfg) {
    validate(cfg);
    Rng arr_rng(mix_seed(cfg.seed, 1));
    Rng svc_rng(mix_seed(cfg.seed, 2));
    const bool two = cfg.scheme == Scheme::MG12Star;
    const double ei = cfg.eps_i;
    const double eb = two ? cfg.eps_b : 0.0;
    const int n_states = two ? 4 : 3;

    double t = 0.0;
    double next_arr = arr_rng.exponential(cfg.lambda);
    double wait_end = kInf, svc_end = kInf;
    int state = kIdle;
    std::uint64_t arrivals = 0, deliveries = 0, discarded = 0;

    // Original-model server/buffer contents.
    double srv_gen = 0.0, buf_gen = 0.0;
    bool has_srv = false, has_buf = false;
    // Equivalent-model batches: pending joins the next service period, carry
    // accumulates busy-period arrivals, serving is in service now.
    std::uint64_t pend_n = 0, carry_n = 0, serving_n = 0;
    double pend_gen = 0.0, carry_gen = 0.0, serving_gen = 0.0;

    double tstate[4] = {0, 0, 0, 0};
    std::uint64_t aseen[4] = {0, 0, 0, 0};

    Accum acc;
    SimResult res;
    const std::uint64_t batch_every = cfg.n_packets / static_cast<std::uint64_t>(cfg.n_batches);

    const auto draw_service = [&] { return cfg.dist.sample(svc_rng); };
    const auto record_event = [&](char type, double before, double after) {
        if (cfg.record_trajectory) res.events.push_back({t, type, before, after});
    };

    bool done = false;
    while (!done) {
        double te;
        int ev;  // 0 arrival, 1 wait expiry, 2 service completion
        if (next_arr <= wait_end && next_arr <= svc_end) {
            te = next_arr;
            ev = 0;
        } else if (wait_end <= svc_end) {
            te = wait_end;
            ev = 1;
        } else {
            te = svc_end;
            ev = 2;
        }
        tstate[state] += te - t;
        t = te;

        switch (ev) {
            case 0: {  // arrival
                ++arrivals;
                ++aseen[state];
                record_event('a', t - acc.u, t - acc.u);
                if constexpr (!Equivalent) {
                    if (state == kIdle) {
                        srv_gen = t;
                        has_srv = true;
                        if (ei > 0.0) {
                            state = kWaitI;
                            wait_end = t + ei;
                        } else {
                            state = kBusy;
                            svc_end = t + draw_service();
                        }
                    } else if (state == kWaitI) {
                        ++discarded;
                        srv_gen = t;
                    } else if (state == kBusy) {
                        if (two) {
                            if (has_buf) ++discarded;
                            buf_gen = t;
                            has_buf = true;
                        } else {
                            ++discarded;
                        }
                    } else {  // kWaitB: latest arrival wins the buffer slot
                        ++discarded;
                        buf_gen = t;
                    }
                } else {
                    if (state == kIdle) {
                        if (two) {
                            pend_n = 1;
                        } else {
                            pend_n = carry_n + 1;  // busy-period arrivals join this batch
                            carry_n = 0;
                        }
                        pend_gen = t;
                        if (ei > 0.0) {
                            state = kWaitI;
                            wait_end = t + ei;
                        } else {
                            serving_n = pend_n;
                            serving_gen = pend_gen;
                            pend_n = 0;
                            state = kBusy;
                            svc_end = t + draw_service();
                        }
                    } else if (state == kWaitI || state == kWaitB) {
                        ++pend_n;
                        pend_gen = t;
                    } else {  // kBusy
                        ++carry_n;
                        carry_gen = t;
                    }
                }
                if (arrivals == cfg.n_packets) {
                    done = true;
                    break;
                }
                next_arr = t + arr_rng.exponential(cfg.lambda);
                if (arrivals % batch_every == 0 &&
                    arrivals / batch_every < static_cast<std::uint64_t>(cfg.n_batches)) {
                    acc.close_batch(t);
                }
                break;
            }
            case 1: {  // wait expiry
                wait_end = kInf;
                record_event('w', t - acc.u, t - acc.u);
                if constexpr (!Equivalent) {
                    if (state == kWaitB) {
                        srv_gen = buf_gen;
                        has_buf = false;
                        has_srv = true;
                    }
                } else {
                    serving_n = pend_n;
                    serving_gen = pend_gen;
                    pend_n = 0;
                }
                state = kBusy;
                svc_end = t + draw_service();
                break;
            }
            case 2: {  // service completion -> delivery
                svc_end = kInf;
                double gen, before;
                if constexpr (!Equivalent) {
                    gen = srv_gen;
                    before = t - acc.u;
                    acc.delivery(t, gen);
                    ++deliveries;
                    has_srv = false;
                } else {
                    gen = serving_gen;
                    before = t - acc.u;
                    acc.delivery(t, gen);
                    deliveries += serving_n;
                    serving_n = 0;
                }
                record_event('d', before, t - gen);
                if (cfg.record_trajectory) {
                    res.trajectory.delivery_time.push_back(t);
                    res.trajectory.generation_time.push_back(gen);
                }
                if constexpr (!Equivalent) {
                    if (two && has_buf) {
                        if (eb > 0.0) {
                            state = kWaitB;
                            wait_end = t + eb;
                        } else {
                            srv_gen = buf_gen;
                            has_buf = false;
                            has_srv = true;
                            state = kBusy;
                            svc_end = t + draw_service();
                        }
                    } else {
                        state = kIdle;
                    }
                } else {
                    if (two && carry_n > 0) {
                        pend_n = carry_n;
                        pend_gen = carry_gen;
                        carry_n = 0;
                        if (eb > 0.0) {
                            state = kWaitB;
                            wait_end = t + eb;
                        } else {
                            serving_n = pend_n;
                            serving_gen = pend_gen;
                            pend_n = 0;
                            state = kBusy;
                            svc_end = t + draw_service();
                        }
                    } else {
                        state = kIdle;
                    }
                }
                break;
            }
        }
    }

    acc.close_batch(t);  // final batch ends at the horizon
    res.horizon = t;
    res.arrivals = arrivals;
    res.deliveries = deliveries;
    res.discarded = discarded;
    if constexpr (!Equivalent) {
        res.in_flight = (has_srv ? 1u : 0u) + (has_buf ? 1u : 0u);
    } else {
        res.in_flight = pend_n + carry_n + serving_n;
    }
    res.avg_aoi = acc.area.value() / t;
    res.avg_peak_aoi = acc.peak_count > 0
                           ? acc.peak_sum / static_cast<double>(acc.peak_count)
                           : 0.0;
    res.se_aoi = se_of(acc.aoi_means);
    res.se_peak = se_of(acc.peak_means);
    double total_seen = 0.0;
    for (int s = 0; s < n_states; ++s) total_seen += static_cast<double>(aseen[s]);
    for (int s = 0; s < n_states; ++s) {
        res.occupancy[state_name(cfg.scheme, s)] = tstate[s] / t;
        res.arrival_seen[state_name(cfg.scheme, s)] =
            static_cast<double>(aseen[s]) / total_seen;
    }
    return res;
}

}  // namespace

SimResult simulate_run(const SimConfig& cfg) {
    return cfg.model == SimModel::Original ? run_sim<false>(cfg) : run_sim<true>(cfg);
}

std::map<std::string, double> empirical_occupancy(const SimConfig& cfg) {
    return simulate_run(cfg).occupancy;
}

BatchStats batch_ci(std::span<const double> batch_means) {
    if (batch_means.size() < 10) throw UsageError("batch_ci requires >= 10 batches");
    double mean = 0.0;
    for (double x : batch_means) mean += x;
    mean /= static_cast<double>(batch_means.size());
    double ss = 0.0;
    for (double x : batch_means) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(batch_means.size() - 1));
    return {mean, sd / std::sqrt(static_cast<double>(batch_means.size()))};
}

}  // namespace aoiq
