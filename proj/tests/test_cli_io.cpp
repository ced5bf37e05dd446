#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "aoiq/csv.hpp"
#include "aoiq/errors.hpp"
#include "aoiq/grid.hpp"
#include "aoiq/jobs.hpp"
#include "aoiq/metrics.hpp"

using namespace aoiq;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
    const fs::path dir = fs::temp_directory_path() / "aoiq_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

#ifdef AOIQ_CLI_PATH
int run_cli(const std::string& args) {
    const std::string cmd = std::string(AOIQ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}
#endif

}  // namespace

TEST_CASE("grid parsing") {
    CHECK(GridSpec::parse("0.5").values == std::vector<double>{0.5});
    const GridSpec lin = GridSpec::parse("0:10:5");
    CHECK(lin.values == std::vector<double>{0.0, 2.5, 5.0, 7.5, 10.0});
    const GridSpec lg = GridSpec::parse("log:0.1:10:3");
    REQUIRE(lg.size() == 3);
    CHECK(lg.values[0] == doctest::Approx(0.1));
    CHECK(lg.values[1] == doctest::Approx(1.0));
    CHECK(lg.values[2] == 10.0);
    CHECK(GridSpec::parse("2:2:1").values == std::vector<double>{2.0});
    CHECK_THROWS_AS(GridSpec::parse("1:2"), UsageError);
    CHECK_THROWS_AS(GridSpec::parse("1:2:0"), UsageError);
    CHECK_THROWS_AS(GridSpec::parse("log:0:1:5"), UsageError);
    CHECK_THROWS_AS(GridSpec::parse("abc"), UsageError);
    CHECK_THROWS_AS(GridSpec::parse("1:2:3:4"), UsageError);
}

TEST_CASE("double formatting") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(29.0 / 12.0) == "2.41666666667");
    CHECK(format_double(1e-15) == "1e-15");
}

TEST_CASE("emit_csv: exact header, empty SEs, quoting, round-trip") {
    const fs::path out = tmp_dir() / "rows.csv";
    ResultRow a;
    a.scheme = "mg11";
    a.dist = "gamma:k=0.5,mu=0.2";
    a.lambda = 0.123456789012345;
    a.eps_i = 1.5;
    a.avg_aoi = 12.3456789012345;
    a.avg_peak_aoi = 1e-7;
    ResultRow b = a;
    b.scheme = "mg12star";
    b.source = RowSource::Sim;
    b.se_aoi = 0.025;
    b.se_peak = 0.0125;
    emit_csv({a, b}, out.string());

    const std::string text = slurp(out);
    CHECK(text.substr(0, std::string(kResultHeader).size()) == kResultHeader);
    CHECK(text.back() == '\n');
    CHECK(text.find("\"gamma:k=0.5,mu=0.2\"") != std::string::npos);
    CHECK(text.find("analytic,,") != std::string::npos);  // empty SEs for analytic rows
    CHECK(text.find(',') != std::string::npos);
    CHECK(text.find("0,123") == std::string::npos);  // '.' decimal point, never ','

    const auto rows = parse_result_csv(out.string());
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].dist == a.dist);
    CHECK(rows[0].lambda == doctest::Approx(a.lambda).epsilon(1e-11));
    CHECK(rows[0].avg_aoi == doctest::Approx(a.avg_aoi).epsilon(1e-11));
    CHECK(!rows[0].se_aoi.has_value());
    CHECK(rows[1].se_aoi.has_value());
    CHECK(*rows[1].se_aoi == doctest::Approx(0.025).epsilon(1e-11));
}

TEST_CASE("emit_csv failure modes") {
    ResultRow r;
    r.scheme = "mg11";
    r.dist = "exp:mu=1";
    CHECK_THROWS_AS(emit_csv({r}, "/nonexistent-dir/x.csv"), IoError);
    r.avg_aoi = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(emit_csv({r}, (tmp_dir() / "nan.csv").string()), NumericalError);
}

TEST_CASE("run_job: analytic row matches the closed forms") {
    JobSpec s;
    s.command = Command::Analytic;
    s.scheme = Scheme::MG11;
    s.dist = parse_dist_spec("exp:mu=1");
    s.lambda_grid = GridSpec::single(1.0);
    s.eps_i_grid = GridSpec::single(0.5);
    s.out = (tmp_dir() / "analytic.csv").string();
    CHECK(run_job(s) == 0);
    const auto rows = parse_result_csv(s.out);
    REQUIRE(rows.size() == 1);
    const AoiMetrics m = analytic_metrics(Scheme::MG11, *s.dist, 1.0, 0.5, 0.0);
    CHECK(rows[0].avg_aoi == doctest::Approx(m.avg_aoi).epsilon(1e-11));
    CHECK(rows[0].avg_peak_aoi == doctest::Approx(m.avg_peak_aoi).epsilon(1e-11));
    CHECK(rows[0].source == RowSource::Analytic);
}

TEST_CASE("run_job: scheme/eps consistency") {
    JobSpec s;
    s.command = Command::Analytic;
    s.scheme = Scheme::MG11;
    s.dist = parse_dist_spec("exp:mu=1");
    s.eps_b_grid = GridSpec::single(1.0);
    CHECK_THROWS_AS(run_job(s), UsageError);
    s.scheme = Scheme::MG12Star;
    s.out.clear();
    CHECK(run_job(s) == 0);
}

TEST_CASE("run_job: sweep crosses grids in deterministic order") {
    JobSpec s;
    s.command = Command::Sweep;
    s.scheme = Scheme::MG12Star;
    s.dist = parse_dist_spec("gamma:k=0.1,mu=0.1");
    s.lambda_grid = GridSpec::parse("0.1:1:3");
    s.eps_i_grid = GridSpec::parse("0:60:4");
    s.eps_b_grid = GridSpec::single(0.0);
    s.out = (tmp_dir() / "sweep.csv").string();
    CHECK(run_job(s) == 0);
    const auto rows = parse_result_csv(s.out);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].lambda == doctest::Approx(0.1));
    CHECK(rows[0].eps_i == 0.0);
    CHECK(rows[1].eps_i == 20.0);
    CHECK(rows[4].lambda == doctest::Approx(0.55));
    for (const auto& r : rows) {
        const AoiMetrics m =
            analytic_metrics(Scheme::MG12Star, *s.dist, r.lambda, r.eps_i, r.eps_b);
        CHECK(r.avg_aoi == doctest::Approx(m.avg_aoi).epsilon(1e-11));
    }
}

TEST_CASE("run_job: sweep requires an output path") {
    JobSpec s;
    s.command = Command::Sweep;
    s.dist = parse_dist_spec("exp:mu=1");
    CHECK_THROWS_AS(run_job(s), UsageError);
}

TEST_CASE("run_job: simulated sweep is reproducible and jobs-invariant") {
    JobSpec s;
    s.command = Command::Sweep;
    s.scheme = Scheme::MG11;
    s.dist = parse_dist_spec("exp:mu=1");
    s.lambda_grid = GridSpec::parse("0.5:1:2");
    s.eps_i_grid = GridSpec::parse("0:1:2");
    s.sim_sweep = true;
    s.packets = 20'000;
    s.seed = 99;
    s.jobs = 1;
    s.out = (tmp_dir() / "sim1.csv").string();
    CHECK(run_job(s) == 0);
    s.out = (tmp_dir() / "sim2.csv").string();
    CHECK(run_job(s) == 0);
    s.jobs = 4;
    s.out = (tmp_dir() / "sim4.csv").string();
    CHECK(run_job(s) == 0);
    const std::string one = slurp(tmp_dir() / "sim1.csv");
    CHECK(one == slurp(tmp_dir() / "sim2.csv"));
    CHECK(one == slurp(tmp_dir() / "sim4.csv"));
    CHECK(parse_result_csv((tmp_dir() / "sim1.csv").string())[0].se_aoi.has_value());
}

TEST_CASE("run_job: tradeoff emits the curve and its Pareto front") {
    JobSpec s;
    s.command = Command::Tradeoff;
    s.scheme = Scheme::MG11;
    s.dist = parse_dist_spec("invgauss:alpha=0.1,mu=0.1");
    s.lambda_grid = GridSpec::single(1.0);
    s.eps_i_grid = GridSpec::parse("0:100:11");
    s.out = (tmp_dir() / "tradeoff.csv").string();
    CHECK(run_job(s) == 0);
    const auto curve = parse_result_csv(s.out);
    CHECK(curve.size() == 11);
    const auto front = parse_result_csv(s.out + ".pareto.csv");
    CHECK(!front.empty());
    CHECK(front.size() <= curve.size());
}

TEST_CASE("run_job: trajectory dump columns") {
    JobSpec s;
    s.command = Command::Simulate;
    s.scheme = Scheme::MG11;
    s.dist = parse_dist_spec("exp:mu=1");
    s.packets = 10'000;
    s.dump_trajectory = true;
    s.traj_out = (tmp_dir() / "traj.csv").string();
    CHECK(run_job(s) == 0);
    std::ifstream f(s.traj_out);
    std::string header;
    std::getline(f, header);
    CHECK(header == "t_event,event_type,delta_before,delta_after");
    std::string line;
    int deliveries = 0;
    while (std::getline(f, line)) {
        if (line.find("delivery") != std::string::npos) ++deliveries;
    }
    CHECK(deliveries > 100);
}

#ifdef AOIQ_CLI_PATH
TEST_CASE("CLI help enumerates every documented flag") {
    const std::string out_path = (tmp_dir() / "help.txt").string();
    for (const char* sub : {"simulate", "sweep", "optimize", "tradeoff", "analytic"}) {
        const std::string cmd = std::string(AOIQ_CLI_PATH) + " " + sub + " --help > " +
                                out_path + " 2>&1";
        REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
        const std::string help = slurp(out_path);
        for (const char* flag : {"--scheme", "--dist", "--lambda", "--eps-i", "--eps-b",
                                 "--out", "--jobs"}) {
            CHECK(help.find(flag) != std::string::npos);
        }
        if (std::string(sub) == "simulate" || std::string(sub) == "sweep") {
            for (const char* flag : {"--packets", "--seed", "--batches"}) {
                CHECK(help.find(flag) != std::string::npos);
            }
        }
        if (std::string(sub) == "simulate") {
            CHECK(help.find("--dump-trajectory") != std::string::npos);
        }
        if (std::string(sub) == "optimize") {
            CHECK(help.find("--w1") != std::string::npos);
            CHECK(help.find("--w2") != std::string::npos);
        }
    }
}

TEST_CASE("CLI end-to-end: exit codes") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("analytic --help") == 0);
    CHECK(run_cli("") == 2);                             // missing subcommand
    CHECK(run_cli("analytic") == 2);                     // missing --dist
    CHECK(run_cli("analytic --dist exp:mu=1 --bogus") == 2);
    CHECK(run_cli("analytic --dist weibull:k=1") == 2);
    CHECK(run_cli("analytic --dist exp:mu=1 --scheme mg11 --eps-b 1") == 2);
    CHECK(run_cli("analytic --dist exp:mu=1 --lambda 0:1:3") == 2);  // grid to scalar cmd
    CHECK(run_cli("sweep --dist exp:mu=1") == 2);        // missing --out
    CHECK(run_cli("sweep --dist exp:mu=1 --out /nonexistent-dir/x.csv") == 4);
    CHECK(run_cli("optimize --dist det:c=1 --scheme mg12star --lambda 800") == 3);
    CHECK(run_cli("analytic --dist exp:mu=1 --lambda 1 --eps-i 0.5") == 0);
}

TEST_CASE("CLI end-to-end: byte-identical reruns with one seed") {
    const fs::path d = tmp_dir();
    const std::string base = "simulate --scheme mg12star --dist gamma:k=0.5,mu=0.5 "
                             "--lambda 1 --eps-i 0.5 --eps-b 0.5 --packets 50000 ";
    CHECK(run_cli(base + "--seed 7 --out " + (d / "a.csv").string()) == 0);
    CHECK(run_cli(base + "--seed 7 --out " + (d / "b.csv").string()) == 0);
    CHECK(slurp(d / "a.csv") == slurp(d / "b.csv"));
    CHECK(run_cli(base + "--seed 8 --out " + (d / "c.csv").string()) == 0);
    CHECK(slurp(d / "a.csv") != slurp(d / "c.csv"));
}

TEST_CASE("CLI end-to-end: config file with command-line override") {
    const fs::path d = tmp_dir();
    const fs::path conf = d / "job.ini";
    {
        std::ofstream f(conf);
        f << "[analytic]\n"
          << "scheme=mg12star\n"
          << "dist=exp:mu=1\n"
          << "lambda=1\n"
          << "eps-i=0\n"
          << "eps-b=0\n"
          << "out=" << (d / "conf_out.csv").string() << "\n";
    }
    CHECK(run_cli("--config " + conf.string() + " analytic") == 0);
    auto rows = parse_result_csv((d / "conf_out.csv").string());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].avg_aoi == doctest::Approx(29.0 / 12.0).epsilon(1e-11));
    // The command line overrides the file.
    CHECK(run_cli("--config " + conf.string() + " analytic --eps-i 1 --out " +
                  (d / "conf_out2.csv").string()) == 0);
    rows = parse_result_csv((d / "conf_out2.csv").string());
    CHECK(rows[0].eps_i == 1.0);
    CHECK(rows[0].avg_aoi != doctest::Approx(29.0 / 12.0).epsilon(1e-11));
}

TEST_CASE("CLI end-to-end: optimize report row carries the improvement") {
    const fs::path out = tmp_dir() / "opt.csv";
    CHECK(run_cli("optimize --scheme mg12star --dist invgauss:alpha=0.1,mu=0.1 --lambda 1 "
                  "--out " + out.string()) == 0);
    std::ifstream f(out);
    std::string header, row;
    std::getline(f, header);
    std::getline(f, row);
    CHECK(header == "scheme,dist,lambda,w1,w2,eps_i_star,eps_b_star,value_star,"
                    "value_zero_wait,improvement");
    const double improvement = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(improvement >= 0.65);
}
#endif
