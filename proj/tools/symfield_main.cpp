#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symfield/covering.hpp"
#include "symfield/errors.hpp"
#include "symfield/json_io.hpp"
#include "symfield/limit.hpp"
#include "symfield/master.hpp"
#include "symfield/rng.hpp"
#include "symfield/verify.hpp"
#include "symfield/walk.hpp"

namespace {

using namespace symfield;
using nlohmann::json;

// Shared run configuration; SYMFIELD_SEED in the environment overrides the
// flag after parsing. Identical (seed, workers=1) runs emit identical bytes.
struct RunConfig {
    std::uint64_t seed = 12345;
    int workers = 1;
    std::string format = "json";
};

std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_estimate_csv(const std::string& name, const Estimate& e) {
    std::cout << name << "," << g17(e.mean) << "," << g17(e.std_error) << ","
              << g17(e.variance) << "," << e.samples << "\n";
}

std::vector<double> parse_grid(const std::string& grid) {
    double a = 0, b = 0, step = 0;
    if (std::sscanf(grid.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0 || b < a)
        throw validation_error("t-grid must be a:b:step with step > 0 and b >= a");
    std::vector<double> ts;
    for (double t = a; t <= b + 1e-12; t += step) ts.push_back(t);
    return ts;
}

int cmd_limit_moments(const RunConfig& cfg, const std::string& cls_json,
                      const std::vector<double>& ts, int n_max) {
    LimitClass lc = limit_class_from_json(parse_json(cls_json));
    if (cfg.format == "csv") {
        std::cout << "t,n,value\n";
        for (double t : ts) {
            std::vector<double> m = mnc_table(lc, t, n_max);
            for (int n = 1; n <= n_max; ++n)
                std::cout << g17(t) << "," << n << "," << g17(m[n - 1]) << "\n";
        }
        return 0;
    }
    json rows = json::array();
    for (double t : ts) {
        std::vector<double> m = mnc_table(lc, t, n_max);
        for (int n = 1; n <= n_max; ++n)
            rows.push_back(json{{"t", t}, {"n", n}, {"value", m[n - 1]}});
    }
    emit_json(json{{"class", limit_class_to_json(lc)}, {"rows", rows}});
    return 0;
}

int cmd_limit_measure(const RunConfig& cfg, const std::string& cls_json, double t, double tol,
                      int n_max) {
    LimitClass lc = limit_class_from_json(parse_json(cls_json));
    SpectralMeasure m = spectral_measure(t, lc, n_max, tol);
    if (cfg.format == "csv") {
        std::cout << "component,order,mass\n";
        for (auto [n, mass] : m.atom) std::cout << "atom," << n << "," << g17(mass) << "\n";
        std::cout << "lebesgue,0," << g17(m.lebesgue_weight) << "\n";
        return 0;
    }
    json atoms = json::object();
    for (auto [n, mass] : m.atom) atoms[std::to_string(n)] = mass;
    emit_json(json{{"t", m.t}, {"atoms", atoms}, {"lebesgue_weight", m.lebesgue_weight}});
    return 0;
}

int cmd_limit_tc(const RunConfig& cfg, const std::string& cls_json) {
    LimitClass lc = limit_class_from_json(parse_json(cls_json));
    double tc = critical_time(lc);
    if (cfg.format == "csv") {
        std::cout << "critical_time\n" << g17(tc) << "\n";
        return 0;
    }
    emit_json(json{{"critical_time", tc}});
    return 0;
}

int cmd_limit_distance(const RunConfig& cfg, const std::string& cls_json,
                       const std::string& grid) {
    LimitClass lc = limit_class_from_json(parse_json(cls_json));
    std::vector<double> ts = parse_grid(grid);
    if (cfg.format == "csv") {
        std::cout << "t,distance\n";
        for (double t : ts) std::cout << g17(t) << "," << g17(mean_distance(t, lc, 1e-9)) << "\n";
        return 0;
    }
    json rows = json::array();
    for (double t : ts) rows.push_back(json{{"t", t}, {"distance", mean_distance(t, lc, 1e-9)}});
    emit_json(json{{"class", limit_class_to_json(lc)}, {"rows", rows}});
    return 0;
}

int cmd_limit_ode(const RunConfig& cfg, const std::string& cls_json, int k_max, double t) {
    LimitClass lc = limit_class_from_json(parse_json(cls_json));
    OdeResult r = ode_evolve(lc, k_max, t);
    if (cfg.format == "csv") {
        std::cout << "k,type,value\n";
        for (int j = 1; j <= k_max; ++j)
            for (const auto& [type, value] : r.level[j - 1])
                std::cout << j << "," << cycle_type_string(type) << "," << g17(value) << "\n";
        return 0;
    }
    json rows = json::array();
    for (int j = 1; j <= k_max; ++j)
        for (const auto& [type, value] : r.level[j - 1])
            rows.push_back(json{{"k", j}, {"type", cycle_type_string(type)}, {"value", value}});
    emit_json(json{{"t", t}, {"rows", rows}});
    return 0;
}

int cmd_limit_logcumulant(const RunConfig& cfg, const std::string& cls_json,
                          const std::string& part_json) {
    LimitClass lc = limit_class_from_json(parse_json(cls_json));
    Partition p = partition_from_json(parse_json(part_json));
    double v = log_cumulant(p, lc);
    if (cfg.format == "csv") {
        std::cout << "value\n" << g17(v) << "\n";
        return 0;
    }
    emit_json(json{{"partition", partition_to_json(p)}, {"value", v}});
    return 0;
}

int cmd_simulate_walk(const RunConfig& cfg, const std::string& cls_json, double t,
                      long long samples, int n_max) {
    FiniteClass c = finite_class_from_json(parse_json(cls_json));
    WalkEstimates w = estimate_walk(c, t, samples, n_max, cfg.seed, cfg.workers);
    if (cfg.format == "csv") {
        std::cout << "observable,mean,std_error,variance,samples\n";
        emit_estimate_csv("fixed_fraction", w.fixed_fraction);
        emit_estimate_csv("normalized_distance", w.normalized_distance);
        emit_estimate_csv("distance_squared", w.distance_squared);
        for (int n = 1; n <= n_max; ++n)
            emit_estimate_csv("cycle_moment_" + std::to_string(n), w.cycle_moment[n - 1]);
        std::cout << "mean_jumps," << g17(w.mean_jumps) << ",,," << samples << "\n";
        return 0;
    }
    json cm = json::array();
    for (int n = 1; n <= n_max; ++n) cm.push_back(estimate_to_json(w.cycle_moment[n - 1]));
    emit_json(json{{"class", finite_class_to_json(c)},
                   {"t", t},
                   {"seed", cfg.seed},
                   {"workers", cfg.workers},
                   {"fixed_fraction", estimate_to_json(w.fixed_fraction)},
                   {"normalized_distance", estimate_to_json(w.normalized_distance)},
                   {"distance_squared", estimate_to_json(w.distance_squared)},
                   {"cycle_moment", cm},
                   {"mean_jumps", w.mean_jumps}});
    return 0;
}

int cmd_master_eval(const RunConfig& cfg, const std::string& word_json) {
    LassoWord w = lasso_word_from_json(parse_json(word_json));
    double v = analytic_eval(w);
    if (cfg.format == "csv") {
        std::cout << "value\n" << g17(v) << "\n";
        return 0;
    }
    emit_json(json{{"value", v}});
    return 0;
}

int cmd_master_mc(const RunConfig& cfg, const std::string& word_json, long long N,
                  long long samples) {
    LassoWord w = lasso_word_from_json(parse_json(word_json));
    Estimate e = mc_wilson(w, N, 1.0, samples, cfg.seed, cfg.workers);
    if (cfg.format == "csv") {
        std::cout << "observable,mean,std_error,variance,samples\n";
        emit_estimate_csv("trace", e);
        return 0;
    }
    emit_json(json{{"N", N}, {"seed", cfg.seed}, {"trace", estimate_to_json(e)}});
    return 0;
}

int cmd_cover_sample(const RunConfig& cfg, const std::string& loop_json, long long N) {
    LoopGeometry loop = loop_from_json(parse_json(loop_json));
    std::mt19937_64 rng = replica_rng(cfg.seed, 0);
    CoveringSample s = std::holds_alternative<Polygon>(loop)
                           ? sample_covering(N, DiskRegion{}, rng)
                           : sample_covering(N, FaceRegion{std::get<LassoWord>(loop).areas}, rng);
    std::vector<std::string> face_of(s.points.size());
    for (const auto& [face, idx] : s.face_points)
        for (int i : idx) face_of[i] = face;
    if (cfg.format == "csv") {
        std::cout << "x,y,a,b,face\n";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            const CoverPoint& p = s.points[i];
            std::cout << g17(p.x) << "," << g17(p.y) << "," << p.a << "," << p.b << ","
                      << face_of[i] << "\n";
        }
        return 0;
    }
    json pts = json::array();
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const CoverPoint& p = s.points[i];
        json jp{{"a", p.a}, {"b", p.b}};
        if (s.has_positions) {
            jp["x"] = p.x;
            jp["y"] = p.y;
        } else {
            jp["face"] = face_of[i];
        }
        pts.push_back(std::move(jp));
    }
    emit_json(json{{"N", s.N}, {"has_positions", s.has_positions}, {"points", pts}});
    return 0;
}

int cmd_cover_wilson(const RunConfig& cfg, const std::string& loop_json, long long N,
                     long long samples, int n_max) {
    LoopGeometry loop = loop_from_json(parse_json(loop_json));
    WilsonStats w = wilson_statistics(loop, N, samples, n_max, cfg.seed, cfg.workers);
    if (cfg.format == "csv") {
        std::cout << "observable,mean,std_error,variance,samples\n";
        emit_estimate_csv("fixed_fraction", w.fixed_fraction);
        emit_estimate_csv("normalized_distance", w.normalized_distance);
        emit_estimate_csv("distance_squared", w.distance_squared);
        for (int n = 1; n <= n_max; ++n)
            emit_estimate_csv("cycle_moment_" + std::to_string(n), w.cycle_moment[n - 1]);
        std::cout << "mean_points," << g17(w.mean_points) << ",,," << samples << "\n";
        return 0;
    }
    json cm = json::array();
    for (int n = 1; n <= n_max; ++n) cm.push_back(estimate_to_json(w.cycle_moment[n - 1]));
    emit_json(json{{"N", N},
                   {"seed", cfg.seed},
                   {"fixed_fraction", estimate_to_json(w.fixed_fraction)},
                   {"normalized_distance", estimate_to_json(w.normalized_distance)},
                   {"distance_squared", estimate_to_json(w.distance_squared)},
                   {"cycle_moment", cm},
                   {"mean_points", w.mean_points}});
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    std::vector<SuiteResult> results;
    if (suite == "all") {
        results = run_all(cfg.seed, cfg.workers);
    } else {
        results.push_back(run_suite(suite, cfg.seed, cfg.workers));
    }
    bool all_pass = true;
    for (const SuiteResult& r : results) {
        for (const CheckResult& c : r.checks)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << r.suite << ": " << c.name << " ("
                      << c.detail << ")\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f", r.seconds);
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << " (" << buf << " s)\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"conjugacy-class walks on the symmetric group, their exact limits, "
                 "master-field loops, and covering monodromies"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg.seed, "base seed for all sampling (default 12345)");
    app.add_option("--workers", cfg.workers,
                   "worker threads for sampling; 0 = hardware count. Any worker count "
                   "draws the same per-replica streams, so results are reproducible; "
                   "byte-identical output is guaranteed at workers=1");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    std::function<int()> action;

    auto* limit = app.add_subcommand("limit", "exact large-N limit quantities");
    limit->require_subcommand(1);
    {
        static std::string cls;
        static std::vector<double> ts;
        static int n_max = 0;
        auto* c = limit->add_subcommand("moments", "exclusive cycle moments m_n(t)");
        c->add_option("--class", cls, "limit class JSON")->required();
        c->add_option("--t", ts, "times")->required()->delimiter(',');
        c->add_option("--nmax", n_max, "largest cycle order")->required()
            ->check(CLI::PositiveNumber);
        c->callback([&] { action = [&] { return cmd_limit_moments(cfg, cls, ts, n_max); }; });
    }
    {
        static std::string cls;
        static double t = 0, tol = 1e-10;
        static int n_max = 1024;
        auto* c = limit->add_subcommand("measure", "limit spectral measure at time t");
        c->add_option("--class", cls, "limit class JSON")->required();
        c->add_option("--t", t, "time")->required();
        c->add_option("--tol", tol, "atomic tail tolerance")->required();
        c->add_option("--nmax", n_max, "atom orders to resolve (default 1024)");
        c->callback([&] { action = [&] { return cmd_limit_measure(cfg, cls, t, tol, n_max); }; });
    }
    {
        static std::string cls;
        auto* c = limit->add_subcommand("tc", "critical time of the phase transition");
        c->add_option("--class", cls, "limit class JSON")->required();
        c->callback([&] { action = [&] { return cmd_limit_tc(cfg, cls); }; });
    }
    {
        static std::string cls, grid;
        auto* c = limit->add_subcommand("distance", "normalized distance profile over a grid");
        c->add_option("--class", cls, "limit class JSON")->required();
        c->add_option("--t-grid", grid, "grid a:b:step")->required();
        c->callback([&] { action = [&] { return cmd_limit_distance(cfg, cls, grid); }; });
    }
    {
        static std::string cls;
        static int k_max = 0;
        static double t = 0;
        auto* c = limit->add_subcommand("ode", "moment hierarchy by adaptive Runge-Kutta");
        c->add_option("--class", cls, "limit class JSON")->required();
        c->add_option("--kmax", k_max, "largest level (<= 8)")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--t", t, "time")->required();
        c->callback([&] { action = [&] { return cmd_limit_ode(cfg, cls, k_max, t); }; });
    }
    {
        static std::string cls, part;
        auto* c = limit->add_subcommand("logcumulant", "limit log-cumulant of a diagram");
        c->add_option("--class", cls, "limit class JSON")->required();
        c->add_option("--partition", part, "diagram JSON")->required();
        c->callback([&] { action = [&] { return cmd_limit_logcumulant(cfg, cls, part); }; });
    }

    auto* simulate = app.add_subcommand("simulate", "finite-N Monte Carlo");
    simulate->require_subcommand(1);
    {
        static std::string cls;
        static double t = 0;
        static long long samples = 0;
        static int n_max = 5;
        auto* c = simulate->add_subcommand("walk", "class walk observables at time t");
        c->add_option("--class-finite", cls, "finite class JSON")->required();
        c->add_option("--t", t, "time")->required();
        c->add_option("--samples", samples, "replica count")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--nmax", n_max, "cycle moment orders (default 5)");
        c->callback(
            [&] { action = [&] { return cmd_simulate_walk(cfg, cls, t, samples, n_max); }; });
    }

    auto* master = app.add_subcommand("master", "master-field Wilson loops");
    master->require_subcommand(1);
    {
        static std::string word;
        auto* c = master->add_subcommand("eval", "exact limit value of a face word");
        c->add_option("--word", word, "word JSON")->required();
        c->callback([&] { action = [&] { return cmd_master_eval(cfg, word); }; });
    }
    {
        static std::string word;
        static long long N = 100, samples = 10000;
        auto* c = master->add_subcommand("mc", "group Monte Carlo of a face word");
        c->add_option("--word", word, "word JSON")->required();
        c->add_option("--N", N, "group size (default 100)")->check(CLI::PositiveNumber);
        c->add_option("--samples", samples, "replica count (default 10000)")
            ->check(CLI::PositiveNumber);
        c->callback([&] { action = [&] { return cmd_master_mc(cfg, word, N, samples); }; });
    }

    auto* cover = app.add_subcommand("cover", "branched coverings of the disk");
    cover->require_subcommand(1);
    {
        static std::string loop;
        static long long N = 0;
        auto* c = cover->add_subcommand("sample", "one Poisson branch-point cloud");
        c->add_option("--loop", loop, "loop JSON (polygon or face word)")->required();
        c->add_option("--N", N, "sheet count")->required()->check(CLI::PositiveNumber);
        c->callback([&] { action = [&] { return cmd_cover_sample(cfg, loop, N); }; });
    }
    {
        static std::string loop;
        static long long N = 0, samples = 0;
        static int n_max = 3;
        auto* c = cover->add_subcommand("wilson", "monodromy observables of a loop");
        c->add_option("--loop", loop, "loop JSON (polygon or face word)")->required();
        c->add_option("--N", N, "sheet count")->required()->check(CLI::PositiveNumber);
        c->add_option("--samples", samples, "replica count")->required()
            ->check(CLI::PositiveNumber);
        c->add_option("--nmax", n_max, "cycle moment orders (default 3)");
        c->callback(
            [&] { action = [&] { return cmd_cover_wilson(cfg, loop, N, samples, n_max); }; });
    }

    {
        static std::string suite;
        auto* c = app.add_subcommand("verify", "run a named cross-validation suite");
        std::vector<std::string> allowed = symfield::suite_names();
        allowed.push_back("all");
        c->add_option("--suite,suite", suite, "suite name or 'all'")
            ->required()
            ->check(CLI::IsMember(allowed));
        c->callback([&] { action = [&] { return cmd_verify(cfg, suite); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    if (const char* env = std::getenv("SYMFIELD_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            std::cerr << "SYMFIELD_SEED must be an unsigned integer\n";
            return 1;
        }
        cfg.seed = v;
    }

    try {
        return action();
    } catch (const symfield::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const symfield::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const symfield::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const symfield::not_reducible_error& e) {
        std::cerr << "not reducible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
