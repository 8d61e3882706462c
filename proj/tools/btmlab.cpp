// btmlab: command line lab for a heavy-tailed trap walk on Z. Subcommands
// generate landscapes, scan event indicators, solve transient laws, verify
// deterministic bounds, and run the default experiment battery.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "btm/asymptotics.hpp"
#include "btm/bounds.hpp"
#include "btm/budget.hpp"
#include "btm/csvio.hpp"
#include "btm/errors.hpp"
#include "btm/events.hpp"
#include "btm/hitting.hpp"
#include "btm/landscape.hpp"
#include "btm/scales.hpp"
#include "btm/solver.hpp"
#include "btm/version.hpp"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr std::uint64_t default_seed = 0x5eedb7a11abull;

// ---------------------------------------------------------------------------
// experiment config

struct ExperimentConfig {
    std::uint64_t seed = default_seed;
    double alpha = 0.5;
    double epsilon = 0.3;
    int K = 2;
    int n_max = 3;
    int event_seeds = 100;

    int lemma3_instances = 60;
    int corollary4_constructed = 3;
    int corollary4_found = 3;
    std::vector<double> corollary4_eps = {0.2, 0.3};
    int corollary4_n = 2;
    int deloc_landscapes = 2;
    int deloc_n = 2;
    int hitting_instances = 50;

    std::uint64_t maxsum_seeds = 20;
    std::uint64_t maxsum_n = 1000000;
    std::uint64_t maxsum_tail_from = 100000;
    std::vector<unsigned long long> scaling_n = {1000, 4000};
    std::uint64_t scaling_replicates = 1000;
    std::vector<double> supscan_t = {100.0, 400.0, 1600.0, 6400.0};
    double supscan_alpha = 2.0;

    double pmf_tol = 1.0e-6;
    std::string budget_spec; // key=value,... overrides, applied before running
    std::string out_dir = "out";
};

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["seed"] = c.seed;
    j["alpha"] = c.alpha;
    j["epsilon"] = c.epsilon;
    j["K"] = c.K;
    j["n_max"] = c.n_max;
    j["event_seeds"] = c.event_seeds;
    j["lemma3_instances"] = c.lemma3_instances;
    j["corollary4_constructed"] = c.corollary4_constructed;
    j["corollary4_found"] = c.corollary4_found;
    j["corollary4_eps"] = c.corollary4_eps;
    j["corollary4_n"] = c.corollary4_n;
    j["deloc_landscapes"] = c.deloc_landscapes;
    j["deloc_n"] = c.deloc_n;
    j["hitting_instances"] = c.hitting_instances;
    j["maxsum_seeds"] = c.maxsum_seeds;
    j["maxsum_n"] = c.maxsum_n;
    j["maxsum_tail_from"] = c.maxsum_tail_from;
    j["scaling_n"] = c.scaling_n;
    j["scaling_replicates"] = c.scaling_replicates;
    j["supscan_t"] = c.supscan_t;
    j["supscan_alpha"] = c.supscan_alpha;
    j["pmf_tol"] = c.pmf_tol;
    j["budget"] = c.budget_spec;
    j["out_dir"] = c.out_dir;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    static const char* keys[] = {
        "seed",          "alpha",        "epsilon",
        "K",             "n_max",        "event_seeds",
        "lemma3_instances", "corollary4_constructed", "corollary4_found",
        "corollary4_eps", "corollary4_n", "deloc_landscapes",
        "deloc_n",       "hitting_instances", "maxsum_seeds",
        "maxsum_n",      "maxsum_tail_from", "scaling_n",
        "scaling_replicates", "supscan_t", "supscan_alpha",
        "pmf_tol",       "budget",       "out_dir",
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || (it.key() == k);
        if (!known) throw btm::invalid_parameter("config: unknown key '" + it.key() + "'");
    }
    ExperimentConfig c;
    c.seed = j.value("seed", c.seed);
    c.alpha = j.value("alpha", c.alpha);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.K = j.value("K", c.K);
    c.n_max = j.value("n_max", c.n_max);
    c.event_seeds = j.value("event_seeds", c.event_seeds);
    c.lemma3_instances = j.value("lemma3_instances", c.lemma3_instances);
    c.corollary4_constructed = j.value("corollary4_constructed", c.corollary4_constructed);
    c.corollary4_found = j.value("corollary4_found", c.corollary4_found);
    c.corollary4_eps = j.value("corollary4_eps", c.corollary4_eps);
    c.corollary4_n = j.value("corollary4_n", c.corollary4_n);
    c.deloc_landscapes = j.value("deloc_landscapes", c.deloc_landscapes);
    c.deloc_n = j.value("deloc_n", c.deloc_n);
    c.hitting_instances = j.value("hitting_instances", c.hitting_instances);
    c.maxsum_seeds = j.value("maxsum_seeds", c.maxsum_seeds);
    c.maxsum_n = j.value("maxsum_n", c.maxsum_n);
    c.maxsum_tail_from = j.value("maxsum_tail_from", c.maxsum_tail_from);
    c.scaling_n = j.value("scaling_n", c.scaling_n);
    c.scaling_replicates = j.value("scaling_replicates", c.scaling_replicates);
    c.supscan_t = j.value("supscan_t", c.supscan_t);
    c.supscan_alpha = j.value("supscan_alpha", c.supscan_alpha);
    c.pmf_tol = j.value("pmf_tol", c.pmf_tol);
    c.budget_spec = j.value("budget", c.budget_spec);
    c.out_dir = j.value("out_dir", c.out_dir);
    return c;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const ExperimentConfig& c) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(config_to_json(c).dump())));
    return buf;
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------
// check reporting

std::string inputs_to_string(const std::map<std::string, double>& inputs) {
    std::string s;
    for (const auto& [k, v] : inputs) {
        if (!s.empty()) s += ';';
        s += k;
        s += '=';
        s += btm::fmt17(v);
    }
    return s;
}

struct CheckSink {
    btm::CsvWriter* csv = nullptr;
    json* records = nullptr;
    int failures = 0;
    int vacuous = 0;
    int total = 0;

    void add(const std::string& suite, const btm::BoundCheck& c) {
        ++total;
        if (c.vacuous) ++vacuous;
        if (!c.vacuous && !c.verdict) ++failures;
        if (csv)
            csv->row({suite, c.id, c.verdict ? "1" : "0", c.vacuous ? "1" : "0", btm::fmt17(c.lhs),
                      btm::fmt17(c.rhs), btm::fmt17(c.margin), btm::fmt17(c.deficit), c.note,
                      inputs_to_string(c.inputs)});
        if (records) {
            json r;
            r["suite"] = suite;
            r["id"] = c.id;
            r["verdict"] = c.verdict;
            r["vacuous"] = c.vacuous;
            r["lhs"] = c.lhs;
            r["rhs"] = c.rhs;
            r["margin"] = c.margin;
            r["deficit"] = c.deficit;
            if (!c.note.empty()) r["note"] = c.note;
            r["inputs"] = c.inputs;
            records->push_back(std::move(r));
        }
    }

    void add_all(const std::string& suite, const std::vector<btm::BoundCheck>& cs) {
        for (const auto& c : cs) add(suite, c);
    }

    bool ok() const { return failures == 0; }
};

std::vector<std::string> bounds_columns() {
    return {"suite", "id", "verdict", "vacuous", "lhs", "rhs", "margin", "deficit", "note", "inputs"};
}

void print_suite_summary(const std::string& suite, const CheckSink& sink, int since_total,
                         int since_failures, int since_vacuous) {
    (void)sink;
    std::printf("[%s] suite=%s checks=%d failures=%d vacuous=%d\n",
                since_failures == 0 ? "PASS" : "FAIL", suite.c_str(), since_total, since_failures,
                since_vacuous);
}

// runs one named suite into the sink and prints a one line summary
void run_bounds_suite(const std::string& suite, const ExperimentConfig& cfg, CheckSink& sink) {
    const int t0 = sink.total, f0 = sink.failures, v0 = sink.vacuous;
    if (suite == "lemma3") {
        sink.add_all(suite, btm::run_lemma3_suite(cfg.seed, cfg.lemma3_instances));
    } else if (suite == "corollary4") {
        sink.add_all(suite, btm::run_corollary4_suite(cfg.seed, cfg.corollary4_eps,
                                                      cfg.corollary4_constructed,
                                                      cfg.corollary4_found, cfg.corollary4_n));
    } else if (suite == "nearbound") {
        sink.add_all(suite, btm::run_nearbound_suite(cfg.seed, cfg.deloc_landscapes, cfg.deloc_n,
                                                     0.2, cfg.K));
    } else if (suite == "confinement") {
        sink.add_all(suite, btm::run_confinement_suite(cfg.seed, cfg.deloc_landscapes, cfg.deloc_n,
                                                       0.2, cfg.K));
    } else if (suite == "laplace") {
        sink.add_all(suite, btm::run_laplace_suite(cfg.seed));
    } else {
        throw btm::invalid_parameter("unknown suite '" + suite + "'");
    }
    print_suite_summary(suite, sink, sink.total - t0, sink.failures - f0, sink.vacuous - v0);
}

// ---------------------------------------------------------------------------
// subcommand bodies

int cmd_gen_landscape(std::uint64_t seed, double alpha, long long lo, long long hi,
                      const std::string& path) {
    btm::Landscape L(seed, btm::Alpha(alpha));
    L.materialize({lo, hi});
    L.save(path, {lo, hi});
    const btm::IntervalStats st = L.stats({lo, hi});
    std::printf("wrote %s sites=%lld sum=%s max=%s argmax=%lld\n", path.c_str(),
                static_cast<long long>(hi - lo + 1), btm::fmt17(st.sum).c_str(),
                btm::fmt17(st.max).c_str(), st.argmax);
    return 0;
}

int cmd_scan_events(const std::string& mode, double alpha, double epsilon, int K,
                    const std::vector<int>& n_list, int seeds, std::uint64_t seed_start,
                    bool allow_huge, const std::string& out) {
    for (const int n : n_list) btm::check_desk_scale(n, false, allow_huge);
    const btm::Alpha a(alpha);
    btm::CsvWriter csv(out, "btmlab.events.v1",
                       {"seed", "mode", "n", "K", "epsilon", "event", "holds", "M", "S", "margin"});
    std::uint64_t holds_count = 0, rows = 0;
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t ls = seed_start + static_cast<std::uint64_t>(s);
        for (const int n : n_list) {
            std::vector<btm::EventReport> reports;
            if (mode == "loc") {
                reports.push_back(btm::check_E_loc_streaming(ls, a, n, epsilon));
                reports.push_back(btm::check_A_loc_streaming(ls, a, n, epsilon));
                if (n >= 2) reports.push_back(btm::check_B_loc_streaming(ls, a, n, epsilon));
            } else {
                reports.push_back(btm::check_E_deloc_streaming(ls, a, n, epsilon, K));
                reports.push_back(btm::check_A_deloc_streaming(ls, a, n, epsilon, K));
                reports.push_back(btm::check_B_deloc_streaming(ls, a, n, epsilon, K));
            }
            for (const btm::EventReport& r : reports) {
                csv.row({std::to_string(ls), mode, std::to_string(n), std::to_string(r.K),
                         btm::fmt17(r.epsilon), r.event, r.holds ? "1" : "0", btm::fmt17(r.M),
                         btm::fmt17(r.S), btm::fmt17(r.margin)});
                ++rows;
                if (r.holds) ++holds_count;
            }
        }
    }
    csv.close();
    std::printf("wrote %s rows=%llu holds=%llu\n", out.c_str(),
                static_cast<unsigned long long>(rows), static_cast<unsigned long long>(holds_count));
    return 0;
}

int cmd_pmf(const std::string& landscape_path, std::uint64_t seed, double alpha, double t,
            long long init, long long window, const std::string& boundary, bool auto_window,
            double tol, const std::string& out) {
    btm::Landscape L = landscape_path.empty() ? btm::Landscape(seed, btm::Alpha(alpha))
                                              : btm::Landscape::load(landscape_path);
    btm::TransientResult res;
    if (auto_window) {
        res = btm::quenched_pmf(L, t, tol);
    } else {
        if (window < 1) throw btm::invalid_parameter("pmf: --window must be >= 1 (or use --auto)");
        const btm::Interval w{init - window, init + window};
        L.materialize(w);
        const btm::Boundary b =
            boundary == "reflecting" ? btm::Boundary::reflecting : btm::Boundary::absorbing;
        res = btm::transient(btm::build_generator(L, w, b), init, t);
    }
    btm::CsvWriter csv(out, "btmlab.pmf.v1", {"x", "P"});
    for (long long x = res.window.lo; x <= res.window.hi; ++x)
        csv.row({std::to_string(x), btm::fmt17(res.at_site(x))});
    csv.close();
    std::printf("wrote %s backend=%s window=[%lld,%lld] mass=%s deficit=%s sup=%s argmax=%lld\n",
                out.c_str(), res.backend, res.window.lo, res.window.hi,
                btm::fmt17(res.total()).c_str(), btm::fmt17(res.deficit).c_str(),
                btm::fmt17(res.sup()).c_str(), res.argmax_site());
    return 0;
}

int cmd_sup_scan(std::uint64_t seed, double alpha, const std::vector<double>& t_list, double tol,
                 const std::string& out) {
    const btm::SupDecayReport rep = btm::finite_mean_deloc(alpha, seed, t_list, tol);
    btm::CsvWriter csv(out, "btmlab.supscan.v1", {"t", "sup", "argmax", "deficit"});
    for (const btm::SupDecayPoint& p : rep.points)
        csv.row({btm::fmt17(p.t), btm::fmt17(p.sup), std::to_string(p.argmax),
                 btm::fmt17(p.deficit)});
    csv.close();
    std::printf("wrote %s strictly_decreasing=%d last_ratio=%s\n", out.c_str(),
                rep.strictly_decreasing ? 1 : 0, btm::fmt17(rep.last_ratio).c_str());
    return 0;
}

int cmd_hitting(int instances, std::uint64_t seed, const std::string& out) {
    const std::uint64_t root = btm::rng::derive_seed(seed, "hitting");
    btm::CsvWriter csv(out, "btmlab.hitting.v1",
                       {"instance", "alpha", "functional", "x", "r", "y", "i", "closed", "solved",
                        "rel_err"});
    const double alphas[] = {0.5, 1.0, 2.0, 0.8};
    double worst = 0.0;
    for (int inst = 0; inst < instances; ++inst) {
        const std::uint64_t sub = btm::rng::keyed_word(root, static_cast<std::uint64_t>(inst));
        const std::uint64_t geo = btm::rng::derive_seed(sub, "geometry");
        const double alpha = alphas[inst % 4];
        btm::Landscape L(sub, btm::Alpha(alpha));

        const long long r = 3 + static_cast<long long>(btm::rng::keyed_word(geo, 0) % 38u);
        const long long x =
            static_cast<long long>(btm::rng::keyed_word(geo, 1) % 41u) - 20; // window center
        const long long y = x - r + 1 +
                            static_cast<long long>(btm::rng::keyed_word(geo, 2) %
                                                   static_cast<std::uint64_t>(2 * r - 1));
        const long long tgt = x - r + 1 +
                              static_cast<long long>(btm::rng::keyed_word(geo, 3) %
                                                     static_cast<std::uint64_t>(2 * r - 1));
        const long long gx = 1 + static_cast<long long>(btm::rng::keyed_word(geo, 4) % 30u);
        const long long gy = 1 + static_cast<long long>(btm::rng::keyed_word(geo, 5) % 30u);
        L.materialize({std::min(x - r, -gy), std::max(x + r, gx)});

        const auto emit = [&](const char* functional, long long c1, long long c2, long long c3,
                              long long c4, double closed, double solved) {
            const double scale = std::max({std::fabs(closed), std::fabs(solved), 1.0e-300});
            const double rel = std::fabs(closed - solved) / scale;
            worst = std::max(worst, rel);
            csv.row({std::to_string(inst), btm::fmt17(alpha), functional, std::to_string(c1),
                     std::to_string(c2), std::to_string(c3), std::to_string(c4),
                     btm::fmt17(closed), btm::fmt17(solved), btm::fmt17(rel)});
        };
        emit("gambler_ruin", gx, 0, gy, 0, btm::gambler_ruin(gx, gy),
             btm::solve_gambler_ruin(L, gx, gy));
        emit("hit_before_exit", x, r, y, tgt, btm::hit_before_exit(x, r, y, tgt),
             btm::solve_hit_before_exit(L, x, r, y, tgt));
        emit("return_escape", x, r, tgt, 0, btm::return_escape(x, r, tgt),
             btm::solve_return_escape(L, x, r, tgt));
        emit("expected_exit_time", x, r, y, 0, btm::expected_exit_time(L, x, r, y),
             btm::solve_expected_exit_time(L, x, r, y));
    }
    csv.close();
    const bool ok = worst <= 1.0e-10;
    std::printf("[%s] wrote %s instances=%d worst_rel_err=%s\n", ok ? "PASS" : "FAIL", out.c_str(),
                instances, btm::fmt17(worst).c_str());
    return ok ? 0 : 1;
}

int cmd_verify_bounds(const std::string& suite, const ExperimentConfig& cfg, bool allow_huge,
                      const std::string& out) {
    btm::check_desk_scale(std::max(cfg.corollary4_n, cfg.deloc_n), true, allow_huge);
    btm::CsvWriter csv(out, "btmlab.bounds.v1", bounds_columns());
    CheckSink sink;
    sink.csv = &csv;
    if (suite == "all") {
        for (const char* s : {"lemma3", "corollary4", "nearbound", "confinement", "laplace"})
            run_bounds_suite(s, cfg, sink);
    } else {
        run_bounds_suite(suite, cfg, sink);
    }
    csv.close();
    std::printf("[%s] wrote %s checks=%d failures=%d vacuous=%d\n", sink.ok() ? "PASS" : "FAIL",
                out.c_str(), sink.total, sink.failures, sink.vacuous);
    return sink.ok() ? 0 : 1;
}

int cmd_maxsum(double alpha, int seeds, std::uint64_t seed, std::uint64_t n_max,
               std::uint64_t tail_from, const std::string& out) {
    const std::uint64_t root = btm::rng::derive_seed(seed, "maxsum");
    btm::CsvWriter csv(out, "btmlab.maxsum.v1",
                       {"seed", "alpha", "n", "final_ratio", "run_min", "run_max", "tail_run_min",
                        "tail_run_max"});
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t ls = btm::rng::keyed_word(root, static_cast<std::uint64_t>(s));
        const btm::RatioTrajectory tr = btm::maxsum_trajectory(ls, alpha, n_max, tail_from);
        csv.row({std::to_string(ls), btm::fmt17(alpha), std::to_string(n_max),
                 btm::fmt17(tr.final_ratio), btm::fmt17(tr.run_min), btm::fmt17(tr.run_max),
                 btm::fmt17(tr.tail_run_min), btm::fmt17(tr.tail_run_max)});
    }
    csv.close();
    std::printf("wrote %s seeds=%d n=%llu\n", out.c_str(), seeds,
                static_cast<unsigned long long>(n_max));
    return 0;
}

int cmd_scaling(double alpha, const std::vector<unsigned long long>& n_list,
                std::uint64_t replicates, std::uint64_t seed, const std::string& out) {
    const btm::ScalingReport rep =
        btm::stable_scaling_check(alpha, n_list, static_cast<std::size_t>(replicates), seed);
    btm::CsvWriter csv(out, "btmlab.scaling.v1", {"n_lo", "n_hi", "ks", "ks_critical"});
    for (std::size_t i = 0; i < rep.ks_adjacent.size(); ++i)
        csv.row({std::to_string(rep.n_list[i]), std::to_string(rep.n_list[i + 1]),
                 btm::fmt17(rep.ks_adjacent[i]), btm::fmt17(rep.ks_critical[i])});
    csv.close();
    std::printf("wrote %s pairs=%zu signs_both=%d\n", out.c_str(), rep.ks_adjacent.size(),
                rep.centred_signs_both ? 1 : 0);
    return 0;
}

int cmd_run(ExperimentConfig cfg, const std::string& dump_config) {
    if (!cfg.budget_spec.empty())
        btm::set_budget(btm::Budget::parse(cfg.budget_spec, btm::budget()));
    fs::create_directories(cfg.out_dir);
    const auto path = [&](const char* name) { return (fs::path(cfg.out_dir) / name).string(); };

    if (!dump_config.empty()) {
        std::ofstream f(dump_config);
        f << config_to_json(cfg).dump(2) << "\n";
    }

    json record;
    record["artifact"] = btm::artifact_name;
    record["version"] = btm::artifact_version;
    record["config"] = config_to_json(cfg);
    record["config_hash"] = config_hash(cfg);
    record["started"] = timestamp_utc();
    json checks = json::array();
    CheckSink sink;
    sink.records = &checks;

    if (cfg.alpha > 1.0) {
        // finite-mean trap law: only the sup-decay study applies
        const btm::SupDecayReport rep =
            btm::finite_mean_deloc(cfg.alpha, cfg.seed, cfg.supscan_t, cfg.pmf_tol);
        btm::CsvWriter csv(path("supscan.csv"), "btmlab.supscan.v1",
                           {"t", "sup", "argmax", "deficit"});
        for (const btm::SupDecayPoint& p : rep.points)
            csv.row({btm::fmt17(p.t), btm::fmt17(p.sup), std::to_string(p.argmax),
                     btm::fmt17(p.deficit)});
        csv.close();
        btm::BoundCheck dec;
        dec.id = "supscan.decreasing";
        dec.lhs = rep.strictly_decreasing ? 1.0 : 0.0;
        dec.rhs = 1.0;
        dec.margin = dec.lhs - dec.rhs;
        dec.verdict = rep.strictly_decreasing;
        sink.add("supscan", dec);
        btm::BoundCheck band;
        band.id = "supscan.ratio_band";
        band.lhs = rep.last_ratio;
        band.rhs = 0.5;
        band.margin = std::min(rep.last_ratio - 0.35, 0.65 - rep.last_ratio);
        band.verdict = band.margin > 0.0;
        band.note = "band (0.35, 0.65)";
        sink.add("supscan", band);
    } else {
        // events scan
        {
            std::vector<int> loc_n, deloc_n;
            for (int n = 1; n <= cfg.n_max; ++n) loc_n.push_back(n);
            for (int n = 2; n <= cfg.n_max; ++n) deloc_n.push_back(n);
            const std::uint64_t s0 = btm::rng::derive_seed(cfg.seed, "events") % 1000000u;
            cmd_scan_events("loc", cfg.alpha, cfg.epsilon, cfg.K, loc_n, cfg.event_seeds, s0,
                            false, path("events_loc.csv"));
            if (!deloc_n.empty())
                cmd_scan_events("deloc", cfg.alpha, cfg.epsilon, cfg.K, deloc_n, cfg.event_seeds,
                                s0, false, path("events_deloc.csv"));
        }

        // bound suites
        {
            btm::CsvWriter csv(path("bounds.csv"), "btmlab.bounds.v1", bounds_columns());
            sink.csv = &csv;
            for (const char* s : {"lemma3", "corollary4", "nearbound", "confinement", "laplace"})
                run_bounds_suite(s, cfg, sink);
            sink.csv = nullptr;
            csv.close();
        }

        // pmf scans: one localized, one delocalized configuration
        {
            btm::Landscape L = btm::make_localized_landscape(
                btm::rng::derive_seed(cfg.seed, "pmf-loc"), 2, 0.2, btm::Alpha(0.5));
            const btm::LocScales sc = btm::loc_scales(2, 0.2, btm::Alpha(0.5));
            const long long b = static_cast<long long>(sc.b_n);
            L.materialize({-b, b});
            const btm::TransientResult res =
                btm::transient(btm::build_generator(L, {-b, b}, btm::Boundary::absorbing), 0, sc.t_n);
            btm::CsvWriter csv(path("pmf_loc.csv"), "btmlab.pmf.v1", {"x", "P"});
            for (long long x = res.window.lo; x <= res.window.hi; ++x)
                csv.row({std::to_string(x), btm::fmt17(res.at_site(x))});
            csv.close();
        }
        {
            btm::Landscape L = btm::make_delocalized_landscape(
                btm::rng::derive_seed(cfg.seed, "pmf-deloc"), cfg.deloc_n, 0.2, cfg.K,
                btm::Alpha(0.5));
            const btm::DelocScales sc = btm::deloc_scales(cfg.deloc_n, 0.2, cfg.K, btm::Alpha(0.5));
            const long long w = 2048;
            const btm::TransientResult res =
                btm::transient(btm::build_generator(L, {-w, w}, btm::Boundary::absorbing), 0, sc.t_n);
            btm::CsvWriter csv(path("pmf_deloc.csv"), "btmlab.pmf.v1", {"x", "P"});
            for (long long x = res.window.lo; x <= res.window.hi; ++x)
                csv.row({std::to_string(x), btm::fmt17(res.at_site(x))});
            csv.close();
        }

        // asymptotics
        cmd_maxsum(cfg.alpha, static_cast<int>(cfg.maxsum_seeds), cfg.seed, cfg.maxsum_n,
                   cfg.maxsum_tail_from, path("maxsum.csv"));
        {
            const btm::ScalingReport rep = btm::stable_scaling_check(
                cfg.alpha, cfg.scaling_n, static_cast<std::size_t>(cfg.scaling_replicates),
                cfg.seed);
            btm::CsvWriter csv(path("scaling.csv"), "btmlab.scaling.v1",
                               {"n_lo", "n_hi", "ks", "ks_critical"});
            for (std::size_t i = 0; i < rep.ks_adjacent.size(); ++i) {
                csv.row({std::to_string(rep.n_list[i]), std::to_string(rep.n_list[i + 1]),
                         btm::fmt17(rep.ks_adjacent[i]), btm::fmt17(rep.ks_critical[i])});
                btm::BoundCheck ks;
                ks.id = "scaling.ks";
                ks.inputs["n_lo"] = static_cast<double>(rep.n_list[i]);
                ks.inputs["n_hi"] = static_cast<double>(rep.n_list[i + 1]);
                ks.lhs = rep.ks_adjacent[i];
                ks.rhs = rep.ks_critical[i];
                ks.margin = ks.rhs - ks.lhs;
                ks.verdict = ks.lhs < ks.rhs;
                sink.add("scaling", ks);
            }
            csv.close();
            // centred alpha = 1 sums take both signs
            const btm::ScalingReport one = btm::stable_scaling_check(
                1.0, {2000, 8000}, static_cast<std::size_t>(cfg.scaling_replicates), cfg.seed);
            btm::BoundCheck signs;
            signs.id = "scaling.signs";
            signs.lhs = one.centred_signs_both ? 1.0 : 0.0;
            signs.rhs = 1.0;
            signs.margin = signs.lhs - signs.rhs;
            signs.verdict = one.centred_signs_both;
            sink.add("scaling", signs);
        }
        {
            const btm::SupDecayReport rep = btm::finite_mean_deloc(
                cfg.supscan_alpha, btm::rng::derive_seed(cfg.seed, "supscan"), cfg.supscan_t,
                cfg.pmf_tol);
            btm::CsvWriter csv(path("supscan.csv"), "btmlab.supscan.v1",
                               {"t", "sup", "argmax", "deficit"});
            for (const btm::SupDecayPoint& p : rep.points)
                csv.row({btm::fmt17(p.t), btm::fmt17(p.sup), std::to_string(p.argmax),
                         btm::fmt17(p.deficit)});
            csv.close();
            btm::BoundCheck dec;
            dec.id = "supscan.decreasing";
            dec.lhs = rep.strictly_decreasing ? 1.0 : 0.0;
            dec.rhs = 1.0;
            dec.margin = dec.lhs - dec.rhs;
            dec.verdict = rep.strictly_decreasing;
            sink.add("supscan", dec);
            btm::BoundCheck band;
            band.id = "supscan.ratio_band";
            band.lhs = rep.last_ratio;
            band.rhs = 0.5;
            band.margin = std::min(rep.last_ratio - 0.35, 0.65 - rep.last_ratio);
            band.verdict = band.margin > 0.0;
            band.note = "band (0.35, 0.65)";
            sink.add("supscan", band);
        }
    }

    record["checks"] = checks;
    record["aggregate"] = sink.ok();
    record["finished"] = timestamp_utc();
    {
        std::ofstream f(path("run.json"));
        f << record.dump(2) << "\n";
    }
    std::printf("[%s] run %s: checks=%d failures=%d vacuous=%d\n", sink.ok() ? "PASS" : "FAIL",
                cfg.out_dir.c_str(), sink.total, sink.failures, sink.vacuous);
    return sink.ok() ? 0 : 1;
}

int cmd_report(const std::vector<std::string>& records) {
    if (records.empty()) throw btm::invalid_parameter("report: need at least one run record");
    bool all_ok = true;
    int total = 0, vacuous = 0;
    for (const std::string& rp : records) {
        std::ifstream f(rp);
        if (!f) throw btm::invalid_parameter("report: cannot open '" + rp + "'");
        json rec = json::parse(f);
        const json& checks = rec.at("checks");
        if (checks.empty()) throw btm::invalid_parameter("report: record '" + rp + "' has no checks");
        std::printf("record %s version=%s config=%s aggregate=%s\n", rp.c_str(),
                    rec.value("version", "?").c_str(), rec.value("config_hash", "?").c_str(),
                    rec.value("aggregate", false) ? "pass" : "fail");
        std::printf("  %-12s %-28s %-8s %s\n", "suite", "check", "verdict", "margin");
        for (const json& c : checks) {
            if (c.value("vacuous", false)) continue;
            ++total;
            const bool v = c.value("verdict", false);
            all_ok = all_ok && v;
            std::printf("  %-12s %-28s %-8s %s\n", c.value("suite", "?").c_str(),
                        c.value("id", "?").c_str(), v ? "pass" : "FAIL",
                        btm::fmt17(c.value("margin", 0.0)).c_str());
        }
        bool header = false;
        for (const json& c : checks) {
            if (!c.value("vacuous", false)) continue;
            ++vacuous;
            if (!header) {
                std::printf("  vacuous checks (no content at these parameters):\n");
                header = true;
            }
            std::printf("  %-12s %-28s %-8s %s\n", c.value("suite", "?").c_str(),
                        c.value("id", "?").c_str(), "vacuous",
                        btm::fmt17(c.value("margin", 0.0)).c_str());
        }
    }
    std::printf("[%s] records=%zu non_vacuous=%d vacuous=%d\n", all_ok ? "PASS" : "FAIL",
                records.size(), total, vacuous);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trap-walk simulation and verification lab"};
    app.set_version_flag("--version", std::string(btm::artifact_name) + " " + btm::artifact_version);
    std::string budget_spec;
    app.add_option("--budget", budget_spec, "budget overrides, key=value[,key=value...]");

    // gen-landscape
    auto* gen = app.add_subcommand("gen-landscape", "materialize a seeded landscape to a cache file");
    std::uint64_t g_seed = default_seed;
    double g_alpha = 0.5;
    long long g_lo = -1000, g_hi = 1000;
    std::string g_path = "landscape.csv";
    gen->add_option("--seed", g_seed, "landscape seed");
    gen->add_option("--alpha", g_alpha, "tail index");
    gen->add_option("--lo", g_lo, "left end of the range");
    gen->add_option("--hi", g_hi, "right end of the range");
    gen->add_option("--path", g_path, "output cache path");

    // scan-events
    auto* scan = app.add_subcommand("scan-events", "streaming event indicators over many seeds");
    std::string s_mode = "loc";
    double s_alpha = 0.5, s_eps = 0.3;
    int s_K = 2, s_seeds = 100;
    std::uint64_t s_start = 0;
    std::vector<int> s_n;
    bool s_huge = false;
    std::string s_out = "events.csv";
    scan->add_option("--mode", s_mode, "loc or deloc")->check(CLI::IsMember({"loc", "deloc"}));
    scan->add_option("--alpha", s_alpha, "tail index");
    scan->add_option("--eps", s_eps, "epsilon");
    scan->add_option("--K", s_K, "deloc grid half-width");
    scan->add_option("--n", s_n, "levels to scan");
    scan->add_option("--seeds", s_seeds, "number of seeds");
    scan->add_option("--seed-start", s_start, "first seed");
    scan->add_flag("--allow-huge", s_huge, "permit levels beyond the desk envelope");
    scan->add_option("--out", s_out, "output CSV");

    // pmf
    auto* pmf = app.add_subcommand("pmf", "transient law of the walk at one horizon");
    std::string p_landscape, p_boundary = "absorbing", p_out = "pmf.csv";
    std::uint64_t p_seed = default_seed;
    double p_alpha = 0.5, p_t = 100.0, p_tol = 1.0e-6;
    long long p_init = 0, p_window = 0;
    bool p_auto = false;
    pmf->add_option("--landscape", p_landscape, "landscape cache file (else seeded law)");
    pmf->add_option("--seed", p_seed, "landscape seed");
    pmf->add_option("--alpha", p_alpha, "tail index");
    pmf->add_option("--t", p_t, "horizon")->required();
    pmf->add_option("--init", p_init, "start site");
    pmf->add_option("--window", p_window, "half-width of the fixed window around --init");
    pmf->add_option("--boundary", p_boundary, "absorbing or reflecting")
        ->check(CLI::IsMember({"absorbing", "reflecting"}));
    pmf->add_flag("--auto", p_auto, "grow an absorbing window until the deficit is below --tol");
    pmf->add_option("--tol", p_tol, "deficit target for --auto");
    pmf->add_option("--out", p_out, "output CSV");

    // sup-scan
    auto* sup = app.add_subcommand("sup-scan", "sup-mass decay along a time ladder (alpha > 1)");
    std::uint64_t u_seed = default_seed;
    double u_alpha = 2.0, u_tol = 1.0e-6;
    std::vector<double> u_t = {100.0, 400.0, 1600.0, 6400.0};
    std::string u_out = "supscan.csv";
    sup->add_option("--seed", u_seed, "landscape seed");
    sup->add_option("--alpha", u_alpha, "tail index, must be > 1");
    sup->add_option("--t", u_t, "horizons, strictly increasing");
    sup->add_option("--tol", u_tol, "deficit target per horizon");
    sup->add_option("--out", u_out, "output CSV");

    // hitting
    auto* hit = app.add_subcommand("hitting", "closed-form hitting laws vs linear-system solves");
    int h_instances = 50;
    std::uint64_t h_seed = default_seed;
    std::string h_out = "hitting.csv";
    hit->add_option("--instances", h_instances, "randomized instances");
    hit->add_option("--seed", h_seed, "master seed");
    hit->add_option("--out", h_out, "output CSV");

    // verify-bounds
    auto* ver = app.add_subcommand("verify-bounds", "deterministic bound suites");
    ExperimentConfig v_cfg;
    std::string v_suite = "all", v_out = "bounds.csv";
    bool v_huge = false;
    ver->add_option("--suite", v_suite, "lemma3|corollary4|nearbound|confinement|laplace|all")
        ->check(CLI::IsMember({"lemma3", "corollary4", "nearbound", "confinement", "laplace", "all"}));
    ver->add_option("--seed", v_cfg.seed, "master seed");
    ver->add_option("--instances", v_cfg.lemma3_instances, "lemma3 instances");
    ver->add_option("--constructed", v_cfg.corollary4_constructed, "corollary4 constructed per eps");
    ver->add_option("--found", v_cfg.corollary4_found, "corollary4 filtered-random per eps");
    ver->add_option("--eps", v_cfg.corollary4_eps, "corollary4 epsilon list");
    ver->add_option("--n", v_cfg.corollary4_n, "corollary4 level");
    ver->add_option("--landscapes", v_cfg.deloc_landscapes, "nearbound/confinement landscapes");
    ver->add_option("--deloc-n", v_cfg.deloc_n, "nearbound/confinement level");
    ver->add_option("--K", v_cfg.K, "deloc grid half-width");
    ver->add_flag("--allow-huge", v_huge, "permit levels beyond the desk envelope");
    ver->add_option("--out", v_out, "output CSV");

    // maxsum
    auto* mx = app.add_subcommand("maxsum", "running max/sum ratio trajectories");
    double m_alpha = 0.5;
    int m_seeds = 20;
    std::uint64_t m_seed = default_seed, m_n = 1000000, m_tail = 100000;
    std::string m_out = "maxsum.csv";
    mx->add_option("--alpha", m_alpha, "tail index");
    mx->add_option("--seeds", m_seeds, "number of trajectories");
    mx->add_option("--seed", m_seed, "master seed");
    mx->add_option("--n", m_n, "trajectory length");
    mx->add_option("--tail-from", m_tail, "running extremes restricted to n >= this");
    mx->add_option("--out", m_out, "output CSV");

    // scaling
    auto* sc = app.add_subcommand("scaling", "distributional stability of normalized sums");
    double c_alpha = 0.5;
    std::vector<unsigned long long> c_n = {1000, 4000};
    std::uint64_t c_reps = 1000, c_seed = default_seed;
    std::string c_out = "scaling.csv";
    sc->add_option("--alpha", c_alpha, "tail index in (0,1]");
    sc->add_option("--n", c_n, "sample sizes, strictly increasing");
    sc->add_option("--replicates", c_reps, "replicates per sample size");
    sc->add_option("--seed", c_seed, "master seed");
    sc->add_option("--out", c_out, "output CSV");

    // run
    auto* run = app.add_subcommand("run", "default experiment battery");
    std::string r_config, r_out, r_dump;
    std::uint64_t r_seed = 0;
    bool r_seed_set = false, r_out_set = false;
    run->add_option("--config", r_config, "JSON config file (defaults otherwise)");
    run->add_option("--out", r_out, "output directory override")->each([&](const std::string&) {
        r_out_set = true;
    });
    run->add_option("--seed", r_seed, "master seed override")->each([&](const std::string&) {
        r_seed_set = true;
    });
    run->add_option("--dump-config", r_dump, "write the effective config to this path");

    // report
    auto* rep = app.add_subcommand("report", "summarize one or more run records");
    std::vector<std::string> rep_records;
    rep->add_option("records", rep_records, "run.json paths");

    app.require_subcommand(1);
    CLI11_PARSE(app, argc, argv);

    try {
        if (!budget_spec.empty())
            btm::set_budget(btm::Budget::parse(budget_spec, btm::budget()));

        if (*gen) return cmd_gen_landscape(g_seed, g_alpha, g_lo, g_hi, g_path);
        if (*scan) {
            if (s_n.empty()) s_n = (s_mode == "loc") ? std::vector<int>{1, 2, 3}
                                                     : std::vector<int>{2, 3};
            return cmd_scan_events(s_mode, s_alpha, s_eps, s_K, s_n, s_seeds, s_start, s_huge,
                                   s_out);
        }
        if (*pmf)
            return cmd_pmf(p_landscape, p_seed, p_alpha, p_t, p_init, p_window, p_boundary, p_auto,
                           p_tol, p_out);
        if (*sup) return cmd_sup_scan(u_seed, u_alpha, u_t, u_tol, u_out);
        if (*hit) return cmd_hitting(h_instances, h_seed, h_out);
        if (*ver) return cmd_verify_bounds(v_suite, v_cfg, v_huge, v_out);
        if (*mx) return cmd_maxsum(m_alpha, m_seeds, m_seed, m_n, m_tail, m_out);
        if (*sc) return cmd_scaling(c_alpha, c_n, c_reps, c_seed, c_out);
        if (*run) {
            ExperimentConfig cfg;
            if (!r_config.empty()) {
                std::ifstream f(r_config);
                if (!f) throw btm::invalid_parameter("run: cannot open config '" + r_config + "'");
                cfg = config_from_json(json::parse(f));
            }
            if (r_seed_set) cfg.seed = r_seed;
            if (r_out_set) cfg.out_dir = r_out;
            return cmd_run(cfg, r_dump);
        }
        if (*rep) return cmd_report(rep_records);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
