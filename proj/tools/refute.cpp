#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "refute/cem.hpp"
#include "refute/errors.hpp"
#include "refute/rewards.hpp"
#include "refute/verify.hpp"

namespace {

using namespace refute;

struct RunConfig {
    std::string problem;
    int n = 0;
    int batch_size = 200;
    double select_percentile = 10;
    double survive_percentile = 3;
    double lr = 0.005;
    int max_iterations = 100;
    std::uint64_t seed = 0;
    std::optional<double> target_threshold;
    std::string out_dir = "run_out";
    int checkpoint_every = 0;
    double penalty = -10000;
    int workers = 0;
};

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    static const std::set<std::string> known = {
        "problem", "n",       "batch_size",       "select_percentile", "survive_percentile",
        "lr",      "max_iterations", "seed",      "target_threshold",  "out_dir",
        "checkpoint_every",   "penalty",          "workers"};
    std::ifstream is(path);
    if (!is) throw Error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (!known.count(key)) throw ParseError("unknown config key '" + key + "'", lineno);
        kv[key] = value;
    }
    return kv;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (auto& [key, value] : kv) {
        try {
            if (key == "problem") cfg.problem = value;
            else if (key == "n") cfg.n = std::stoi(value);
            else if (key == "batch_size") cfg.batch_size = std::stoi(value);
            else if (key == "select_percentile") cfg.select_percentile = std::stod(value);
            else if (key == "survive_percentile") cfg.survive_percentile = std::stod(value);
            else if (key == "lr") cfg.lr = std::stod(value);
            else if (key == "max_iterations") cfg.max_iterations = std::stoi(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "target_threshold") cfg.target_threshold = std::stod(value);
            else if (key == "out_dir") cfg.out_dir = value;
            else if (key == "checkpoint_every") cfg.checkpoint_every = std::stoi(value);
            else if (key == "penalty") cfg.penalty = std::stod(value);
            else if (key == "workers") cfg.workers = std::stoi(value);
        } catch (const std::exception&) {
            throw Error("bad value for config key '" + key + "': " + value);
        }
    }
}

int cmd_search(const RunConfig& cfg) {
    rewards::ScoreFn score = rewards::make_score_fn(cfg.problem, cfg.n, cfg.penalty);

    cem::CemConfig cc;
    cc.batch_size = cfg.batch_size;
    cc.select_percentile = cfg.select_percentile;
    cc.survive_percentile = cfg.survive_percentile;
    cc.lr = cfg.lr;
    cc.max_iterations = cfg.max_iterations;
    cc.rng_seed = cfg.seed;
    cc.target_threshold = cfg.target_threshold ? cfg.target_threshold : score.threshold;
    cc.penalty = cfg.penalty;
    cc.workers = cfg.workers;
    cc.checkpoint_every = cfg.checkpoint_every;
    cc.out_dir = cfg.out_dir;
    cc.validate();

    auto result = cem::run(cc, score.space, score.evaluate);

    std::cout << std::setprecision(12);
    std::cout << "problem:    " << cfg.problem << " (n=" << cfg.n << ")\n";
    std::cout << "iterations: " << result.stats.size() << "\n";
    std::cout << "best reward: " << result.best.reward << "\n";
    if (cc.target_threshold)
        std::cout << "threshold:   " << *cc.target_threshold << "\n";
    else
        std::cout << "threshold:   none\n";
    std::cout << "refuted:     " << (result.reached_threshold ? "yes" : "no") << "\n";
    if (!cfg.out_dir.empty())
        std::cout << "logs:        " << cfg.out_dir << "/log.jsonl, " << cfg.out_dir << "/log.csv\n";
    return result.reached_threshold ? 2 : 0;
}

void print_report(const verify::VerificationReport& r) {
    const char* status = r.skipped ? "SKIPPED" : (r.passed ? "PASSED" : "FAILED");
    std::cout << "[" << status << "] " << r.name << "\n" << r.details;
}

int cmd_verify(const std::string& suite, const std::string& data_dir, bool stretch_n8, int gp_samples) {
    std::vector<verify::VerificationReport> reports;
    auto want = [&](const std::string& s) { return suite == "all" || suite == s; };

    if (want("aouch")) reports.push_back(verify::check_aouch_counterexample());
    if (want("comet")) reports.push_back(verify::check_comet_counterexample());
    if (want("tnd")) reports.push_back(verify::check_tnd_peaks());
    if (want("graham-pollack")) reports.push_back(verify::check_graham_pollack(gp_samples));
    if (want("hyperplane")) reports.push_back(verify::check_hyperplane_cover(data_dir));
    if (want("setpair")) reports.push_back(verify::check_setpair_system(data_dir));
    if (want("perm312")) {
        reports.push_back(verify::check_perm312_constructions(data_dir));
        if (stretch_n8) {
            auto r = verify::f312_oracle(8, true);
            verify::VerificationReport stretch;
            stretch.name = "perm312-n8-stretch";
            stretch.passed = r.value == 120;
            stretch.details = "  f_312(8) = " + r.value.get_str() + " (expected 120)\n";
            reports.push_back(stretch);
        }
    }
    if (reports.empty()) {
        std::cerr << "unknown suite '" << suite
                  << "' (expected aouch|comet|tnd|perm312|hyperplane|setpair|graham-pollack|all)\n";
        return 1;
    }

    bool all_ok = true;
    for (const auto& r : reports) {
        print_report(r);
        if (!r.passed && !r.skipped) all_ok = false;
    }
    return all_ok ? 0 : 1;
}

graph::Graph load_graph(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open input file: " + path);
    return graph::read_edge_list(is);
}

linalg::IntMatrix load_matrix(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open input file: " + path);
    return linalg::read_matrix(is);
}

int cmd_eval(const std::string& input, const std::string& invariant) {
    std::cout << std::setprecision(12);
    if (invariant == "lambda1") {
        std::cout << "lambda1 = " << graph::lambda1(load_graph(input)) << "\n";
    } else if (invariant == "mu") {
        std::cout << "mu = " << graph::matching_number(load_graph(input)) << "\n";
    } else if (invariant == "proximity") {
        std::cout << "proximity = " << graph::proximity(load_graph(input)) << "\n";
    } else if (invariant == "diameter") {
        std::cout << "diameter = " << graph::diameter(load_graph(input)) << "\n";
    } else if (invariant == "dspec") {
        auto spec = graph::distance_spectrum(load_graph(input));
        std::cout << "dspec =";
        for (double v : spec) std::cout << ' ' << v;
        std::cout << "\n";
    } else if (invariant == "dlap-charpoly") {
        auto poly = linalg::charpoly_exact(graph::distance_laplacian(load_graph(input)));
        std::cout << "dlap-charpoly = " << poly.to_string() << "\n";
    } else if (invariant == "permanent") {
        std::cout << "permanent = " << linalg::permanent(load_matrix(input)).get_str() << "\n";
    } else if (invariant == "avoids312") {
        std::cout << "avoids312 = " << (rewards::avoids_312(load_matrix(input)) ? "true" : "false") << "\n";
    } else if (invariant == "peaks") {
        auto p = graph::peak_profile(load_graph(input));
        std::cout << "m = " << p.m << "\n";
        std::cout << "p_A = " << p.p_A << "\n";
        std::cout << "p_D = " << p.p_D << "\n";
        std::cout << "n_terms = " << p.n_terms << "\n";
        std::cout << "f = " << rat_to_string(p.f) << "\n";
    } else {
        std::cerr << "unknown invariant '" << invariant
                  << "' (expected lambda1|mu|proximity|diameter|dspec|dlap-charpoly|permanent|avoids312|peaks)\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"search for counterexamples and verify embedded constructions"};
    app.require_subcommand(1);

    // search
    auto* search = app.add_subcommand("search", "run a cross-entropy search");
    std::string config_path;
    RunConfig rc;
    search->add_option("--config", config_path, "key = value config file (flags win)");
    auto* opt_problem = search->add_option("--problem", rc.problem,
                                           "lambda-mu|proximity-dspec|collins|perm312|cospectral");
    auto* opt_n = search->add_option("--n", rc.n, "construction size");
    auto* opt_batch = search->add_option("--batch-size", rc.batch_size, "sessions per iteration");
    auto* opt_sel = search->add_option("--select-percentile", rc.select_percentile, "top y% trained on");
    auto* opt_sur = search->add_option("--survive-percentile", rc.survive_percentile, "top x% survive");
    auto* opt_lr = search->add_option("--lr", rc.lr, "learning rate");
    auto* opt_iter = search->add_option("--max-iterations", rc.max_iterations, "iteration cap");
    auto* opt_seed = search->add_option("--seed", rc.seed, "rng seed");
    double threshold_flag = 0;
    auto* opt_thr = search->add_option("--target-threshold", threshold_flag, "stop when best reward exceeds this");
    auto* opt_out = search->add_option("--out-dir", rc.out_dir, "output directory");
    auto* opt_ckpt = search->add_option("--checkpoint-every", rc.checkpoint_every, "checkpoint period (0 = off)");
    auto* opt_pen = search->add_option("--penalty", rc.penalty, "reward for invalid constructions");
    auto* opt_workers = search->add_option("--workers", rc.workers, "session-generation threads (0 = all cores)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all", data_dir;
    bool stretch_n8 = false;
    int gp_samples = 200;
    verify_cmd->add_option("suite", suite, "aouch|comet|tnd|perm312|hyperplane|setpair|graham-pollack|all");
    verify_cmd->add_option("--data-dir", data_dir, "construction data directory");
    verify_cmd->add_flag("--f312-n8", stretch_n8, "also run the long n=8 oracle stretch");
    verify_cmd->add_option("--samples", gp_samples, "random trees for graham-pollack");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate one invariant of an input construction");
    std::string input, invariant;
    eval_cmd->add_option("--input", input, "edge-list or matrix text file")->required();
    eval_cmd->add_option("--invariant", invariant, "which invariant to print")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (search->parsed()) {
            RunConfig cfg;  // defaults, then config file, then explicit flags
            if (!config_path.empty()) apply_config(cfg, parse_config_file(config_path));
            if (opt_problem->count()) cfg.problem = rc.problem;
            if (opt_n->count()) cfg.n = rc.n;
            if (opt_batch->count()) cfg.batch_size = rc.batch_size;
            if (opt_sel->count()) cfg.select_percentile = rc.select_percentile;
            if (opt_sur->count()) cfg.survive_percentile = rc.survive_percentile;
            if (opt_lr->count()) cfg.lr = rc.lr;
            if (opt_iter->count()) cfg.max_iterations = rc.max_iterations;
            if (opt_seed->count()) cfg.seed = rc.seed;
            if (opt_thr->count()) cfg.target_threshold = threshold_flag;
            if (opt_out->count()) cfg.out_dir = rc.out_dir;
            if (opt_ckpt->count()) cfg.checkpoint_every = rc.checkpoint_every;
            if (opt_pen->count()) cfg.penalty = rc.penalty;
            if (opt_workers->count()) cfg.workers = rc.workers;
            if (cfg.problem.empty() || cfg.n <= 0)
                throw Error("search requires --problem and --n (or a config file providing them)");
            return cmd_search(cfg);
        }
        if (verify_cmd->parsed()) return cmd_verify(suite, data_dir, stretch_n8, gp_samples);
        if (eval_cmd->parsed()) return cmd_eval(input, invariant);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
