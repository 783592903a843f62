#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "refute/cem.hpp"
#include "refute/rewards.hpp"

using namespace refute;
using namespace refute::cem;

namespace {

// toy landscape: count of ones in a binary word of length 10
const auto kToySpace = encoding::ConstructionSpace::graph_edges(5);  // L = 10

double count_ones(const encoding::Word& w) {
    double r = 0;
    for (auto l : w.letters) r += l;
    return r;
}

CemConfig toy_config(int batch = 100, std::uint64_t seed = 1) {
    CemConfig cfg;
    cfg.batch_size = batch;
    cfg.rng_seed = seed;
    cfg.max_iterations = 50;
    return cfg;
}

std::vector<Session> sessions_with_rewards(const std::vector<double>& rewards) {
    std::vector<Session> out;
    for (double r : rewards) {
        Session s;
        s.reward = r;
        s.word.letters = {static_cast<std::uint8_t>(out.size() & 1)};
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("config validation") {
    CemConfig cfg;
    cfg.validate();
    cfg.select_percentile = 5;
    cfg.survive_percentile = 10;  // x > y
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = CemConfig{};
    cfg.batch_size = 5;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("sample_session produces complete reproducible words") {
    auto net = nn::Mlp::policy_net(static_cast<int>(kToySpace.state_dim()), 2, 3);
    Rng r1(42), r2(42);
    auto s1 = sample_session(net, kToySpace, r1);
    auto s2 = sample_session(net, kToySpace, r2);
    CHECK(s1.word == s2.word);
    CHECK(s1.word.letters.size() == 10);

    auto traj = s1.trajectory(kToySpace);
    CHECK(traj.size() == 10);
    for (std::size_t i = 0; i < traj.size(); ++i) CHECK(traj[i].second == s1.word.letters[i]);

    auto small_net = nn::Mlp::policy_net(4, 2, 1);
    Rng r3(1);
    CHECK_THROWS_AS(sample_session(small_net, kToySpace, r3), DimMismatch);
}

TEST_CASE("uniform net letter frequencies concentrate around one half") {
    nn::Mlp net = nn::Mlp::init({static_cast<int>(kToySpace.state_dim()), 4, 2}, 5);
    for (auto& layer : net.w) std::fill(layer.begin(), layer.end(), 0.0);
    const int trials = 10000;
    std::vector<int> ones(10, 0);
    for (int t = 0; t < trials; ++t) {
        Rng rng(substream_seed(7, 0, static_cast<std::uint64_t>(t)));
        auto s = sample_session(net, kToySpace, rng);
        for (int i = 0; i < 10; ++i) ones[i] += s.word.letters[i];
    }
    for (int i = 0; i < 10; ++i) {
        const double freq = static_cast<double>(ones[i]) / trials;
        CHECK(freq > 0.48);
        CHECK(freq < 0.52);
    }
}

TEST_CASE("elite selection keeps the top percentile with ties") {
    std::vector<double> rewards;
    for (int i = 1; i <= 100; ++i) rewards.push_back(i);
    auto sessions = sessions_with_rewards(rewards);

    auto idx = select_elite_indices(sessions, 10);
    CHECK(idx.size() == 10);
    for (auto i : idx) CHECK(sessions[i].reward >= 91);

    idx = select_elite_indices(sessions, 100);
    CHECK(idx.size() == 100);

    auto equal = sessions_with_rewards(std::vector<double>(17, 3.5));
    CHECK(select_elite_indices(equal, 10).size() == 17);

    CHECK_THROWS_AS(select_elite_indices({}, 10), EmptyBatch);
}

TEST_CASE("elite batch has the sessions' (state, action) pairs") {
    auto net = nn::Mlp::policy_net(static_cast<int>(kToySpace.state_dim()), 2, 9);
    std::vector<Session> sessions;
    for (int i = 0; i < 10; ++i) {
        Rng rng(substream_seed(1, 0, static_cast<std::uint64_t>(i)));
        auto s = sample_session(net, kToySpace, rng);
        s.reward = count_ones(s.word);
        sessions.push_back(s);
    }
    auto batch = select_elites(kToySpace, sessions, 20);
    CHECK(batch.size() % 10 == 0);
    CHECK(batch.size() >= 20);
    CHECK(batch.states[0].size() == kToySpace.state_dim());
}

TEST_CASE("toy maximize-ones run reaches the optimum within 50 iterations") {
    auto result = run(toy_config(), kToySpace, count_ones);
    CHECK(result.best.reward == 10);
    CHECK(result.stats.size() <= 50);

    // monotone best-ever reward
    for (std::size_t i = 1; i < result.stats.size(); ++i)
        CHECK(result.stats[i].best_reward >= result.stats[i - 1].best_reward);

    // elite training effect: iteration 20 mean strictly beats iteration 1
    if (result.stats.size() > 20) CHECK(result.stats[20].mean_elite_reward > result.stats[1].mean_elite_reward);
}

TEST_CASE("constant reward stays constant") {
    auto cfg = toy_config();
    cfg.max_iterations = 5;
    auto result = run(cfg, kToySpace, [](const encoding::Word&) { return 7.0; });
    for (const auto& st : result.stats) {
        CHECK(st.best_reward == 7.0);
        CHECK(st.mean_elite_reward == 7.0);
    }
}

TEST_CASE("identical config gives identical results across worker counts") {
    auto cfg = toy_config(100, 12345);
    cfg.max_iterations = 8;
    cfg.workers = 1;
    auto a = run(cfg, kToySpace, count_ones);
    cfg.workers = 4;
    auto b = run(cfg, kToySpace, count_ones);
    REQUIRE(a.stats.size() == b.stats.size());
    for (std::size_t i = 0; i < a.stats.size(); ++i) {
        CHECK(a.stats[i].best_reward == b.stats[i].best_reward);
        CHECK(a.stats[i].mean_elite_reward == b.stats[i].mean_elite_reward);
        CHECK(a.stats[i].best_word == b.stats[i].best_word);
    }
    CHECK(a.best.word == b.best.word);
}

TEST_CASE("threshold stopping and reward-exception penalty") {
    auto cfg = toy_config();
    cfg.target_threshold = 8.5;
    auto result = run(cfg, kToySpace, count_ones);
    CHECK(result.reached_threshold);
    CHECK(result.best.reward > 8.5);

    // a reward that throws on every word scores the penalty and never aborts
    cfg = toy_config();
    cfg.max_iterations = 3;
    cfg.target_threshold = std::nullopt;
    auto bad = run(cfg, kToySpace, [](const encoding::Word&) -> double { throw Error("boom"); });
    CHECK(bad.stats.size() == 3);
    CHECK(bad.best.reward == cfg.penalty);
}

TEST_CASE("survivor rule: persists until enough sessions outscore it") {
    // pool of 20 fresh + 1 old survivor, x = 10% -> keep ceil(21 * 0.1) = 3
    std::vector<Session> pool;
    for (int i = 0; i < 20; ++i) {
        Session s;
        s.reward = i;  // fresh rewards 0..19
        s.birth_iteration = 5;
        s.word.letters = {static_cast<std::uint8_t>(i), 0};
        pool.push_back(s);
    }
    Session old;
    old.reward = 18.5;  // outscored by rewards 19 only
    old.birth_iteration = 1;
    old.word.letters = {99, 1};
    pool.push_back(old);

    auto idx = select_survivor_indices(pool, 10, 21);
    REQUIRE(idx.size() == 3);
    CHECK(pool[idx[0]].reward == 19);
    CHECK(pool[idx[1]].reward == 18.5);  // the old survivor persists
    CHECK(pool[idx[2]].reward == 18);

    // once three sessions outscore it, it falls out
    pool[0].reward = 30;
    pool[1].reward = 29;
    pool[2].reward = 28;
    idx = select_survivor_indices(pool, 10, 21);
    REQUIRE(idx.size() == 3);
    for (auto i : idx) CHECK(pool[i].reward >= 28);

    // identical words collapse to one slot
    std::vector<Session> dup;
    for (int i = 0; i < 10; ++i) {
        Session s;
        s.reward = 5;
        s.birth_iteration = i;
        s.word.letters = {7};
        dup.push_back(s);
    }
    idx = select_survivor_indices(dup, 30, 10);
    CHECK(idx.size() == 1);
    CHECK(dup[idx[0]].birth_iteration == 0);  // earliest birth kept
}

TEST_CASE("super-elites survive until outscored") {
    // x = 10% of pool: with batch 20, one survivor slot at least
    auto cfg = toy_config(20, 5);
    cfg.survive_percentile = 10;
    cfg.select_percentile = 20;
    cfg.max_iterations = 6;
    auto result = run(cfg, kToySpace, count_ones);
    // the best-ever reward can only be outperformed, never lost
    for (std::size_t i = 1; i < result.stats.size(); ++i)
        CHECK(result.stats[i].best_reward >= result.stats[i - 1].best_reward);
}

TEST_CASE("run writes valid jsonl, csv, best construction and checkpoints") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "refute_cem_test_out";
    fs::remove_all(dir);
    auto cfg = toy_config();
    cfg.max_iterations = 4;
    cfg.out_dir = dir.string();
    cfg.checkpoint_every = 2;
    auto result = run(cfg, kToySpace, count_ones);

    std::ifstream jsonl(dir / "log.jsonl");
    REQUIRE(jsonl.good());
    std::string line;
    int lines = 0;
    while (std::getline(jsonl, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("iteration"));
        CHECK(j.contains("mean_elite_reward"));
        CHECK(j.contains("best_reward"));
        CHECK(j.contains("best_word"));
        CHECK(j.contains("elapsed_ms"));
        ++lines;
    }
    CHECK(lines == 4);

    std::ifstream csv(dir / "log.csv");
    REQUIRE(csv.good());
    std::getline(csv, line);
    CHECK(line == "iteration,mean_elite_reward,best_reward");

    CHECK(fs::exists(dir / "best_construction.txt"));
    CHECK(fs::exists(dir / "checkpoint_000002.bin"));
    CHECK(fs::exists(dir / "checkpoint_000004.bin"));
    CHECK(fs::exists(dir / "checkpoint_final.bin"));

    auto net = nn::load_checkpoint((dir / "checkpoint_final.bin").string());
    CHECK(net.sizes == result.net.sizes);
    CHECK(net.w == result.net.w);
    fs::remove_all(dir);
}
