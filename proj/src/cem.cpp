#include "refute/cem.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "refute/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace refute::cem {

std::vector<std::pair<encoding::StateVector, int>> Session::trajectory(
    const encoding::ConstructionSpace& space) const {
    std::vector<std::pair<encoding::StateVector, int>> traj;
    traj.reserve(word.letters.size());
    encoding::Word prefix;
    for (std::uint8_t letter : word.letters) {
        traj.emplace_back(encoding::encode_state(space, prefix), static_cast<int>(letter));
        prefix.letters.push_back(letter);
    }
    return traj;
}

void CemConfig::validate() const {
    if (!(0 < survive_percentile && survive_percentile <= select_percentile && select_percentile <= 100))
        throw Error("percentiles must satisfy 0 < x <= y <= 100");
    if (batch_size < 10) throw Error("batch_size must be >= 10");
    if (lr <= 0) throw Error("lr must be > 0");
    if (max_iterations < 1) throw Error("max_iterations must be >= 1");
    if (train_minibatch < 1) throw Error("train_minibatch must be >= 1");
}

Session sample_session(const nn::Mlp& net, const encoding::ConstructionSpace& space, Rng& rng) {
    if (net.input_dim() != space.state_dim())
        throw DimMismatch("net input " + std::to_string(net.input_dim()) + " vs state dim " +
                          std::to_string(space.state_dim()));
    const long L = space.word_len();
    Session s;
    s.word.letters.reserve(L);
    for (long step = 0; step < L; ++step) {
        auto probs = net.forward(encoding::encode_state(space, s.word));
        const double r = rng.next_double();
        double acc = 0;
        int letter = static_cast<int>(probs.size()) - 1;
        for (std::size_t a = 0; a < probs.size(); ++a) {
            acc += probs[a];
            if (r < acc) {
                letter = static_cast<int>(a);
                break;
            }
        }
        s.word.letters.push_back(static_cast<std::uint8_t>(letter));
    }
    return s;
}

std::vector<std::size_t> select_elite_indices(const std::vector<Session>& sessions, double y) {
    if (sessions.empty()) throw EmptyBatch();
    std::vector<double> rewards(sessions.size());
    for (std::size_t i = 0; i < sessions.size(); ++i) rewards[i] = sessions[i].reward;
    std::sort(rewards.begin(), rewards.end(), std::greater<double>());
    const std::size_t count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(sessions.size() * y / 100.0)));
    const double threshold = rewards[std::min(count, rewards.size()) - 1];

    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < sessions.size(); ++i)
        if (sessions[i].reward >= threshold) idx.push_back(i);
    return idx;
}

nn::TrainBatch select_elites(const encoding::ConstructionSpace& space,
                             const std::vector<Session>& sessions, double y) {
    nn::TrainBatch batch;
    for (std::size_t i : select_elite_indices(sessions, y)) {
        for (auto& [state, action] : sessions[i].trajectory(space)) {
            batch.states.push_back(std::move(state));
            batch.actions.push_back(action);
        }
    }
    return batch;
}

std::vector<std::size_t> select_survivor_indices(const std::vector<Session>& pool, double x,
                                                 std::size_t merged_size) {
    const std::size_t keep =
        static_cast<std::size_t>(std::ceil(x * static_cast<double>(merged_size) / 100.0));
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pool[a].reward != pool[b].reward) return pool[a].reward > pool[b].reward;
        if (pool[a].birth_iteration != pool[b].birth_iteration)
            return pool[a].birth_iteration < pool[b].birth_iteration;
        return pool[a].word < pool[b].word;
    });
    std::vector<std::size_t> survivors;
    std::set<encoding::Word> seen;
    for (std::size_t i : order) {
        if (survivors.size() >= keep) break;
        if (seen.insert(pool[i].word).second) survivors.push_back(i);
    }
    return survivors;
}

namespace {

void write_best_construction(const std::string& path, const encoding::ConstructionSpace& space,
                             const encoding::Word& word) {
    std::ofstream os(path);
    switch (space.kind) {
        case encoding::SpaceKind::GraphEdges:
        case encoding::SpaceKind::PruferTree:
            graph::write_edge_list(os, encoding::decode_graph(space, word));
            break;
        case encoding::SpaceKind::BinaryMatrix:
            linalg::write_matrix(os, encoding::decode_matrix(space, word));
            break;
        case encoding::SpaceKind::GraphPair: {
            auto [g, h] = encoding::decode_graph_pair(space, word);
            graph::write_edge_list(os, g);
            graph::write_edge_list(os, h);
            break;
        }
    }
}

}  // namespace

RunResult run(const CemConfig& cfg, const encoding::ConstructionSpace& space, const RewardFn& reward) {
    cfg.validate();
    RunResult result;
    result.net = nn::Mlp::policy_net(static_cast<int>(space.state_dim()), space.alphabet_size(), cfg.rng_seed);
    nn::Gradients velocity;

    std::ofstream jsonl, csv;
    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        // append + per-line flush: a killed run still leaves a valid prefix
        jsonl.open(cfg.out_dir + "/log.jsonl", std::ios::app);
        csv.open(cfg.out_dir + "/log.csv", std::ios::app);
        csv << "iteration,mean_elite_reward,best_reward\n" << std::flush;
    }

    std::vector<Session> survivors;
    bool have_best = false;

    const int N = cfg.batch_size;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        const auto t0 = std::chrono::steady_clock::now();

        std::vector<Session> pool(static_cast<std::size_t>(N));
        const nn::Mlp& net = result.net;  // frozen snapshot for this iteration
#ifdef _OPENMP
        const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
        for (int i = 0; i < N; ++i) {
            Rng rng(substream_seed(cfg.rng_seed, static_cast<std::uint64_t>(iter), static_cast<std::uint64_t>(i)));
            Session s = sample_session(net, space, rng);
            s.birth_iteration = iter;
            double r;
            try {
                r = reward(s.word);
            } catch (...) {
                r = cfg.penalty;
            }
            s.reward = std::isfinite(r) ? r : cfg.penalty;
            pool[static_cast<std::size_t>(i)] = std::move(s);
        }
        const std::size_t merged_size = pool.size() + survivors.size();
        pool.insert(pool.end(), survivors.begin(), survivors.end());

        // best-ever update, scanning in deterministic pool order
        bool improved = false;
        for (const Session& s : pool)
            if (!have_best || s.reward > result.best.reward) {
                result.best = s;
                have_best = true;
                improved = true;
            }

        auto elite_idx = select_elite_indices(pool, cfg.select_percentile);
        double mean_elite = 0;
        for (std::size_t i : elite_idx) mean_elite += pool[i].reward;
        mean_elite /= static_cast<double>(elite_idx.size());

        // one training pass over the elite (state, action) pairs
        nn::TrainBatch elites = select_elites(space, pool, cfg.select_percentile);
        if (velocity.w.empty() && cfg.momentum != 0.0) {
            velocity.w.resize(result.net.layers());
            velocity.b.resize(result.net.layers());
            for (int l = 0; l < result.net.layers(); ++l) {
                velocity.w[l].assign(result.net.w[l].size(), 0.0);
                velocity.b[l].assign(result.net.b[l].size(), 0.0);
            }
        }
        {
            std::vector<std::size_t> order(elites.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            Rng shuffle_rng(substream_seed(cfg.rng_seed, static_cast<std::uint64_t>(iter), 0xfeedULL << 32));
            shuffle_rng.shuffle(order);
            for (std::size_t at = 0; at < order.size(); at += cfg.train_minibatch) {
                nn::TrainBatch mb;
                for (std::size_t i = at; i < std::min(order.size(), at + cfg.train_minibatch); ++i) {
                    mb.states.push_back(elites.states[order[i]]);
                    mb.actions.push_back(elites.actions[order[i]]);
                }
                auto grads = nn::backward(result.net, mb);
                nn::sgd_step(result.net, grads, cfg.lr, cfg.momentum,
                             cfg.momentum != 0.0 ? &velocity : nullptr);
            }
        }

        {
            auto keep_idx = select_survivor_indices(pool, cfg.survive_percentile, merged_size);
            std::vector<Session> next;
            next.reserve(keep_idx.size());
            for (std::size_t i : keep_idx) next.push_back(pool[i]);
            survivors = std::move(next);
        }

        const auto t1 = std::chrono::steady_clock::now();
        IterationStats st;
        st.iteration = iter;
        st.mean_elite_reward = mean_elite;
        st.best_reward = result.best.reward;
        st.best_word = encoding::word_to_string(space, result.best.word);
        st.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        result.stats.push_back(st);

        if (jsonl.is_open()) {
            nlohmann::json j{{"iteration", st.iteration},
                             {"mean_elite_reward", st.mean_elite_reward},
                             {"best_reward", st.best_reward},
                             {"best_word", st.best_word},
                             {"elapsed_ms", st.elapsed_ms}};
            jsonl << j.dump() << "\n" << std::flush;
            csv << st.iteration << ',' << st.mean_elite_reward << ',' << st.best_reward << "\n" << std::flush;
            if (improved) write_best_construction(cfg.out_dir + "/best_construction.txt", space, result.best.word);
            if (cfg.checkpoint_every > 0 && (iter + 1) % cfg.checkpoint_every == 0) {
                char name[64];
                std::snprintf(name, sizeof name, "/checkpoint_%06d.bin", iter + 1);
                nn::save_checkpoint(result.net, cfg.out_dir + name);
            }
        }

        if (cfg.target_threshold && result.best.reward > *cfg.target_threshold) {
            result.reached_threshold = true;
            break;
        }
    }

    if (!cfg.out_dir.empty()) nn::save_checkpoint(result.net, cfg.out_dir + "/checkpoint_final.bin");
    return result;
}

}  // namespace refute::cem
