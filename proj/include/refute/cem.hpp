#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "refute/encoding.hpp"
#include "refute/nn.hpp"
#include "refute/rng.hpp"

namespace refute::cem {

// One complete generated word and its score. The per-step (state, action)
// trajectory is reconstructed on demand from the word; encode_state is pure,
// so the reconstruction is exact.
struct Session {
    encoding::Word word;
    double reward = 0;
    int birth_iteration = 0;

    std::vector<std::pair<encoding::StateVector, int>> trajectory(const encoding::ConstructionSpace& space) const;
};

struct CemConfig {
    int batch_size = 200;            // N fresh sessions per iteration
    double select_percentile = 10;   // y: top y% trained on
    double survive_percentile = 3;   // x: super-elites carried forward
    double lr = 0.005;
    double momentum = 0.0;
    int train_minibatch = 32;
    int max_iterations = 100;
    std::uint64_t rng_seed = 0;
    std::optional<double> target_threshold;  // stop when best reward exceeds it
    double penalty = -10000;                 // reward for throwing/NaN evaluations
    int workers = 0;                         // 0 = all available cores
    int checkpoint_every = 0;                // 0 = no checkpoints
    std::string out_dir;                     // empty = no files written

    void validate() const;  // throws Error on bad percentiles / batch size
};

struct IterationStats {
    int iteration = 0;
    double mean_elite_reward = 0;
    double best_reward = 0;
    std::string best_word;
    long long elapsed_ms = 0;
};

struct RunResult {
    Session best;
    std::vector<IterationStats> stats;
    bool reached_threshold = false;
    nn::Mlp net;
};

using RewardFn = std::function<double(const encoding::Word&)>;

// Sample one complete word, drawing each letter from forward(net, state).
Session sample_session(const nn::Mlp& net, const encoding::ConstructionSpace& space, Rng& rng);

// Indices of all sessions with reward >= the (100-y)th percentile reward;
// ties at the threshold are all included.
std::vector<std::size_t> select_elite_indices(const std::vector<Session>& sessions, double y);

// The (state, action) pairs of the elite sessions, in session/step order.
nn::TrainBatch select_elites(const encoding::ConstructionSpace& space,
                             const std::vector<Session>& sessions, double y);

// Super-elite survival: keep the top ceil(x * merged_size / 100) of the pool
// ordered by (reward desc, birth asc), collapsing identical words, so a
// survivor persists until enough sessions outscore it.
std::vector<std::size_t> select_survivor_indices(const std::vector<Session>& pool, double x,
                                                 std::size_t merged_size);

// The full training loop: per iteration, N fresh sessions plus the surviving
// super-elites are scored, the top y% train the net for one pass, and the
// top x% survive into the next iteration (identical words collapsed).
// Session generation is OpenMP-parallel over a frozen net snapshot with
// per-session RNG substreams, so results do not depend on worker count.
RunResult run(const CemConfig& cfg, const encoding::ConstructionSpace& space, const RewardFn& reward);

}  // namespace refute::cem
