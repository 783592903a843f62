#pragma once

#include <string>
#include <vector>

#include "refute/encoding.hpp"

namespace refute::nn {

// Fully connected policy network: ReLU hidden layers, softmax output.
struct Mlp {
    std::vector<int> sizes;                  // [input, hidden..., output]
    std::vector<std::vector<double>> w;      // per layer, row-major [out][in]
    std::vector<std::vector<double>> b;      // per layer, [out]

    int input_dim() const { return sizes.front(); }
    int output_dim() const { return sizes.back(); }
    int layers() const { return static_cast<int>(sizes.size()) - 1; }

    // Glorot-uniform init, seeded for reproducibility.
    static Mlp init(const std::vector<int>& sizes, std::uint64_t seed);

    // The production policy architecture: hidden layers 128, 64, 4.
    static Mlp policy_net(int input_dim, int output_dim, std::uint64_t seed) {
        return init({input_dim, 128, 64, 4, output_dim}, seed);
    }

    // Probability distribution over the alphabet; log-sum-exp softmax.
    std::vector<double> forward(const encoding::StateVector& s) const;
};

struct TrainBatch {
    std::vector<encoding::StateVector> states;
    std::vector<int> actions;

    std::size_t size() const { return states.size(); }
};

struct Gradients {
    std::vector<std::vector<double>> w, b;
};

// Mean cross-entropy -log p(action | state) over the batch.
double ce_loss(const Mlp& net, const TrainBatch& batch);

// Gradients of ce_loss with respect to every parameter.
Gradients backward(const Mlp& net, const TrainBatch& batch);

// params -= lr * grad, with optional momentum (velocity kept by the caller).
void sgd_step(Mlp& net, const Gradients& grads, double lr, double momentum = 0.0,
              Gradients* velocity = nullptr);

// Checkpoint: "MLP1" header line, layer sizes line, then all parameters as
// little-endian 64-bit floats (per layer: weights row-major, then biases).
// Reload is bit-exact.
void save_checkpoint(const Mlp& net, const std::string& path);
Mlp load_checkpoint(const std::string& path);

}  // namespace refute::nn
