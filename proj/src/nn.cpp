#include "refute/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "refute/errors.hpp"
#include "refute/rng.hpp"

namespace refute::nn {

namespace {

std::vector<double> layer_forward(const std::vector<double>& w, const std::vector<double>& b,
                                  const std::vector<double>& x, bool relu) {
    const std::size_t out = b.size(), in = x.size();
    std::vector<double> y(out);
    for (std::size_t o = 0; o < out; ++o) {
        double acc = b[o];
        const double* row = w.data() + o * in;
        for (std::size_t i = 0; i < in; ++i) acc += row[i] * x[i];
        y[o] = relu && acc < 0 ? 0.0 : acc;
    }
    return y;
}

std::vector<double> softmax(std::vector<double> z) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (double& v : z) v /= sum;
    return z;
}

}  // namespace

Mlp Mlp::init(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    Mlp net;
    net.sizes = layer_sizes;
    Rng rng(seed ^ 0xa5a5a5a5deadbeefULL);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int in = layer_sizes[l], out = layer_sizes[l + 1];
        const double bound = std::sqrt(6.0 / (in + out));
        std::vector<double> w(static_cast<std::size_t>(in) * out);
        for (double& v : w) v = (2 * rng.next_double() - 1) * bound;
        net.w.push_back(std::move(w));
        net.b.emplace_back(out, 0.0);
    }
    return net;
}

std::vector<double> Mlp::forward(const encoding::StateVector& s) const {
    if (static_cast<int>(s.size()) != input_dim())
        throw DimMismatch("state has " + std::to_string(s.size()) + " entries, net expects " +
                          std::to_string(input_dim()));
    std::vector<double> x = s;
    for (int l = 0; l < layers(); ++l) x = layer_forward(w[l], b[l], x, l + 1 < layers());
    return softmax(std::move(x));
}

double ce_loss(const Mlp& net, const TrainBatch& batch) {
    if (batch.size() == 0) throw EmptyBatch();
    double total = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        auto p = net.forward(batch.states[i]);
        total += -std::log(std::max(p[batch.actions[i]], 1e-12));
    }
    return total / static_cast<double>(batch.size());
}

Gradients backward(const Mlp& net, const TrainBatch& batch) {
    if (batch.size() == 0) throw EmptyBatch();
    Gradients g;
    g.w.resize(net.layers());
    g.b.resize(net.layers());
    for (int l = 0; l < net.layers(); ++l) {
        g.w[l].assign(net.w[l].size(), 0.0);
        g.b[l].assign(net.b[l].size(), 0.0);
    }

    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    for (std::size_t s = 0; s < batch.size(); ++s) {
        // forward, keeping activations
        std::vector<std::vector<double>> acts{batch.states[s]};
        for (int l = 0; l < net.layers(); ++l)
            acts.push_back(layer_forward(net.w[l], net.b[l], acts.back(), l + 1 < net.layers()));
        std::vector<double> delta = softmax(acts.back());
        delta[batch.actions[s]] -= 1.0;  // d loss / d logits

        for (int l = net.layers() - 1; l >= 0; --l) {
            const auto& x = acts[l];
            for (std::size_t o = 0; o < delta.size(); ++o) {
                const double d = delta[o] * inv_batch;
                g.b[l][o] += d;
                double* wrow = g.w[l].data() + o * x.size();
                for (std::size_t i = 0; i < x.size(); ++i) wrow[i] += d * x[i];
            }
            if (l == 0) break;
            std::vector<double> prev(x.size(), 0.0);
            for (std::size_t o = 0; o < delta.size(); ++o) {
                const double* wrow = net.w[l].data() + o * x.size();
                for (std::size_t i = 0; i < x.size(); ++i) prev[i] += wrow[i] * delta[o];
            }
            // ReLU mask of the layer-l activation
            for (std::size_t i = 0; i < prev.size(); ++i)
                if (x[i] <= 0) prev[i] = 0;
            delta = std::move(prev);
        }
    }
    return g;
}

void sgd_step(Mlp& net, const Gradients& grads, double lr, double momentum, Gradients* velocity) {
    if (lr < 0) throw Error("learning rate must be >= 0");
    for (int l = 0; l < net.layers(); ++l) {
        for (double v : grads.w[l])
            if (!std::isfinite(v)) throw NonfiniteGradient();
        for (double v : grads.b[l])
            if (!std::isfinite(v)) throw NonfiniteGradient();
    }
    for (int l = 0; l < net.layers(); ++l) {
        if (momentum != 0.0 && velocity) {
            for (std::size_t i = 0; i < net.w[l].size(); ++i) {
                velocity->w[l][i] = momentum * velocity->w[l][i] - lr * grads.w[l][i];
                net.w[l][i] += velocity->w[l][i];
            }
            for (std::size_t i = 0; i < net.b[l].size(); ++i) {
                velocity->b[l][i] = momentum * velocity->b[l][i] - lr * grads.b[l][i];
                net.b[l][i] += velocity->b[l][i];
            }
        } else {
            for (std::size_t i = 0; i < net.w[l].size(); ++i) net.w[l][i] -= lr * grads.w[l][i];
            for (std::size_t i = 0; i < net.b[l].size(); ++i) net.b[l][i] -= lr * grads.b[l][i];
        }
    }
}

namespace {

void put_le_double(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    os.write(buf, 8);
}

double get_le_double(std::istream& is) {
    char buf[8];
    is.read(buf, 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void save_checkpoint(const Mlp& net, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open checkpoint for writing: " + path);
    os << "MLP1\n";
    for (std::size_t i = 0; i < net.sizes.size(); ++i) os << (i ? " " : "") << net.sizes[i];
    os << "\n";
    for (int l = 0; l < net.layers(); ++l) {
        for (double v : net.w[l]) put_le_double(os, v);
        for (double v : net.b[l]) put_le_double(os, v);
    }
}

Mlp load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw MissingData(path);
    std::string header;
    std::getline(is, header);
    if (header != "MLP1") throw Error("unsupported checkpoint version '" + header + "'");
    std::string sizes_line;
    std::getline(is, sizes_line);
    Mlp net;
    {
        std::istringstream ss(sizes_line);
        int v;
        while (ss >> v) net.sizes.push_back(v);
    }
    if (net.sizes.size() < 2) throw Error("checkpoint has no layers");
    for (int l = 0; l < net.layers(); ++l) {
        net.w.emplace_back(static_cast<std::size_t>(net.sizes[l]) * net.sizes[l + 1]);
        net.b.emplace_back(net.sizes[l + 1]);
        for (double& v : net.w[l]) v = get_le_double(is);
        for (double& v : net.b[l]) v = get_le_double(is);
    }
    if (!is) throw Error("checkpoint truncated: " + path);
    return net;
}

}  // namespace refute::nn
