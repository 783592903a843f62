#include "refute/rewards.hpp"

#include <cmath>

#include "refute/errors.hpp"

namespace refute::rewards {

double reward_lambda_mu(const graph::Graph& g, double penalty) {
    if (g.n < 3 || !graph::is_connected(g)) return penalty;
    return -(graph::lambda1(g) + graph::matching_number(g));
}

double reward_proximity_dspec(const graph::Graph& g, double penalty) {
    if (g.n < 4 || !graph::is_connected(g)) return penalty;
    const int D = graph::diameter(g);
    const int idx = 2 * D / 3;  // 1-based into the descending spectrum
    if (idx < 1) return penalty;
    const auto spec = graph::distance_spectrum(g);
    return -(graph::proximity(g) + spec[idx - 1]);
}

double reward_collins(const graph::Graph& tree) {
    return graph::peak_profile(tree).f.get_d();
}

double reward_perm312(const linalg::IntMatrix& m, double penalty) {
    if (m.n > 13) throw DimensionTooLarge(m.n, 13);
    if (!avoids_312(m)) return penalty;
    return linalg::permanent(m).get_d();
}

double reward_cospectral_pair(const graph::Graph& g, const graph::Graph& h, double penalty) {
    if (!graph::is_connected(g) || !graph::is_connected(h)) return penalty;
    if (g.n != h.n) return penalty;
    const int n = g.n;
    auto cg = linalg::charpoly_exact(graph::distance_laplacian(g));
    auto ch = linalg::charpoly_exact(graph::distance_laplacian(h));
    double score = 0;
    for (int k = 0; k < n; ++k) {
        BigInt a = k <= cg.degree() ? cg.c[k] : BigInt(0);
        BigInt b = k <= ch.degree() ? ch.c[k] : BigInt(0);
        BigInt diff = abs(BigInt(a - b));
        if (diff == 0) continue;
        // degree-scaled magnitude: coefficient k weighs in with its (n-k)-th root
        score -= std::pow(diff.get_d(), 1.0 / (n - k));
    }
    const bool rg = graph::is_transmission_regular(g);
    const bool rh = graph::is_transmission_regular(h);
    if (rg == rh) score -= 10000;
    if (g == h) score -= 10000;
    return score;
}

bool avoids_312(const linalg::IntMatrix& m) {
    const int n = m.n;
    if (n > 64) throw DimensionTooLarge(n, 64);
    std::vector<std::uint64_t> rows(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.at(i, j) != 0) rows[i] |= 1ull << j;

    std::vector<std::uint64_t> below(n + 1, 0);  // OR of rows i..n-1
    for (int i = n - 1; i >= 0; --i) below[i] = below[i + 1] | rows[i];

    // For the middle row i2 it suffices to take j1 = lowest one of the row and
    // j3 = highest one above; a violating j2 is any one strictly between them
    // in some lower row.
    std::uint64_t above = 0;
    for (int i2 = 0; i2 < n; ++i2) {
        if (i2 > 0 && rows[i2] && above && below[i2 + 1]) {
            const int j1 = __builtin_ctzll(rows[i2]);
            const int j3 = 63 - __builtin_clzll(above);
            if (j3 - j1 >= 2) {
                const std::uint64_t window = ((1ull << j3) - 1) & ~((2ull << j1) - 1);
                if (below[i2 + 1] & window) return false;
            }
        }
        above |= rows[i2];
    }
    return true;
}

namespace {

linalg::IntMatrix direct_sum_with(const linalg::IntMatrix& a, const linalg::IntMatrix& b,
                                  std::initializer_list<std::pair<int, int>> extra_ones) {
    const int n = a.n + b.n;
    linalg::IntMatrix m(n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) m.at(a.n + i, a.n + j) = b.at(i, j);
    for (auto [i, j] : extra_ones)
        if (0 <= i && i < n && 0 <= j && j < n) m.at(i, j) = 1;
    return m;
}

}  // namespace

linalg::IntMatrix star_op(const linalg::IntMatrix& a, const linalg::IntMatrix& b) {
    const int an = a.n, bn = b.n;
    return direct_sum_with(a, b, {{an - 2, an}, {an - 1, an}, {an, 0}, {an + bn - 1, 0}});
}

linalg::IntMatrix circ_op(const linalg::IntMatrix& a, const linalg::IntMatrix& b) {
    const int an = a.n, bn = b.n;
    return direct_sum_with(a, b, {{an - 1, an}, {an - 1, an + 1}, {an + bn - 1, 0}, {an + bn - 1, an - 1}});
}

long best_known_perm312(int n) {
    static const long table[] = {1, 2, 4, 8, 16, 32, 64, 120, 225, 424, 795, 1484, 2809};
    if (n < 1 || n > 13) throw DimensionTooLarge(n, 13);
    return table[n - 1];
}

ScoreFn make_score_fn(const std::string& name, int n, double penalty) {
    ScoreFn fn;
    fn.name = name;
    fn.penalty = penalty;
    if (name == "lambda-mu") {
        fn.space = encoding::ConstructionSpace::graph_edges(n);
        fn.threshold = -(std::sqrt(n - 1.0) + 1.0);
        fn.evaluate = [n, penalty, space = fn.space](const encoding::Word& w) {
            return reward_lambda_mu(encoding::decode_graph(space, w), penalty);
        };
    } else if (name == "proximity-dspec") {
        fn.space = encoding::ConstructionSpace::graph_edges(n);
        fn.threshold = 0.0;
        fn.evaluate = [penalty, space = fn.space](const encoding::Word& w) {
            return reward_proximity_dspec(encoding::decode_graph(space, w), penalty);
        };
    } else if (name == "collins") {
        fn.space = encoding::ConstructionSpace::prufer_tree(n);
        fn.evaluate = [space = fn.space](const encoding::Word& w) {
            return reward_collins(encoding::decode_graph(space, w));
        };
    } else if (name == "perm312") {
        fn.space = encoding::ConstructionSpace::binary_matrix(n);
        fn.threshold = best_known_perm312(n) - 0.5;
        fn.evaluate = [penalty, space = fn.space](const encoding::Word& w) {
            return reward_perm312(encoding::decode_matrix(space, w), penalty);
        };
    } else if (name == "cospectral") {
        fn.space = encoding::ConstructionSpace::graph_pair(n);
        // exact cospectrality plus the regularity split scores 0; any
        // coefficient mismatch costs at least 1, so -0.5 separates them
        fn.threshold = -0.5;
        fn.evaluate = [penalty, space = fn.space](const encoding::Word& w) {
            auto [g, h] = encoding::decode_graph_pair(space, w);
            return reward_cospectral_pair(g, h, penalty);
        };
    } else {
        throw Error("unknown problem '" + name + "'");
    }
    return fn;
}

}  // namespace refute::rewards
