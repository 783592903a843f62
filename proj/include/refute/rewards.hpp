#pragma once

#include <functional>
#include <optional>
#include <string>

#include "refute/encoding.hpp"
#include "refute/graph.hpp"
#include "refute/linalg.hpp"

namespace refute::rewards {

// One scoring function per conjecture: larger is better, exceeding the
// threshold certifies a counterexample, invalid constructions score the
// penalty instead of aborting.
struct ScoreFn {
    std::string name;
    encoding::ConstructionSpace space;
    std::function<double(const encoding::Word&)> evaluate;
    std::optional<double> threshold;
    double penalty = -10000;
};

// -(lambda_1 + mu) for connected graphs on >= 3 vertices, else penalty.
double reward_lambda_mu(const graph::Graph& g, double penalty = -10000);

// -(proximity + distance eigenvalue at position floor(2D/3), 1-based into the
// descending spectrum) for connected graphs with n >= 4 and D >= 2.
double reward_proximity_dspec(const graph::Graph& g, double penalty = -10000);

// Peak distance f(T) of a tree, to be maximized; no refutation threshold.
double reward_collins(const graph::Graph& tree);

// Permanent of a 312-avoiding 0/1 matrix (n <= 13), penalty otherwise.
double reward_perm312(const linalg::IntMatrix& m, double penalty = -10000);

// Exploratory distance-Laplacian cospectrality score for a graph pair.
double reward_cospectral_pair(const graph::Graph& g, const graph::Graph& h, double penalty = -10000);

// True iff no rows i1 < i2 < i3 and columns j1 < j2 < j3 carry ones at
// (i1,j3), (i2,j1), (i3,j2).
bool avoids_312(const linalg::IntMatrix& m);

// Direct sum of two square 0/1 matrices with the four designated zeros turned
// into ones; both preserve 312-avoidance.
linalg::IntMatrix star_op(const linalg::IntMatrix& a, const linalg::IntMatrix& b);
linalg::IntMatrix circ_op(const linalg::IntMatrix& a, const linalg::IntMatrix& b);

// Record permanents of 312-avoiding matrices, n = 1..13.
long best_known_perm312(int n);

// CLI-facing factory: lambda-mu | proximity-dspec | collins | perm312 | cospectral.
ScoreFn make_score_fn(const std::string& name, int n, double penalty = -10000);

}  // namespace refute::rewards
