#pragma once

#include <string>
#include <vector>

#include "refute/graph.hpp"
#include "refute/linalg.hpp"

namespace refute::verify {

struct VerificationReport {
    std::string name;
    bool passed = false;
    bool skipped = false;  // missing data: counts as passed-with-warning
    std::string details;
};

// Directory holding the embedded construction data; REFUTE_DATA_DIR overrides
// the compiled-in default.
std::string default_data_dir();

// The 19-vertex graph refuting lambda_1 + mu >= sqrt(n-1) + 1: two 8-leaf
// stars whose centers are joined through one middle vertex.
graph::Graph aouch_graph();

VerificationReport check_aouch_counterexample();

// comet(13,190): diameter 12 and proximity + 8th distance eigenvalue < 0.
// The 189/190 boundary is reported but non-fatal.
VerificationReport check_comet_counterexample();

// T_{n,d} peak and matching-count claims for (9,3), (16,4), (25,5), (30,5).
VerificationReport check_tnd_peaks();

// Exhaustive maximum of per(A) over n x n 312-avoiding 0/1 matrices, with
// incremental avoidance pruning. n <= 7 (n = 8 is a long-running stretch).
struct F312Result {
    BigInt value;
    linalg::IntMatrix witness;
};
F312Result f312_oracle(int n, bool allow_n8 = false);

// The transcribed record matrices A1..A13: avoidance, caption permanents,
// ones bound, oracle optimality up to oracle_limit, and the composed 24x24
// permanent 5113196 > 2^{0.89*25}.
VerificationReport check_perm312_constructions(const std::string& data_dir = "", int oracle_limit = 7);

// Four hyperplanes covering exactly {0,1}^6 minus B x {00}.
VerificationReport check_hyperplane_cover(const std::string& data_dir = "");

// The 146-pair weakly cross-intersecting (4,4)-system.
VerificationReport check_setpair_system(const std::string& data_dir = "");

// det(D(T)) = (-1)^{n-1} (n-1) 2^{n-2} on random trees, n in 2..12.
VerificationReport check_graham_pollack(int samples, std::uint64_t seed = 12345);

}  // namespace refute::verify
