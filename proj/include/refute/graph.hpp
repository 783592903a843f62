#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "refute/linalg.hpp"

namespace refute::graph {

// Simple undirected labeled graph. Edges are stored as (i, j) with i < j in
// lexicographic order; edge index e in [0, n(n-1)/2) follows that order.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    Graph() = default;
    explicit Graph(int vertices) : n(vertices) {}

    void add_edge(int i, int j);
    bool has_edge(int i, int j) const;
    int edge_count() const { return static_cast<int>(edges.size()); }
    std::vector<std::vector<int>> adjacency_lists() const;
    bool operator==(const Graph&) const = default;
};

long edge_slots(int n);                         // n(n-1)/2
long edge_index(int n, int i, int j);           // canonical index of pair i < j
std::pair<int, int> edge_pair(int n, long e);   // inverse of edge_index

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);

// BFS distances from every source; -1 marks unreachable pairs. The source
// loop is OpenMP-parallel when `parallel` is set; rows are identical either
// way.
std::vector<std::vector<int>> all_pairs_distances(const Graph& g, bool parallel = true);

linalg::IntMatrix adjacency_matrix(const Graph& g);
linalg::SymMatrix adjacency_sym(const Graph& g);

linalg::IntMatrix distance_matrix(const Graph& g);        // throws Disconnected
int diameter(const Graph& g);                             // throws Disconnected
double proximity(const Graph& g);                         // min_v avg distance, throws Disconnected
std::vector<long long> transmission(const Graph& g);      // per-vertex distance sums
bool is_transmission_regular(const Graph& g);
linalg::IntMatrix distance_laplacian(const Graph& g);     // T(G) - D(G), zero row sums
std::vector<double> distance_spectrum(const Graph& g);    // descending

double lambda1(const Graph& g);  // largest adjacency eigenvalue

// Maximum matching size for arbitrary graphs (blossom algorithm, O(V^3)).
int matching_number(const Graph& g);

// Prufer code <-> labeled tree on n = len(code) + 2 vertices.
Graph prufer_decode(const std::vector<int>& code);
std::vector<int> prufer_encode(const Graph& tree);

// Number of k-edge matchings of a tree, exact (rooted DP).
BigInt count_matchings(const Graph& tree, int k);
std::vector<BigInt> matching_counts(const Graph& tree);  // N_0 .. N_mu

// det(A - xI) of a tree assembled from matching counts; agrees exactly with
// linalg::charpoly_exact of the adjacency matrix.
linalg::ExactPoly adjacency_charpoly_tree(const Graph& tree);

// Peak positions of the adjacency-polynomial coefficients and of the
// normalized distance-polynomial coefficients, all ratios exact.
struct PeakProfile {
    std::vector<std::pair<int, BigInt>> adjacency_nonzero;  // (exponent, coeff), exponents ascending
    int m = 0;        // number of nonzero adjacency coefficients
    int p_A = 0;      // 1-based peak position of |coeff| (ties -> smallest)
    std::vector<BigRat> normalized_dist;  // d_k = 2^k |delta_k| / 2^{n-2}, k = 0..n-2
    int n_terms = 0;  // n + 1
    int p_D = 0;      // 0-based peak of d_k (ties -> smallest)
    BigRat f;         // |p_A/m - (1 - p_D/n_terms)|
};
PeakProfile peak_profile(const Graph& tree);  // requires tree, n >= 3

// Path on d vertices with (n-d)/d leaves attached to each path vertex.
Graph build_t_nd(int n, int d);

// Path v_0..v_{tail-1} with `pendants` leaves on v_{(tail-1)/2 - 1}.
Graph build_comet(int tail, int pendants);

// Edge-list text format: "n m" then one "i j" line per edge, i < j,
// lexicographic order; strict (round-trips bit-exactly).
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

}  // namespace refute::graph
