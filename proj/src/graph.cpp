#include "refute/graph.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "refute/errors.hpp"

namespace refute::graph {

void Graph::add_edge(int i, int j) {
    if (i == j) throw Error("loops are not allowed");
    if (i < 0 || j < 0 || i >= n || j >= n) throw LabelOutOfRange(std::max(i, j), n);
    if (i > j) std::swap(i, j);
    auto e = std::make_pair(i, j);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it != edges.end() && *it == e) return;
    edges.insert(it, e);
}

bool Graph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    return adj;
}

long edge_slots(int n) { return static_cast<long>(n) * (n - 1) / 2; }

long edge_index(int n, int i, int j) {
    assert(0 <= i && i < j && j < n);
    return static_cast<long>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> edge_pair(int n, long e) {
    assert(0 <= e && e < edge_slots(n));
    int i = 0;
    long row = n - 1;
    while (e >= row) {
        e -= row;
        --row;
        ++i;
    }
    return {i, i + 1 + static_cast<int>(e)};
}

namespace {

std::vector<int> bfs_from(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), -1);
    dist[src] = 0;
    std::vector<int> queue{src};
    for (std::size_t h = 0; h < queue.size(); ++h) {
        int u = queue[h];
        for (int v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

}  // namespace

bool is_connected(const Graph& g) {
    if (g.n <= 0) return false;
    auto adj = g.adjacency_lists();
    auto dist = bfs_from(adj, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool is_tree(const Graph& g) { return g.edge_count() == g.n - 1 && is_connected(g); }

std::vector<std::vector<int>> all_pairs_distances(const Graph& g, bool parallel) {
    auto adj = g.adjacency_lists();
    std::vector<std::vector<int>> rows(g.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel && g.n >= 64)
#else
    (void)parallel;
#endif
    for (int s = 0; s < g.n; ++s) rows[s] = bfs_from(adj, s);
    return rows;
}

linalg::IntMatrix adjacency_matrix(const Graph& g) {
    linalg::IntMatrix m(g.n);
    for (auto [i, j] : g.edges) {
        m.at(i, j) = 1;
        m.at(j, i) = 1;
    }
    return m;
}

linalg::SymMatrix adjacency_sym(const Graph& g) {
    linalg::SymMatrix m(g.n);
    for (auto [i, j] : g.edges) m.set(i, j, 1.0);
    return m;
}

linalg::IntMatrix distance_matrix(const Graph& g) {
    auto rows = all_pairs_distances(g);
    linalg::IntMatrix m(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (rows[i][j] < 0) throw Disconnected();
            m.at(i, j) = rows[i][j];
        }
    return m;
}

int diameter(const Graph& g) {
    auto rows = all_pairs_distances(g);
    int d = 0;
    for (const auto& row : rows)
        for (int v : row) {
            if (v < 0) throw Disconnected();
            d = std::max(d, v);
        }
    return d;
}

std::vector<long long> transmission(const Graph& g) {
    auto rows = all_pairs_distances(g);
    std::vector<long long> t(g.n, 0);
    for (int i = 0; i < g.n; ++i)
        for (int v : rows[i]) {
            if (v < 0) throw Disconnected();
            t[i] += v;
        }
    return t;
}

bool is_transmission_regular(const Graph& g) {
    auto t = transmission(g);
    return std::all_of(t.begin(), t.end(), [&](long long v) { return v == t[0]; });
}

double proximity(const Graph& g) {
    if (g.n < 2) throw Error("proximity requires n >= 2");
    auto t = transmission(g);
    long long best = *std::min_element(t.begin(), t.end());
    return static_cast<double>(best) / (g.n - 1);
}

linalg::IntMatrix distance_laplacian(const Graph& g) {
    auto rows = all_pairs_distances(g);
    linalg::IntMatrix m(g.n);
    for (int i = 0; i < g.n; ++i) {
        long long ti = 0;
        for (int j = 0; j < g.n; ++j) {
            if (rows[i][j] < 0) throw Disconnected();
            ti += rows[i][j];
            if (i != j) m.at(i, j) = -rows[i][j];
        }
        m.at(i, i) = static_cast<long>(ti);
    }
    return m;
}

std::vector<double> distance_spectrum(const Graph& g) {
    return linalg::sym_eigenvalues(distance_matrix(g).to_sym());
}

double lambda1(const Graph& g) {
    if (g.n < 1) throw Error("lambda1 requires n >= 1");
    return linalg::sym_eigenvalues(adjacency_sym(g))[0];
}

namespace {

// Blossom (contraction) maximum matching; classic O(V^3) formulation.
class Blossom {
public:
    explicit Blossom(const Graph& g) : n_(g.n), adj_(g.adjacency_lists()), match_(g.n, -1) {}

    int run() {
        for (int v = 0; v < n_; ++v)
            if (match_[v] < 0) augment_from(v);
        int matched = 0;
        for (int v = 0; v < n_; ++v)
            if (match_[v] >= 0) ++matched;
        return matched / 2;
    }

private:
    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_, parent_, base_;
    std::vector<bool> used_, blossom_;

    int lowest_common_ancestor(int a, int b) {
        std::vector<bool> seen(n_, false);
        for (;;) {
            a = base_[a];
            seen[a] = true;
            if (match_[a] < 0) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = true;
            blossom_[base_[match_[v]]] = true;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    int find_augmenting_path(int root) {
        used_.assign(n_, false);
        parent_.assign(n_, -1);
        base_.resize(n_);
        for (int i = 0; i < n_; ++i) base_[i] = i;

        used_[root] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj_[v]) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] >= 0 && parent_[match_[to]] >= 0)) {
                    int curbase = lowest_common_ancestor(v, to);
                    blossom_.assign(n_, false);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[base_[i]]) {
                            base_[i] = curbase;
                            if (!used_[i]) {
                                used_[i] = true;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] < 0) {
                    parent_[to] = v;
                    if (match_[to] < 0) return to;
                    used_[match_[to]] = true;
                    q.push(match_[to]);
                }
            }
        }
        return -1;
    }

    void augment_from(int root) {
        int v = find_augmenting_path(root);
        if (v < 0) return;
        while (v >= 0) {
            int pv = parent_[v], ppv = match_[pv];
            match_[v] = pv;
            match_[pv] = v;
            v = ppv;
        }
    }
};

}  // namespace

int matching_number(const Graph& g) { return Blossom(g).run(); }

Graph prufer_decode(const std::vector<int>& code) {
    const int n = static_cast<int>(code.size()) + 2;
    for (int c : code)
        if (c < 0 || c >= n) throw LabelOutOfRange(c, n);
    std::vector<int> degree(n, 1);
    for (int c : code) ++degree[c];

    Graph t(n);
    int ptr = 0;
    while (degree[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int c : code) {
        t.add_edge(leaf, c);
        if (--degree[c] == 1 && c < ptr) {
            leaf = c;
        } else {
            ++ptr;
            while (degree[ptr] != 1) ++ptr;
            leaf = ptr;
        }
    }
    t.add_edge(leaf, n - 1);
    return t;
}

std::vector<int> prufer_encode(const Graph& tree) {
    if (!is_tree(tree)) throw NotATree();
    const int n = tree.n;
    std::vector<int> code;
    if (n <= 2) return code;
    auto adj = tree.adjacency_lists();
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(adj[v].size());
    std::vector<bool> removed(n, false);

    // repeatedly strip the smallest-labeled leaf, recording its neighbor
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.push(v);
    for (int step = 0; step < n - 2; ++step) {
        int leaf = leaves.top();
        leaves.pop();
        removed[leaf] = true;
        int nb = -1;
        for (int u : adj[leaf])
            if (!removed[u]) nb = u;
        code.push_back(nb);
        if (--degree[nb] == 1) leaves.push(nb);
    }
    return code;
}

std::vector<BigInt> matching_counts(const Graph& tree) {
    if (!is_tree(tree)) throw NotATree();
    const int n = tree.n;
    auto adj = tree.adjacency_lists();

    // poly[v] in the matching-size variable: f0 = v unmatched, f1 = v matched
    using Poly = std::vector<BigInt>;
    auto mul_add = [](Poly& dst, const Poly& a, const Poly& b, int shift) {
        // dst += a * b * t^shift
        if (dst.size() < a.size() + b.size() - 1 + shift) dst.resize(a.size() + b.size() - 1 + shift);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) dst[i + j + shift] += a[i] * b[j];
        }
    };

    std::vector<Poly> f0(n), f1(n);
    // iterative post-order from root 0
    std::vector<int> order, parent(n, -1), stack{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = true;
                parent[u] = v;
                stack.push_back(u);
            }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        f0[v] = {BigInt(1)};
        f1[v] = {BigInt(0)};
        for (int u : adj[v]) {
            if (u == parent[v]) continue;
            Poly child_any = f0[u];
            if (child_any.size() < f1[u].size()) child_any.resize(f1[u].size());
            for (std::size_t i = 0; i < f1[u].size(); ++i) child_any[i] += f1[u][i];
            Poly n0, n1;
            mul_add(n0, f0[v], child_any, 0);
            mul_add(n1, f1[v], child_any, 0);
            mul_add(n1, f0[v], f0[u], 1);  // match v to u
            f0[v] = std::move(n0);
            f1[v] = std::move(n1);
        }
    }
    Poly total = f0[0];
    if (total.size() < f1[0].size()) total.resize(f1[0].size());
    for (std::size_t i = 0; i < f1[0].size(); ++i) total[i] += f1[0][i];
    while (total.size() > 1 && total.back() == 0) total.pop_back();
    return total;
}

BigInt count_matchings(const Graph& tree, int k) {
    auto counts = matching_counts(tree);
    if (k < 0 || k >= static_cast<int>(counts.size())) return BigInt(0);
    return counts[k];
}

linalg::ExactPoly adjacency_charpoly_tree(const Graph& tree) {
    auto counts = matching_counts(tree);  // throws NotATree
    const int n = tree.n;
    // det(A - xI): coefficient of x^{n-2k} is (-1)^{n+k} N_k
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k < static_cast<int>(counts.size()); ++k) {
        BigInt v = counts[k];
        if ((n + k) % 2 != 0) v = -v;
        c[n - 2 * k] = v;
    }
    return linalg::ExactPoly(std::move(c));
}

PeakProfile peak_profile(const Graph& tree) {
    if (tree.n < 3) throw Error("peak_profile requires n >= 3");
    PeakProfile p;
    const int n = tree.n;

    auto cpa = adjacency_charpoly_tree(tree);  // throws NotATree
    for (int k = 0; k <= cpa.degree(); ++k)
        if (cpa.c[k] != 0) p.adjacency_nonzero.emplace_back(k, cpa.c[k]);
    p.m = static_cast<int>(p.adjacency_nonzero.size());
    p.p_A = 1;
    for (int i = 1; i < p.m; ++i)
        if (abs(p.adjacency_nonzero[i].second) > abs(p.adjacency_nonzero[p.p_A - 1].second)) p.p_A = i + 1;

    auto cpd = linalg::charpoly_exact(distance_matrix(tree));
    const BigInt denom = bigint_pow(BigInt(2), static_cast<unsigned long>(n - 2));
    BigInt best_key = -1;
    for (int k = 0; k <= n - 2; ++k) {
        BigInt delta = k <= cpd.degree() ? cpd.c[k] : BigInt(0);
        BigInt key = abs(delta) * bigint_pow(BigInt(2), static_cast<unsigned long>(k));
        p.normalized_dist.push_back(make_rat(key, denom));
        if (key > best_key) {
            best_key = key;
            p.p_D = k;
        }
    }
    p.n_terms = n + 1;

    BigRat ratio_a = make_rat(BigInt(p.p_A), BigInt(p.m));
    BigRat ratio_d = BigRat(1) - make_rat(BigInt(p.p_D), BigInt(p.n_terms));
    p.f = abs(BigRat(ratio_a - ratio_d));
    return p;
}

Graph build_t_nd(int n, int d) {
    if (d < 3 || n < d) throw Error("build_t_nd requires d >= 3 and n >= d");
    if (n % d != 0) throw NotDivisible(n, d);
    Graph t(n);
    for (int i = 0; i + 1 < d; ++i) t.add_edge(i, i + 1);
    const int leaves_per_vertex = (n - d) / d;
    int next = d;
    for (int v = 0; v < d; ++v)
        for (int l = 0; l < leaves_per_vertex; ++l) t.add_edge(v, next++);
    return t;
}

Graph build_comet(int tail, int pendants) {
    if (tail < 3 || tail % 2 == 0) throw Error("build_comet requires odd tail >= 3");
    if (pendants < 0) throw Error("build_comet requires pendants >= 0");
    Graph g(tail + pendants);
    for (int i = 0; i + 1 < tail; ++i) g.add_edge(i, i + 1);
    const int attach = (tail - 1) / 2 - 1;
    for (int p = 0; p < pendants; ++p) g.add_edge(attach, tail + p);
    return g;
}

void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.n << ' ' << g.edge_count() << "\n";
    for (auto [i, j] : g.edges) os << i << ' ' << j << "\n";
}

Graph read_edge_list(std::istream& is) {
    std::string line;
    int lineno = 1;
    if (!std::getline(is, line)) throw ParseError("expected 'n m' header", lineno);
    std::istringstream head(line);
    int n = 0, m = 0;
    if (!(head >> n >> m) || n < 1 || m < 0) throw ParseError("bad 'n m' header", lineno);
    Graph g(n);
    std::pair<int, int> prev{-1, -1};
    for (int e = 0; e < m; ++e) {
        ++lineno;
        if (!std::getline(is, line)) throw ParseError("unexpected end of edge list", lineno);
        std::istringstream es(line);
        int i = -1, j = -1;
        if (!(es >> i >> j)) throw ParseError("bad edge line", lineno);
        if (i < 0 || j >= n || i >= j) throw ParseError("edge must satisfy 0 <= i < j < n", lineno);
        if (std::make_pair(i, j) <= prev) throw ParseError("edges must be in lexicographic order", lineno);
        prev = {i, j};
        g.edges.emplace_back(i, j);
    }
    return g;
}

}  // namespace refute::graph
