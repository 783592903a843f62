#include "refute/encoding.hpp"

#include <sstream>

#include "refute/errors.hpp"

namespace refute::encoding {

long ConstructionSpace::word_len() const {
    switch (kind) {
        case SpaceKind::GraphEdges: return graph::edge_slots(n);
        case SpaceKind::PruferTree: return n - 2;
        case SpaceKind::BinaryMatrix: return static_cast<long>(n) * n;
        case SpaceKind::GraphPair: return 2 * graph::edge_slots(n);
    }
    return 0;
}

int ConstructionSpace::alphabet_size() const {
    return kind == SpaceKind::PruferTree ? n : 2;
}

std::string word_to_string(const ConstructionSpace& space, const Word& w) {
    std::string s;
    const bool binary = space.alphabet_size() == 2;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (!binary && i) s += ' ';
        s += std::to_string(static_cast<int>(w.letters[i]));
    }
    return s;
}

Word word_from_string(const ConstructionSpace& space, const std::string& s) {
    Word w;
    if (space.alphabet_size() == 2) {
        for (char c : s) {
            if (c == '0' || c == '1')
                w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
            else if (!std::isspace(static_cast<unsigned char>(c)))
                throw Error(std::string("bad binary word symbol '") + c + "'");
        }
    } else {
        std::istringstream is(s);
        int v;
        while (is >> v) {
            if (v < 0 || v >= space.alphabet_size()) throw LabelOutOfRange(v, space.alphabet_size());
            w.letters.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return w;
}

StateVector encode_state(const ConstructionSpace& space, const Word& partial) {
    const long L = space.word_len();
    const int s = space.alphabet_size();
    const long pos = static_cast<long>(partial.letters.size());
    if (pos >= L) throw WordComplete();

    StateVector v(space.state_dim(), 0.0);
    if (s == 2) {
        for (long i = 0; i < pos; ++i) v[i] = partial.letters[i] ? 1.0 : 0.0;
        v[L + pos] = 1.0;
    } else {
        for (long i = 0; i < pos; ++i) v[i * s + partial.letters[i]] = 1.0;
        v[static_cast<long>(L) * s + pos] = 1.0;
    }
    return v;
}

namespace {

void require_complete(const ConstructionSpace& space, const Word& w) {
    if (static_cast<long>(w.letters.size()) != space.word_len())
        throw IncompleteWord(w.letters.size(), space.word_len());
}

graph::Graph graph_from_edge_word(int n, const std::uint8_t* bits) {
    graph::Graph g(n);
    long e = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++e)
            if (bits[e]) g.edges.emplace_back(i, j);
    return g;
}

}  // namespace

graph::Graph decode_graph(const ConstructionSpace& space, const Word& w) {
    require_complete(space, w);
    if (space.kind == SpaceKind::GraphEdges) return graph_from_edge_word(space.n, w.letters.data());
    if (space.kind == SpaceKind::PruferTree) {
        std::vector<int> code(w.letters.begin(), w.letters.end());
        return graph::prufer_decode(code);
    }
    throw Error("space does not decode to a single graph");
}

linalg::IntMatrix decode_matrix(const ConstructionSpace& space, const Word& w) {
    require_complete(space, w);
    if (space.kind != SpaceKind::BinaryMatrix) throw Error("space does not decode to a matrix");
    linalg::IntMatrix m(space.n);
    for (int i = 0; i < space.n; ++i)
        for (int j = 0; j < space.n; ++j)
            m.at(i, j) = static_cast<long>(w.letters[static_cast<std::size_t>(i) * space.n + j]);
    return m;
}

std::pair<graph::Graph, graph::Graph> decode_graph_pair(const ConstructionSpace& space, const Word& w) {
    require_complete(space, w);
    if (space.kind != SpaceKind::GraphPair) throw Error("space does not decode to a graph pair");
    const long half = graph::edge_slots(space.n);
    return {graph_from_edge_word(space.n, w.letters.data()),
            graph_from_edge_word(space.n, w.letters.data() + half)};
}

Construction decode(const ConstructionSpace& space, const Word& w) {
    switch (space.kind) {
        case SpaceKind::GraphEdges:
        case SpaceKind::PruferTree: return decode_graph(space, w);
        case SpaceKind::BinaryMatrix: return decode_matrix(space, w);
        case SpaceKind::GraphPair: return decode_graph_pair(space, w);
    }
    throw Error("unknown space kind");
}

Word encode_construction(const ConstructionSpace& space, const Construction& c) {
    Word w;
    switch (space.kind) {
        case SpaceKind::GraphEdges: {
            const auto& g = std::get<graph::Graph>(c);
            w.letters.assign(space.word_len(), 0);
            for (auto [i, j] : g.edges) w.letters[graph::edge_index(space.n, i, j)] = 1;
            break;
        }
        case SpaceKind::BinaryMatrix: {
            const auto& m = std::get<linalg::IntMatrix>(c);
            for (int i = 0; i < m.n; ++i)
                for (int j = 0; j < m.n; ++j)
                    w.letters.push_back(static_cast<std::uint8_t>(m.at(i, j).get_si()));
            break;
        }
        case SpaceKind::GraphPair: {
            const auto& [g, h] = std::get<std::pair<graph::Graph, graph::Graph>>(c);
            w.letters.assign(space.word_len(), 0);
            const long half = graph::edge_slots(space.n);
            for (auto [i, j] : g.edges) w.letters[graph::edge_index(space.n, i, j)] = 1;
            for (auto [i, j] : h.edges) w.letters[half + graph::edge_index(space.n, i, j)] = 1;
            break;
        }
        case SpaceKind::PruferTree:
            throw Error("use prufer_encode for trees");
    }
    return w;
}

}  // namespace refute::encoding
