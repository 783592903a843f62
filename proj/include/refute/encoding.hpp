#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "refute/graph.hpp"
#include "refute/linalg.hpp"

namespace refute::encoding {

enum class SpaceKind { GraphEdges, PruferTree, BinaryMatrix, GraphPair };

// A construction space fixes the word length and alphabet, and how complete
// words decode into combinatorial objects.
struct ConstructionSpace {
    SpaceKind kind;
    int n;  // vertices (graphs, trees) or matrix dimension

    static ConstructionSpace graph_edges(int n) { return {SpaceKind::GraphEdges, n}; }
    static ConstructionSpace prufer_tree(int n) { return {SpaceKind::PruferTree, n}; }
    static ConstructionSpace binary_matrix(int n) { return {SpaceKind::BinaryMatrix, n}; }
    static ConstructionSpace graph_pair(int n) { return {SpaceKind::GraphPair, n}; }

    long word_len() const;
    int alphabet_size() const;

    // Network input width: one block for the letters decided so far (a single
    // bit per position for binary alphabets, an s-wide one-hot otherwise)
    // plus a position one-hot of length word_len.
    long state_dim() const {
        const int s = alphabet_size();
        return word_len() * (s == 2 ? 1 : s) + word_len();
    }
};

struct Word {
    std::vector<std::uint8_t> letters;

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;
};

// One line of symbols: adjacent digits for binary alphabets, space-separated
// numbers otherwise.
std::string word_to_string(const ConstructionSpace& space, const Word& w);
Word word_from_string(const ConstructionSpace& space, const std::string& s);

using StateVector = std::vector<double>;

// Fig-style network input for a partial word: decided letters in the first
// block (undecided positions stay zero; for binary alphabets "rejected" and
// "not yet considered" deliberately share the 0 encoding), position one-hot
// at index len(partial) in the second block.
StateVector encode_state(const ConstructionSpace& space, const Word& partial);

using Construction = std::variant<graph::Graph, std::pair<graph::Graph, graph::Graph>, linalg::IntMatrix>;

Construction decode(const ConstructionSpace& space, const Word& w);  // throws IncompleteWord
graph::Graph decode_graph(const ConstructionSpace& space, const Word& w);
linalg::IntMatrix decode_matrix(const ConstructionSpace& space, const Word& w);
std::pair<graph::Graph, graph::Graph> decode_graph_pair(const ConstructionSpace& space, const Word& w);

// Inverse of decode for the bijective spaces (GraphEdges, BinaryMatrix,
// GraphPair); used by round-trip checks.
Word encode_construction(const ConstructionSpace& space, const Construction& c);

}  // namespace refute::encoding
