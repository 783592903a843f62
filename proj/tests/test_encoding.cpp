#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "refute/encoding.hpp"
#include "refute/rng.hpp"
#include "test_helpers.hpp"

using namespace refute;
using namespace refute::encoding;

namespace {

Word word_of(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters) w.letters.push_back(static_cast<std::uint8_t>(l));
    return w;
}

}  // namespace

TEST_CASE("space dimensions") {
    auto ge = ConstructionSpace::graph_edges(19);
    CHECK(ge.word_len() == 171);
    CHECK(ge.alphabet_size() == 2);
    CHECK(ge.state_dim() == 342);

    auto pt = ConstructionSpace::prufer_tree(10);
    CHECK(pt.word_len() == 8);
    CHECK(pt.alphabet_size() == 10);
    CHECK(pt.state_dim() == 8 * 10 + 8);

    auto bm = ConstructionSpace::binary_matrix(5);
    CHECK(bm.word_len() == 25);
    CHECK(bm.state_dim() == 50);

    auto gp = ConstructionSpace::graph_pair(4);
    CHECK(gp.word_len() == 12);
    CHECK(gp.state_dim() == 24);
}

TEST_CASE("binary state encoding matches the two-vector layout") {
    auto space = ConstructionSpace::graph_edges(4);  // L = 6
    auto s = encode_state(space, word_of({1, 1, 1, 0, 0}));
    CHECK(s.size() == 12);
    // decision block: decided prefix 1,1,1,0,0 then undecided 0
    CHECK(s[0] == 1);
    CHECK(s[1] == 1);
    CHECK(s[2] == 1);
    CHECK(s[3] == 0);
    CHECK(s[4] == 0);
    CHECK(s[5] == 0);
    // position one-hot at index 5
    for (int i = 6; i < 12; ++i) CHECK(s[i] == (i == 11 ? 1 : 0));

    CHECK_THROWS_AS(encode_state(space, word_of({1, 1, 1, 0, 0, 1})), WordComplete);
}

TEST_CASE("one-hot state encoding for non-binary alphabets") {
    auto space = ConstructionSpace::prufer_tree(4);  // L = 2, s = 4
    auto s = encode_state(space, word_of({}));
    CHECK(s.size() == 10);
    for (std::size_t i = 0; i < 8; ++i) CHECK(s[i] == 0);
    CHECK(s[8] == 1);
    CHECK(s[9] == 0);

    s = encode_state(space, word_of({2}));
    CHECK(s[2] == 1);  // letter block one-hot
    CHECK(s[8] == 0);
    CHECK(s[9] == 1);
}

TEST_CASE("decode graph edges in canonical order") {
    auto space = ConstructionSpace::graph_edges(3);
    auto k3 = decode_graph(space, word_of({1, 1, 1}));
    CHECK(k3 == test_helpers::complete_graph(3));

    auto space4 = ConstructionSpace::graph_edges(4);
    auto g = decode_graph(space4, word_of({1, 0, 0, 0, 0, 1}));
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
    CHECK_FALSE(graph::is_connected(g));

    CHECK_THROWS_AS(decode_graph(space4, word_of({1, 0})), IncompleteWord);
}

TEST_CASE("decode binary matrix row-major") {
    auto space = ConstructionSpace::binary_matrix(2);
    auto m = decode_matrix(space, word_of({1, 0, 0, 1}));
    CHECK(m == linalg::IntMatrix::identity(2));
}

TEST_CASE("decode prufer words and graph pairs") {
    auto space = ConstructionSpace::prufer_tree(5);
    auto tree = decode_graph(space, word_of({2, 2, 2}));
    CHECK(graph::is_tree(tree));
    CHECK(tree.n == 5);

    auto pair_space = ConstructionSpace::graph_pair(3);
    auto [g, h] = decode_graph_pair(pair_space, word_of({1, 1, 1, 1, 0, 0}));
    CHECK(g == test_helpers::complete_graph(3));
    CHECK(h.edges == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("decode/encode round-trip is the identity word") {
    Rng rng(88);
    for (int trial = 0; trial < 50; ++trial) {
        auto space = trial % 2 ? ConstructionSpace::graph_edges(6) : ConstructionSpace::binary_matrix(4);
        Word w;
        for (long i = 0; i < space.word_len(); ++i)
            w.letters.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
        CHECK(encode_construction(space, decode(space, w)) == w);
    }
    // graph pairs round-trip too
    auto space = ConstructionSpace::graph_pair(5);
    Word w;
    Rng rng2(9);
    for (long i = 0; i < space.word_len(); ++i)
        w.letters.push_back(static_cast<std::uint8_t>(rng2.next_below(2)));
    CHECK(encode_construction(space, decode(space, w)) == w);
}

TEST_CASE("word text format") {
    auto ge = ConstructionSpace::graph_edges(3);
    CHECK(word_to_string(ge, word_of({1, 0, 1})) == "101");
    CHECK(word_from_string(ge, "101") == word_of({1, 0, 1}));

    auto pt = ConstructionSpace::prufer_tree(12);
    CHECK(word_to_string(pt, word_of({11, 0, 3})) == "11 0 3");
    CHECK(word_from_string(pt, "11 0 3") == word_of({11, 0, 3}));
    CHECK_THROWS_AS(word_from_string(pt, "12"), LabelOutOfRange);
}
