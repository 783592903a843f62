#pragma once

#include <stdexcept>
#include <string>

namespace refute {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Disconnected : Error {
    Disconnected() : Error("graph is disconnected") {}
};

struct NotATree : Error {
    NotATree() : Error("graph is not a tree") {}
};

struct NotDivisible : Error {
    NotDivisible(int n, int d)
        : Error("d must divide n (got n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")") {}
};

struct LabelOutOfRange : Error {
    LabelOutOfRange(int label, int n)
        : Error("label " + std::to_string(label) + " out of range [0," + std::to_string(n) + ")") {}
};

struct DimensionTooLarge : Error {
    DimensionTooLarge(int n, int limit)
        : Error("dimension " + std::to_string(n) + " exceeds limit " + std::to_string(limit)) {}
};

struct DimMismatch : Error {
    DimMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

struct WordComplete : Error {
    WordComplete() : Error("word is already complete") {}
};

struct IncompleteWord : Error {
    IncompleteWord(std::size_t got, std::size_t want)
        : Error("word has " + std::to_string(got) + " letters, expected " + std::to_string(want)) {}
};

struct EmptyBatch : Error {
    EmptyBatch() : Error("batch is empty") {}
};

struct NonfiniteGradient : Error {
    NonfiniteGradient() : Error("gradient contains a non-finite value") {}
};

struct MissingData : Error {
    MissingData(const std::string& path) : Error("missing data file: " + path) {}
};

struct ParseError : Error {
    ParseError(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    int line_number;
};

}  // namespace refute
