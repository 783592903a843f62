#pragma once

#include <iosfwd>
#include <vector>

#include "refute/errors.hpp"
#include "refute/numeric.hpp"

namespace refute::linalg {

// Single tolerance used by every downstream floating eigenvalue comparison
// (reward thresholds, verification checks).
inline constexpr double kEigenTol = 1e-9;

// Dense symmetric matrix of doubles. The symmetric setter keeps the
// invariant a[i][j] == a[j][i] by construction.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;  // row-major n*n

    SymMatrix() = default;
    explicit SymMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}

    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    void set(int i, int j, double v) {
        a[static_cast<std::size_t>(i) * n + j] = v;
        a[static_cast<std::size_t>(j) * n + i] = v;
    }
    double trace() const;
    double max_abs_entry() const;
};

// Dense square matrix of arbitrary-precision integers.
struct IntMatrix {
    int n = 0;
    std::vector<BigInt> a;  // row-major n*n

    IntMatrix() = default;
    explicit IntMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, BigInt(0)) {}

    BigInt& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const BigInt& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static IntMatrix identity(int dim);
    BigInt trace() const;
    bool operator==(const IntMatrix&) const = default;

    SymMatrix to_sym() const;  // requires symmetric integer entries
};

// Integer-coefficient polynomial; c[k] is the coefficient of x^k. The zero
// polynomial is represented as {0}.
struct ExactPoly {
    std::vector<BigInt> c;

    ExactPoly() : c{BigInt(0)} {}
    explicit ExactPoly(std::vector<BigInt> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    BigInt eval(const BigInt& x) const;
    bool operator==(const ExactPoly&) const = default;
    std::string to_string() const;
};

// All eigenvalues, sorted descending. Cyclic Jacobi with off-diagonal
// Frobenius threshold 1e-12 * ||m||_F, capped at 100 sweeps.
std::vector<double> sym_eigenvalues(const SymMatrix& m);

// Exact coefficients of det(m - xI) via Faddeev-LeVerrier; the division by k
// at step k is exact over the integers.
ExactPoly charpoly_exact(const IntMatrix& m);

// Exact determinant via Bareiss fraction-free elimination.
BigInt det_exact(IntMatrix m);

// Exact permanent of a 0/1 matrix via Ryser's formula with Gray-code subset
// enumeration; n <= 24. OpenMP-chunked; permanent_serial is the serial
// reference kept for tests and benchmarks (identical output required).
BigInt permanent(const IntMatrix& m);
BigInt permanent_serial(const IntMatrix& m);

namespace detail {
// Same kernel with a caller-chosen dimension cap (<= 26, where the signed
// 128-bit accumulator still has headroom). The public entry points keep the
// documented n <= 24 contract.
BigInt ryser_permanent(const IntMatrix& m, int limit);
}  // namespace detail

// Matrix text format (shared repo-wide): first line n, then n lines of n
// space-separated integers, newline-terminated, no trailing whitespace.
void write_matrix(std::ostream& os, const IntMatrix& m);
IntMatrix read_matrix(std::istream& is);

}  // namespace refute::linalg
