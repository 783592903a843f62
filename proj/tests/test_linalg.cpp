#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "refute/linalg.hpp"
#include "refute/rng.hpp"
#include "test_helpers.hpp"

using namespace refute;
using namespace refute::linalg;
using test_helpers::permanent_naive;

namespace {

IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m.at(i, j) = rows[i][j];
    return m;
}

SymMatrix sym_from_rows(const std::vector<std::vector<double>>& rows) {
    SymMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m.a[static_cast<std::size_t>(i) * m.n + j] = rows[i][j];
    return m;
}

IntMatrix random_int_matrix(int n, Rng& rng, long range = 9) {
    IntMatrix m(n);
    for (auto& v : m.a) v = static_cast<long>(rng.next_below(2 * range + 1)) - range;
    return m;
}

}  // namespace

TEST_CASE("eigenvalues of small known matrices") {
    auto p2 = sym_from_rows({{0, 1}, {1, 0}});
    auto ev = sym_eigenvalues(p2);
    CHECK(ev[0] == doctest::Approx(1).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(-1).epsilon(1e-12));

    // K_4: spectrum 3, -1, -1, -1
    SymMatrix k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) k4.set(i, j, 1);
    ev = sym_eigenvalues(k4);
    CHECK(ev[0] == doctest::Approx(3).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(-1).epsilon(1e-12));

    SymMatrix one(1);
    one.set(0, 0, 42);
    CHECK(sym_eigenvalues(one) == std::vector<double>{42});
}

TEST_CASE("eigenvalue trace identity and permutation invariance") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        SymMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m.set(i, j, 2 * rng.next_double() - 1);
        auto ev = sym_eigenvalues(m);

        double sum = 0;
        for (double v : ev) sum += v;
        CHECK(std::abs(sum - m.trace()) <= 1e-8 * n * std::max(m.max_abs_entry(), 1.0));

        // P m P^T has the same spectrum
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        rng.shuffle(perm);
        SymMatrix pm(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) pm.set(i, j, m.at(perm[i], perm[j]));
        auto ev2 = sym_eigenvalues(pm);
        for (int i = 0; i < n; ++i) CHECK(ev[i] == doctest::Approx(ev2[i]).epsilon(1e-9));
    }
}

TEST_CASE("eigenvalue determinant residual on small matrices") {
    // det(m - lambda I) ~ 0 via simple LU on doubles
    auto float_det = [](std::vector<std::vector<double>> a) {
        const int n = static_cast<int>(a.size());
        double det = 1;
        for (int k = 0; k < n; ++k) {
            int piv = k;
            for (int r = k + 1; r < n; ++r)
                if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
            if (a[piv][k] == 0) return 0.0;
            if (piv != k) {
                std::swap(a[piv], a[k]);
                det = -det;
            }
            det *= a[k][k];
            for (int r = k + 1; r < n; ++r) {
                const double f = a[r][k] / a[k][k];
                for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            }
        }
        return det;
    };
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(5));
        SymMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m.set(i, j, 2 * rng.next_double() - 1);
        for (double lambda : sym_eigenvalues(m)) {
            std::vector<std::vector<double>> shifted(n, std::vector<double>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) shifted[i][j] = m.at(i, j) - (i == j ? lambda : 0.0);
            CHECK(std::abs(float_det(shifted)) < 1e-6);
        }
    }
}

TEST_CASE("charpoly of 1x1 and of known examples") {
    auto p = charpoly_exact(from_rows({{5}}));
    CHECK(p.c == std::vector<BigInt>{5, -1});

    // companion-style check: [[0,1],[1,0]] -> x^2 - 1 (det(m - xI) = x^2 - 1)
    p = charpoly_exact(from_rows({{0, 1}, {1, 0}}));
    CHECK(p.c == std::vector<BigInt>{-1, 0, 1});
}

TEST_CASE("charpoly at x=0 equals determinant; x^{n-1} coefficient carries the trace") {
    Rng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(8));
        auto m = random_int_matrix(n, rng);
        auto p = charpoly_exact(m);
        CHECK(p.eval(0) == det_exact(m));
        // det(m - xI) = (-1)^n (x^n - tr x^{n-1} + ...)
        BigInt expected = m.trace();
        if (n % 2 == 0) expected = -expected;
        BigInt coeff = p.degree() >= n - 1 ? p.c[n - 1] : BigInt(0);
        if (n == 1) coeff = p.c[0] - 0;  // degree-0 coefficient is the constant term itself
        if (n >= 2) CHECK(coeff == expected);
    }
}

TEST_CASE("determinant basics") {
    CHECK(det_exact(IntMatrix::identity(3)) == 1);
    CHECK(det_exact(from_rows({{2, 0}, {0, 3}})) == 6);
    CHECK(det_exact(from_rows({{0, 1}, {1, 0}})) == -1);
    CHECK(det_exact(from_rows({{1, 2}, {2, 4}})) == 0);
    // needs a row swap to get a nonzero pivot
    CHECK(det_exact(from_rows({{0, 1, 2}, {1, 0, 3}, {4, 5, 0}})) == BigInt(22));
}

TEST_CASE("determinant agrees with cofactor expansion on random matrices") {
    // independent route: recursive cofactor expansion
    std::function<BigInt(const IntMatrix&)> cofactor = [&](const IntMatrix& m) -> BigInt {
        if (m.n == 1) return m.at(0, 0);
        BigInt det = 0;
        for (int c = 0; c < m.n; ++c) {
            if (m.at(0, c) == 0) continue;
            IntMatrix sub(m.n - 1);
            for (int i = 1; i < m.n; ++i) {
                int cc = 0;
                for (int j = 0; j < m.n; ++j) {
                    if (j == c) continue;
                    sub.at(i - 1, cc++) = m.at(i, j);
                }
            }
            BigInt term = m.at(0, c) * cofactor(sub);
            det += (c % 2 == 0) ? term : BigInt(-term);
        }
        return det;
    };
    Rng rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(6));
        auto m = random_int_matrix(n, rng);
        CHECK(det_exact(m) == cofactor(m));
    }
}

TEST_CASE("permanent of known matrices") {
    CHECK(permanent(IntMatrix::identity(4)) == 1);

    IntMatrix ones(3);
    for (auto& v : ones.a) v = 1;
    CHECK(permanent(ones) == 6);

    // the 5x5 matrix with permanent 12 (Fibonacci(7) - 1)
    auto m = from_rows({{1, 1, 1, 0, 0},
                        {1, 1, 1, 1, 0},
                        {1, 0, 1, 1, 1},
                        {1, 0, 0, 1, 1},
                        {1, 0, 0, 0, 1}});
    CHECK(permanent(m) == 12);
    CHECK(permanent_serial(m) == 12);
}

TEST_CASE("permanent equals the n!-sum oracle for n <= 5") {
    Rng rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(5));
        auto m = test_helpers::random_01_matrix(n, 0.5, rng);
        const BigInt expect = permanent_naive(m);
        CHECK(permanent(m) == expect);
        CHECK(permanent_serial(m) == expect);
    }
}

TEST_CASE("parallel and serial permanent agree on larger inputs") {
    Rng rng(4242);
    auto m = test_helpers::random_01_matrix(17, 0.45, rng);
    CHECK(permanent(m) == permanent_serial(m));
}

TEST_CASE("permanent input validation") {
    CHECK_THROWS_AS(permanent(IntMatrix(25)), DimensionTooLarge);
    auto bad = from_rows({{2}});
    CHECK_THROWS_AS(permanent(bad), Error);
}

TEST_CASE("matrix text format round-trips") {
    auto m = from_rows({{0, -3, 12}, {7, 0, 1}, {-2, 5, 0}});
    std::stringstream ss;
    write_matrix(ss, m);
    CHECK(ss.str() == "3\n0 -3 12\n7 0 1\n-2 5 0\n");
    auto back = read_matrix(ss);
    CHECK(back == m);
}

TEST_CASE("matrix parse errors carry line numbers") {
    std::istringstream bad_dim("x\n");
    CHECK_THROWS_AS(read_matrix(bad_dim), ParseError);
    std::istringstream short_row("2\n1 2\n3\n");
    try {
        read_matrix(short_row);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line_number == 3);
    }
}

TEST_CASE("exact poly eval and normalization") {
    ExactPoly p(std::vector<BigInt>{BigInt(1), BigInt(2), BigInt(0), BigInt(0)});
    CHECK(p.degree() == 1);
    CHECK(p.eval(3) == 7);
    ExactPoly zero(std::vector<BigInt>{BigInt(0), BigInt(0)});
    CHECK(zero.c == std::vector<BigInt>{0});
}
