#include "refute/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace refute::linalg {

double SymMatrix::trace() const {
    double t = 0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

double SymMatrix::max_abs_entry() const {
    double m = 0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

IntMatrix IntMatrix::identity(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

BigInt IntMatrix::trace() const {
    BigInt t = 0;
    for (int i = 0; i < n; ++i) t += at(i, i);
    return t;
}

SymMatrix IntMatrix::to_sym() const {
    SymMatrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            assert(at(i, j) == at(j, i));
            s.a[static_cast<std::size_t>(i) * n + j] = at(i, j).get_d();
        }
    return s;
}

ExactPoly::ExactPoly(std::vector<BigInt> coeffs) : c(std::move(coeffs)) {
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.empty()) c.push_back(BigInt(0));
}

BigInt ExactPoly::eval(const BigInt& x) const {
    BigInt r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

std::string ExactPoly::to_string() const {
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += " ";
        s += c[k].get_str();
    }
    return s;
}

std::vector<double> sym_eigenvalues(const SymMatrix& m) {
    const int n = m.n;
    std::vector<double> a = m.a;
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    double frob = 0;
    for (double v : a) frob += v * v;
    frob = std::sqrt(frob);
    const double threshold = 1e-12 * frob;

    for (int sweep = 0; sweep < 100 && n > 1; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2 * at(i, j) * at(i, j);
        if (std::sqrt(off) <= threshold) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double tau = (at(q, q) - at(p, p)) / (2 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1 / std::sqrt(1 + t * t);
                const double s = t * c;

                const double app = at(p, p), aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0;
                at(q, p) = 0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(p, k) = at(k, p);
                    at(k, q) = s * akp + c * akq;
                    at(q, k) = at(k, q);
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

ExactPoly charpoly_exact(const IntMatrix& m) {
    const int n = m.n;
    // Faddeev-LeVerrier on p(x) = det(xI - m) = x^n + c[n-1] x^{n-1} + ... + c[0]:
    //   M_1 = m, c[n-1] = -tr(M_1), M_k = m(M_{k-1} + c[n-k+1] I), c[n-k] = -tr(M_k)/k.
    std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
    c[n] = 1;
    IntMatrix M = m;
    c[n - 1] = -M.trace();
    for (int k = 2; k <= n; ++k) {
        IntMatrix next(n);
        for (int i = 0; i < n; ++i) M.at(i, i) += c[n - k + 1];
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                const BigInt& mil = m.at(i, l);
                if (mil == 0) continue;
                for (int j = 0; j < n; ++j) next.at(i, j) += mil * M.at(l, j);
            }
        M = std::move(next);
        BigInt tr = M.trace();
        BigInt q;
        mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = -q;
    }
    // det(m - xI) = (-1)^n det(xI - m)
    if (n % 2 != 0)
        for (auto& v : c) v = -v;
    return ExactPoly(std::move(c));
}

BigInt det_exact(IntMatrix m) {
    const int n = m.n;
    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            int r = k + 1;
            while (r < n && m.at(r, k) == 0) ++r;
            if (r == n) return BigInt(0);
            for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(r, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                BigInt v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m.at(i, j) = std::move(v);
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    BigInt d = m.at(n - 1, n - 1);
    return sign < 0 ? BigInt(-d) : d;
}

namespace {

// Ryser over one Gray-code chunk [lo, hi) of subset counters. Row sums stay
// <= n <= 24, so each product fits well inside __int128: the worst-case
// accumulated magnitude sum_k C(24,k) k^24 is below 2e36 < 2^127.
__int128 ryser_chunk(const std::vector<std::uint32_t>& rows, int n, std::uint64_t lo, std::uint64_t hi) {
    std::vector<int> rowsum(n, 0);
    const std::uint64_t gray_lo = lo ^ (lo >> 1);
    for (int i = 0; i < n; ++i) rowsum[i] = __builtin_popcount(rows[i] & static_cast<std::uint32_t>(gray_lo));

    __int128 acc = 0;
    std::uint64_t gray = gray_lo;
    for (std::uint64_t k = lo; k < hi; ++k) {
        if (k != lo) {
            const int bit = __builtin_ctzll(k);
            const std::uint32_t mask = 1u << bit;
            const int delta = (gray & mask) ? -1 : 1;
            gray ^= mask;
            for (int i = 0; i < n; ++i)
                if (rows[i] & mask) rowsum[i] += delta;
        }
        __int128 prod = 1;
        for (int i = 0; i < n; ++i) {
            if (rowsum[i] == 0) {
                prod = 0;
                break;
            }
            prod *= rowsum[i];
        }
        acc += (__builtin_popcountll(gray) & 1) ? -prod : prod;
    }
    return acc;
}

std::vector<std::uint32_t> row_bitmasks(const IntMatrix& m, int limit) {
    if (m.n > limit) throw DimensionTooLarge(m.n, limit);
    std::vector<std::uint32_t> rows(m.n, 0);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            const BigInt& v = m.at(i, j);
            if (v != 0 && v != 1) throw Error("permanent requires 0/1 entries");
            if (v == 1) rows[i] |= 1u << j;
        }
    return rows;
}

BigInt ryser(const std::vector<std::uint32_t>& rows, int n, bool parallel) {
    const std::uint64_t total = 1ull << n;
    int chunks = 1;
#ifdef _OPENMP
    if (parallel && n >= 12) chunks = std::min<int>(4 * omp_get_max_threads(), 256);
#else
    (void)parallel;
#endif
    std::vector<__int128> partial(chunks, 0);
    const std::uint64_t step = (total - 1) / chunks + 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (chunks > 1)
#endif
    for (int c = 0; c < chunks; ++c) {
        const std::uint64_t lo = std::max<std::uint64_t>(1, 1 + c * step);
        const std::uint64_t hi = std::min<std::uint64_t>(total, 1 + (c + 1ull) * step);
        if (lo < hi) partial[c] = ryser_chunk(rows, n, lo, hi);
    }
    __int128 acc = 0;
    for (__int128 p : partial) acc += p;
    if (n % 2 != 0) acc = -acc;
    return bigint_from_i128(acc);
}

}  // namespace

BigInt permanent(const IntMatrix& m) { return ryser(row_bitmasks(m, 24), m.n, true); }

BigInt permanent_serial(const IntMatrix& m) { return ryser(row_bitmasks(m, 24), m.n, false); }

namespace detail {

BigInt ryser_permanent(const IntMatrix& m, int limit) {
    return ryser(row_bitmasks(m, std::min(limit, 26)), m.n, true);
}

}  // namespace detail

void write_matrix(std::ostream& os, const IntMatrix& m) {
    os << m.n << "\n";
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            if (j) os << ' ';
            os << m.at(i, j).get_str();
        }
        os << "\n";
    }
}

IntMatrix read_matrix(std::istream& is) {
    std::string line;
    int lineno = 1;
    if (!std::getline(is, line)) throw ParseError("expected matrix dimension", lineno);
    int n = 0;
    try {
        n = std::stoi(line);
    } catch (...) {
        throw ParseError("bad matrix dimension '" + line + "'", lineno);
    }
    if (n < 1) throw ParseError("matrix dimension must be >= 1", lineno);
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) {
        ++lineno;
        if (!std::getline(is, line)) throw ParseError("unexpected end of matrix", lineno);
        std::istringstream row(line);
        std::string tok;
        for (int j = 0; j < n; ++j) {
            if (!(row >> tok)) throw ParseError("row has fewer than n entries", lineno);
            try {
                m.at(i, j) = BigInt(tok);
            } catch (...) {
                throw ParseError("bad integer '" + tok + "'", lineno);
            }
        }
        if (row >> tok) throw ParseError("row has more than n entries", lineno);
    }
    return m;
}

}  // namespace refute::linalg
