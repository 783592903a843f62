#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace refute {

// Arbitrary-precision integers and rationals are GMP-backed.
using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt bigint_pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt bigint_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(u >> 64));
    BigInt lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    BigInt r = (hi << 64) + lo;
    return neg ? BigInt(-r) : r;
}

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const BigRat& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return s;
}

}  // namespace refute
