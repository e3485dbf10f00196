#pragma once

// Exact integer arithmetic substrate: factorization, multiplicative
// functions, Jacobi symbols, and a small exact rational type. Everything
// here is a pure function of its inputs; no shared mutable state.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcw {

using i64 = std::int64_t;
using i128 = __int128;

// ---------------------------------------------------------------------------
// low-level modular helpers
// ---------------------------------------------------------------------------

constexpr i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<i128>(a) * b) % m);
}

i64 pow_mod(i64 base, i64 exp, i64 m);

i64 gcd64(i64 a, i64 b);
i128 gcd128(i128 a, i128 b);

/// Modular inverse of a mod m; throws std::invalid_argument if gcd(a,m) != 1.
i64 inv_mod(i64 a, i64 m);

/// x mod m normalized to [0, m).
constexpr i64 norm_mod(i64 x, i64 m) {
    i64 r = x % m;
    return r < 0 ? r + m : r;
}

/// Floor division (round toward -infinity).
constexpr i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// Combine residues x = r_i mod m_i for pairwise coprime moduli.
/// Returns the unique x in [0, prod m_i).
i64 crt_combine(const std::vector<std::pair<i64, i64>>& congruences);

// ---------------------------------------------------------------------------
// primality and factorization
// ---------------------------------------------------------------------------

/// Deterministic Miller-Rabin, valid for all n < 2^63.
bool is_prime(i64 n);

/// Prime factorization of n, 1 <= n <= 2^62, as (prime, exponent) pairs with
/// strictly increasing primes. factorize(1) == {}. Trial division below 10^6,
/// then Miller-Rabin plus Pollard rho for the remaining cofactor.
std::vector<std::pair<i64, int>> factorize(i64 n);

// ---------------------------------------------------------------------------
// multiplicative functions
// ---------------------------------------------------------------------------

i64 euler_phi(i64 n);
int mobius(i64 n);
i64 radical(i64 n);
std::vector<i64> divisors(i64 n);  // sorted ascending

/// Jacobi symbol (a/c) for odd c >= 1. Zero iff gcd(a,c) > 1.
int jacobi_symbol(i64 a, i64 c);

// ---------------------------------------------------------------------------
// Modulus: an odd q >= 3 with its multiplicative data
// ---------------------------------------------------------------------------

struct Modulus {
    i64 q = 0;
    std::vector<std::pair<i64, int>> factors;  // (p, e), p odd, increasing
    i64 phi = 0;
    i64 rad = 0;

    static Modulus make(i64 q);

    int omega() const { return static_cast<int>(factors.size()); }
    bool squarefree() const {
        for (auto& [p, e] : factors)
            if (e > 1) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Rational: exact fraction on 128-bit integers, always reduced, den > 0.
// Carries solution counts and main terms exactly; converted to double only
// at reporting time.
// ---------------------------------------------------------------------------

struct Rational {
    i128 num = 0;
    i128 den = 1;

    Rational() = default;
    Rational(i128 n, i128 d = 1);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    bool is_zero() const { return num == 0; }
    double to_double() const;
    std::string to_string() const;  // "num/den", or "num" when den == 1
};

std::string i128_to_string(i128 v);

}  // namespace qcw
