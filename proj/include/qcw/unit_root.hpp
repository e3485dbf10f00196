#pragma once

// Exact roots of unity as rational angles: e(k/m) stored as the reduced
// fraction k/m in [0,1), with a separate zero flag for character values at
// non-units. Products and powers act on the angle; conversion to complex
// happens only when a sum is accumulated.

#include <cmath>
#include <complex>

#include "qcw/arith.hpp"

namespace qcw {

struct UnitRoot {
    i64 num = 0;  // angle numerator, 0 <= num < den
    i64 den = 1;
    bool zero = false;

    static UnitRoot one() { return UnitRoot{}; }
    static UnitRoot zero_value() { return UnitRoot{0, 1, true}; }

    /// e(k/m); k is reduced mod m and the fraction is put in lowest terms.
    static UnitRoot from_angle(i64 k, i64 m) {
        k = norm_mod(k, m);
        i64 g = gcd64(k, m);
        if (g == 0) g = 1;
        return UnitRoot{k / g, m / g, false};
    }

    UnitRoot operator*(const UnitRoot& o) const {
        if (zero || o.zero) return zero_value();
        i64 g = gcd64(den, o.den);
        i64 l = den / g * o.den;
        return from_angle(num * (l / den) + o.num * (l / o.den), l);
    }

    UnitRoot pow(i64 k) const {
        if (zero) return zero_value();
        i64 kk = norm_mod(k % den, den);
        return from_angle((i64)(((i128)num * kk) % den), den);
    }

    UnitRoot conj() const {
        if (zero) return zero_value();
        return from_angle(-num, den);
    }

    bool operator==(const UnitRoot& o) const {
        if (zero || o.zero) return zero == o.zero;
        return num == o.num && den == o.den;
    }
    bool operator!=(const UnitRoot& o) const { return !(*this == o); }

    bool is_one() const { return !zero && num == 0; }

    std::complex<double> to_complex() const {
        if (zero) return {0.0, 0.0};
        if (num == 0) return {1.0, 0.0};
        if (den == 2) return {-1.0, 0.0};
        if (den == 4) return {0.0, num == 1 ? 1.0 : -1.0};
        double ang = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(ang), std::sin(ang)};
    }
};

}  // namespace qcw
