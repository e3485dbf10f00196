#pragma once

// Quadratic Gauss sums G(a,c) = sum_{n=1}^{c} e(a n^2 / c) for odd squarefree
// c, their closed form (a/c) * eps_c * sqrt(c), the finite-Fourier expansion
// of the Jacobi symbol, and the complete two-variable Jacobi sum
// T(q1) = sum_{a1,a2 mod q1} ((a1^2 + alpha2 a2^2)/q1), which vanishes.

#include <complex>

#include "qcw/arith.hpp"
#include "qcw/unit_root.hpp"

namespace qcw {

enum class GaussMethod { Direct, ClosedForm };

struct GaussValue {
    std::complex<double> value;
    GaussMethod method = GaussMethod::Direct;
};

/// eps_c: 1 when c = 1 mod 4, i when c = 3 mod 4. Rejects even c.
UnitRoot gauss_epsilon(i64 c);

/// G(a,c) for odd squarefree c >= 1. The direct method sums n = 1..c with
/// exact angle reduction; the closed form requires gcd(a,c) = 1.
GaussValue gauss_sum(i64 a, i64 c, GaussMethod method);

/// Right-hand side of the Jacobi/Gauss relation:
/// (1/(eps_c sqrt(c))) * sum_{k=1}^{c} (k/c) e(nk/c). Equals (n/c).
std::complex<double> jacobi_via_gauss(i64 n, i64 c);

/// T(q1) = sum over all residue pairs (a1,a2) mod q1 of ((a1^2+alpha2*a2^2)/q1).
/// Integer-exact; vanishes for every odd squarefree q1 > 1 with gcd(alpha2,q1)=1.
i64 t_sum(i64 q1, i64 alpha2);

}  // namespace qcw
