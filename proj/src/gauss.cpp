#include "qcw/gauss.hpp"

#include <cmath>
#include <vector>

namespace qcw {

namespace {

void require_odd_squarefree(i64 c, const char* who) {
    if (c < 1 || c % 2 == 0) throw std::invalid_argument(std::string(who) + ": c must be odd and positive");
    for (auto& [p, e] : factorize(c))
        if (e > 1) throw std::invalid_argument(std::string(who) + ": c must be squarefree");
}

}  // namespace

UnitRoot gauss_epsilon(i64 c) {
    if (c < 1 || c % 2 == 0) throw std::invalid_argument("gauss_epsilon: c must be odd and positive");
    return c % 4 == 1 ? UnitRoot::one() : UnitRoot::from_angle(1, 4);
}

GaussValue gauss_sum(i64 a, i64 c, GaussMethod method) {
    require_odd_squarefree(c, "gauss_sum");
    if (method == GaussMethod::ClosedForm) {
        if (gcd64(a, c) != 1)
            throw std::invalid_argument("gauss_sum: closed form needs gcd(a,c) = 1");
        std::complex<double> eps = gauss_epsilon(c).to_complex();
        return {static_cast<double>(jacobi_symbol(a, c)) * eps * std::sqrt(static_cast<double>(c)),
                GaussMethod::ClosedForm};
    }
    std::complex<double> acc(0.0, 0.0);
    for (i64 n = 1; n <= c; ++n) {
        i64 an2 = mul_mod(a % c, mul_mod(n, n, c), c);
        acc += UnitRoot::from_angle(an2, c).to_complex();
    }
    return {acc, GaussMethod::Direct};
}

std::complex<double> jacobi_via_gauss(i64 n, i64 c) {
    if (c < 3) throw std::invalid_argument("jacobi_via_gauss: c must be >= 3");
    require_odd_squarefree(c, "jacobi_via_gauss");
    std::complex<double> acc(0.0, 0.0);
    for (i64 k = 1; k <= c; ++k) {
        int j = jacobi_symbol(k, c);
        if (j == 0) continue;
        acc += static_cast<double>(j) * UnitRoot::from_angle(mul_mod(norm_mod(n, c), k, c), c).to_complex();
    }
    return acc / (gauss_epsilon(c).to_complex() * std::sqrt(static_cast<double>(c)));
}

i64 t_sum(i64 q1, i64 alpha2) {
    if (q1 <= 1) throw std::invalid_argument("t_sum: q1 must be > 1");
    require_odd_squarefree(q1, "t_sum");
    if (gcd64(alpha2, q1) != 1) throw std::invalid_argument("t_sum: alpha2 not coprime to q1");

    std::vector<std::int8_t> jac(q1);
    for (i64 s = 0; s < q1; ++s) jac[s] = static_cast<std::int8_t>(jacobi_symbol(s, q1));
    std::vector<i64> sq(q1);
    for (i64 a = 0; a < q1; ++a) sq[a] = mul_mod(a, a, q1);

    i64 total = 0;
    for (i64 a2 = 0; a2 < q1; ++a2) {
        i64 shift = mul_mod(norm_mod(alpha2, q1), sq[a2], q1);
        i64 acc = 0;
        for (i64 a1 = 0; a1 < q1; ++a1) {
            i64 t = sq[a1] + shift;
            if (t >= q1) t -= q1;
            acc += jac[t];
        }
        total += acc;
    }
    return total;
}

}  // namespace qcw
