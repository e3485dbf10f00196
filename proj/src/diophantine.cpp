#include "qcw/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qcw {

double signed_remainder(double x) {
    double frac = x - std::floor(x);  // in [0, 1)
    return frac <= 0.5 ? frac : frac - 1.0;
}

double nearest_int_distance(double x) { return std::abs(signed_remainder(x)); }

i64 signed_residue(i64 a, i64 q) {
    i64 t = norm_mod(a, q);
    return 2 * t <= q ? t : t - q;
}

namespace {

void require_coprime_triple(i64 q, i64 a1, i64 a2, i64 a3, const char* who) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument(std::string(who) + ": q must be odd and >= 3");
    for (i64 a : {a1, a2, a3})
        if (gcd64(norm_mod(a, q), q) != 1)
            throw std::invalid_argument(std::string(who) + ": coefficients must be coprime to q");
}

void finalize_report(ConjectureReport& rep) {
    const double q = static_cast<double>(rep.q);
    i128 b3 = static_cast<i128>(rep.max_abs_beta_num);
    b3 = b3 * rep.max_abs_beta_num * rep.max_abs_beta_num;
    rep.floor_dominates = b3 >= rep.q;
    double base = rep.floor_dominates
                      ? std::cbrt(q)
                      : std::sqrt(q / static_cast<double>(rep.max_abs_beta_num));
    rep.rhs_value = std::pow(q, rep.epsilon) * base;
}

}  // namespace

ConjectureReport conjecture_rhs_full(i64 q, i64 alpha1, i64 alpha2, i64 alpha3, double epsilon) {
    require_coprime_triple(q, alpha1, alpha2, alpha3, "conjecture_rhs_full");
    ConjectureReport rep;
    rep.q = q;
    rep.alpha = {norm_mod(alpha1, q), norm_mod(alpha2, q), norm_mod(alpha3, q)};
    rep.epsilon = epsilon;

    // maximizing min_i ||r a_i / q||^(-1/2) is minimizing B(r) = max_i |b_i|
    i64 best_b = q;  // larger than any achievable max|b_i| <= (q-1)/2
    for (i64 r = 1; r < q; ++r) {
        i64 b1 = signed_residue(mul_mod(r, rep.alpha[0], q), q);
        i64 b2 = signed_residue(mul_mod(r, rep.alpha[1], q), q);
        i64 b3 = signed_residue(mul_mod(r, rep.alpha[2], q), q);
        i64 big = std::max({std::abs(b1), std::abs(b2), std::abs(b3)});
        if (big < best_b) {
            best_b = big;
            rep.argmax_r = r;
            rep.beta_nums = {b1, b2, b3};
        }
    }
    rep.max_abs_beta_num = best_b;
    finalize_report(rep);
    return rep;
}

ConjectureReport conjecture_rhs_fast(i64 q, i64 alpha2, i64 alpha3, double epsilon) {
    require_coprime_triple(q, 1, alpha2, alpha3, "conjecture_rhs_fast");
    ConjectureReport rep;
    rep.q = q;
    rep.alpha = {1, norm_mod(alpha2, q), norm_mod(alpha3, q)};
    rep.epsilon = epsilon;

    i64 best_b = q;
    for (i64 r = 1; r * r * r < q; ++r) {
        // for r < q^(1/3) <= q/2 the first remainder is r itself
        i64 b2 = signed_residue(mul_mod(r, rep.alpha[1], q), q);
        i64 b3 = signed_residue(mul_mod(r, rep.alpha[2], q), q);
        i64 big = std::max({r, std::abs(b2), std::abs(b3)});
        if (big < best_b) {
            best_b = big;
            rep.argmax_r = r;
            rep.beta_nums = {r, b2, b3};
        }
    }
    rep.max_abs_beta_num = best_b;
    finalize_report(rep);
    return rep;
}

ReductionVerdict heuristic_reduction(i64 q, i64 alpha1, i64 alpha2, i64 alpha3, i64 r, i64 n_box) {
    require_coprime_triple(q, alpha1, alpha2, alpha3, "heuristic_reduction");
    if (norm_mod(r, q) == 0) throw std::invalid_argument("heuristic_reduction: r = 0 mod q");
    if (n_box < 1) throw std::invalid_argument("heuristic_reduction: N must be >= 1");

    ReductionVerdict verdict;
    i64 rr = norm_mod(r, q);
    for (int i = 0; i < 3; ++i) {
        i64 a = norm_mod(i == 0 ? alpha1 : (i == 1 ? alpha2 : alpha3), q);
        verdict.beta_nums[i] = signed_residue(mul_mod(rr, a, q), q);
    }
    auto [b1, b2, b3] = verdict.beta_nums;
    bool same_sign = (b1 > 0 && b2 > 0 && b3 > 0) || (b1 < 0 && b2 < 0 && b3 < 0);
    // max|beta_i| < 1/(3N^2)  <=>  3 N^2 max|b_i| < q, exactly
    i128 lhs = static_cast<i128>(3) * n_box * n_box * std::max({std::abs(b1), std::abs(b2), std::abs(b3)});
    verdict.applies = same_sign && lhs < q;
    return verdict;
}

ExceptionalAlphaCount exceptional_alpha_count(i64 q) {
    if (q < 3 || q % 2 == 0)
        throw std::invalid_argument("exceptional_alpha_count: q must be odd and >= 3");
    i64 bmax = 0;  // largest |b| with |b|^3 < q
    while ((bmax + 1) * (bmax + 1) * (bmax + 1) < q) ++bmax;

    std::set<i64> hits;
    for (i64 r = 1; r * r * r < q; ++r) {
        i64 g = gcd64(r, q);
        i64 qg = q / g;
        i64 rinv = inv_mod(r / g, qg);
        for (i64 b = -bmax; b <= bmax; ++b) {
            if (b == 0 || b % g != 0) continue;  // r*alpha = b solvable iff g | b
            i64 base = mul_mod(norm_mod(b / g, qg), rinv, qg);
            for (i64 t = 0; t < g; ++t) {
                i64 alpha = base + t * qg;
                if (alpha == 0) alpha = q;
                if (gcd64(alpha, q) == 1) hits.insert(alpha);
            }
        }
    }
    ExceptionalAlphaCount out;
    out.count = static_cast<i64>(hits.size());
    if (q <= 100000) out.values.assign(hits.begin(), hits.end());
    return out;
}

}  // namespace qcw
