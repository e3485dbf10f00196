#pragma once

// Nearest-integer norms and the refined height-bound experiments: the
// conjectured bound q^eps * max{q^(1/3), max_r min_i ||r*alpha_i/q||^(-1/2)}
// with its full and restricted-r scans, the sign-certificate reduction that
// certifies non-existence of small solutions, and the count of alpha3 for
// which a small denominator spoils the q^(1/3) regime.

#include <array>
#include <vector>

#include "qcw/arith.hpp"

namespace qcw {

/// Distance from x to the nearest integer, in [0, 1/2].
double nearest_int_distance(double x);

/// x minus its nearest integer, in (-1/2, 1/2], ties going to +1/2.
double signed_remainder(double x);

/// The representative of a mod q in (-q/2, q/2]; b/q is then the exact
/// signed remainder of a/q. For odd q the tie cannot occur.
i64 signed_residue(i64 a, i64 q);

struct ConjectureReport {
    i64 q = 0;
    std::array<i64, 3> alpha{1, 1, 1};
    double epsilon = 0;
    double rhs_value = 0;          // q^eps * max(q^(1/3), sqrt(q / B))
    bool floor_dominates = false;  // q^(1/3) won the max (exact: B^3 >= q)
    i64 argmax_r = 0;              // smallest r attaining the max over the scan
    i64 max_abs_beta_num = 0;      // B = max_i |b_i| at argmax_r
    std::array<i64, 3> beta_nums{0, 0, 0};  // signed b_i; beta_i = b_i / q
};

/// Scans every r in [1, q-1]. All comparisons on the maximized quantity are
/// exact (they reduce to integer comparisons of q and B^3); only rhs_value
/// is a double.
ConjectureReport conjecture_rhs_full(i64 q, i64 alpha1, i64 alpha2, i64 alpha3, double epsilon);

/// The alpha1 = 1 form: scans only 1 <= r < q^(1/3) using
/// min{(q/r)^(1/2), ||r*alpha2/q||^(-1/2), ||r*alpha3/q||^(-1/2)}.
/// Agrees exactly with conjecture_rhs_full(q, 1, alpha2, alpha3, eps).
ConjectureReport conjecture_rhs_fast(i64 q, i64 alpha2, i64 alpha3, double epsilon);

struct ReductionVerdict {
    bool applies = false;  // true: no nontrivial solution of height <= N exists
    std::array<i64, 3> beta_nums{0, 0, 0};  // certificate, beta_i = b_i / q
};

/// Multiplying the congruence by r turns it into
/// b1*x1^2 + b2*x2^2 + b3*x3^2 = 0 (mod q) with b_i = q*beta_i. When the b_i
/// share one strict sign and max|beta_i| < 1/(3N^2), the left side cannot
/// reach a nonzero multiple of q in the box, so only the zero triple remains.
ReductionVerdict heuristic_reduction(i64 q, i64 alpha1, i64 alpha2, i64 alpha3, i64 r, i64 n_box);

struct ExceptionalAlphaCount {
    i64 count = 0;
    std::vector<i64> values;  // populated only when q <= 10^5
};

/// Number of alpha3 in [1,q] coprime to q with
/// max_{1 <= r < q^(1/3)} ||r*alpha3/q||^(-1/2) > q^(1/3), found by inverting
/// r*alpha3 = b (mod q) over the small (r, b) grid.
ExceptionalAlphaCount exceptional_alpha_count(i64 q);

}  // namespace qcw
