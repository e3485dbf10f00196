#pragma once

// Variance of the solution count over alpha3: V = sum over alpha3 in Phi(q)
// of (S(alpha3) - M)^2, computed both directly and through the character-sum
// split V = V1 + V2, where V1 collects the order-2 (Jacobi) characters and
// V2 everything else. Also the Jacobi-twisted box sum L(q1) and the
// exceptional-alpha3 scan for the almost-all statement.

#include <optional>
#include <vector>

#include "qcw/arith.hpp"
#include "qcw/convolution.hpp"

namespace qcw {

/// Deterministic pairwise (cascade) summation; independent of thread count.
double pairwise_sum(const std::vector<double>& terms);

double variance_direct(const Modulus& mod, i64 alpha2, i64 n_box,
                       ConvBackend backend = ConvBackend::Auto);

struct VarianceSplit {
    double v1 = 0;  // order-2 character contribution
    double v2 = 0;  // characters with chi^2 != chi0
};

VarianceSplit variance_split(const Modulus& mod, i64 alpha2, i64 n_box,
                             ConvBackend backend = ConvBackend::Auto);

/// L(q1) = sum_{|x1|,|x2|<=N, (x1^2+alpha2*x2^2, q2)=1} ((x1^2+alpha2*x2^2)/q1)
/// with q1*q2 squarefree and coprime (q1*q2 = rad(q) in context). Integer.
i64 l_sum(i64 q1, i64 q2, i64 alpha2, i64 n_box, ConvBackend backend = ConvBackend::Auto);

struct ExceptionalScan {
    double fraction = 0;
    std::vector<i64> exceptional;  // the alpha3 values beyond the threshold
    i64 scanned = 0;
    bool sampled = false;
};

/// Fraction of scanned alpha3 in Phi(q) with |S(alpha3)/M - 1| > delta,
/// using the exact main term M. sample_size empty means scan all of Phi(q);
/// otherwise that many distinct alpha3 are drawn with the seeded generator.
ExceptionalScan exceptional_fraction(const Modulus& mod, i64 alpha2, i64 n_box, double delta,
                                     std::optional<i64> sample_size = std::nullopt,
                                     std::uint64_t seed = 0,
                                     ConvBackend backend = ConvBackend::Auto);

struct VarianceReport {
    i64 q = 0;
    i64 alpha2 = 0;
    i64 n_box = 0;
    double epsilon = 0;
    double delta = 0;       // q^(-epsilon)
    double v = 0, v1 = 0, v2 = 0;
    double target = 0;      // delta * N^6 / q
    double ratio_v = 0, ratio_v1 = 0, ratio_v2 = 0;
    struct LTerm {
        i64 q1 = 0;
        i64 value = 0;             // L(q1)
        double ratio_coarse = 0;   // |L| / (N * q1^2 * q^eps)
        double ratio_target = 0;   // |L| / (delta^(1/2) * N^2 * q^(-eps))
    };
    std::vector<LTerm> l_terms;
    double deviation_threshold = 0;  // the relative threshold behind the list below
    double exceptional_fraction = 0;
    std::vector<i64> exceptional;    // alpha3 with |S/M - 1| above the threshold
};

/// Report-only comparison of V, V1, V2 and each L(q1) against the
/// Delta = q^(-epsilon) targets, plus the exceptional-alpha3 scan at the given
/// relative threshold. Implied constants are unknown, so nothing here passes
/// or fails; ratios are just recorded.
VarianceReport variance_bound_report(const Modulus& mod, i64 alpha2, i64 n_box, double epsilon,
                                     double deviation_threshold = 0.2,
                                     ConvBackend backend = ConvBackend::Auto);

}  // namespace qcw
