#pragma once

// Counting solutions of x1^2 + alpha2*x2^2 + alpha3*x3^2 = 0 (mod q) in the
// box max|x_i| <= N, the exact main term M = K*L/phi(q), the local density
// C_q, error terms, and smallest-solution shell search.

#include <optional>

#include "qcw/arith.hpp"
#include "qcw/convolution.hpp"

namespace qcw {

enum class CountMode {
    CoprimeX3,   // (x3, q) = 1
    CoprimeAll,  // (x1 x2 x3, q) = 1
    Nontrivial,  // (x1, x2, x3) != (0, 0, 0)
};

const char* count_mode_name(CountMode mode);
std::optional<CountMode> count_mode_from_name(const std::string& name);

struct TernaryForm {
    Modulus mod;
    i64 alpha2 = 1;  // coefficients after normalizing alpha1 to 1
    i64 alpha3 = 1;

    /// Validates gcd(alpha1*alpha2*alpha3, q) = 1, then divides through by alpha1.
    static TernaryForm make(const Modulus& mod, i64 alpha1, i64 alpha2, i64 alpha3);
    static TernaryForm make(i64 q, i64 alpha2, i64 alpha3) {
        return make(Modulus::make(q), 1, alpha2, alpha3);
    }
};

struct MainTerm {
    i64 k_pairs = 0;    // K: pairs (x1,x2) with (x1^2+alpha2*x2^2, q) = 1
    i64 l_line = 0;     // L: x3 with |x3| <= N and (x3, q) = 1
    Rational value;     // M = K*L / phi(q)
};

struct SolutionStats {
    i64 q = 0;
    i64 alpha2 = 0;
    i64 alpha3 = 0;
    i64 n_box = 0;
    CountMode mode = CountMode::CoprimeX3;
    i64 count = 0;      // S(alpha3)
    Rational main;      // M (exact)
    double error = 0;   // E(alpha3) = S - M
};

// ---------------------------------------------------------------------------
// SolutionScan: the reusable per-(q, alpha2, N, mode) tables. The pair
// histogram D is computed once (one cyclic convolution); each alpha3 then
// costs one O(q) pass, which is what makes full alpha3 scans O(q^2) total.
// Immutable after construction; safe to share across threads.
// ---------------------------------------------------------------------------

class SolutionScan {
  public:
    SolutionScan(const Modulus& mod, i64 alpha2, i64 n_box, CountMode mode,
                 ConvBackend backend = ConvBackend::Auto);

    i64 count(i64 alpha3) const;  // S(alpha3); requires gcd(alpha3, q) = 1

    const Modulus& modulus() const { return mod_; }
    i64 alpha2() const { return alpha2_; }
    i64 n_box() const { return n_box_; }
    CountMode mode() const { return mode_; }

    /// Exact main term; only defined for CountMode::CoprimeX3.
    const MainTerm& main_term() const;

    /// D[s] = number of pairs (x1,x2) in the box with x1^2+alpha2*x2^2 = s (mod q).
    const std::vector<i64>& pair_table() const { return pair_table_; }

  private:
    Modulus mod_;
    i64 alpha2_ = 0;
    i64 n_box_ = 0;
    CountMode mode_ = CountMode::CoprimeX3;
    std::vector<i64> pair_table_;                    // D[s]
    std::vector<std::pair<i64, i64>> x3_squares_;    // (t, #{x3 admissible: x3^2 = t})
    std::optional<MainTerm> main_;
};

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

/// Exhaustive oracle: direct box enumeration with per-pair residue lookup.
/// Guarded to N <= 300. Never touches the convolution kernel.
i64 count_solutions_bruteforce(const TernaryForm& form, i64 n_box, CountMode mode);

/// Histogram-convolution counter; equals the brute-force count everywhere.
/// Requires N <= q and q <= 10^7.
i64 count_solutions(const TernaryForm& form, i64 n_box, CountMode mode,
                    ConvBackend backend = ConvBackend::Auto);

MainTerm main_term_exact(const Modulus& mod, i64 alpha2, i64 n_box,
                         ConvBackend backend = ConvBackend::Auto);

/// C_q = prod_{p|q} (1 - 1/p) * prod_{p|q} (1 - (-alpha2/p)/p), exact.
Rational local_constant(const Modulus& mod, i64 alpha2);

/// C_q * (2N)^3 / q.
double main_term_approx(const Modulus& mod, i64 alpha2, i64 n_box);

/// E(alpha3) = S(alpha3) - M, in the coprime-x3 counting mode.
double error_term(const TernaryForm& form, i64 n_box, ConvBackend backend = ConvBackend::Auto);

SolutionStats solution_stats(const TernaryForm& form, i64 n_box, CountMode mode,
                             ConvBackend backend = ConvBackend::Auto);

struct SmallestSolution {
    bool found = false;
    i64 x1 = 0, x2 = 0, x3 = 0;
    i64 height = 0;  // meaningful only when found
};

/// Default cap ceil(q^(5/8 + 0.1)) when height_cap <= 0; hard guard 10^4.
/// Shells h = 1, 2, ... are searched with precomputed square-root tables;
/// ties at the minimal height break lexicographically on
/// (|x1|, |x2|, |x3|, signs with + first).
SmallestSolution smallest_solution(const TernaryForm& form, CountMode mode, i64 height_cap = 0);

}  // namespace qcw
