#pragma once

// The full Dirichlet character group modulo an odd q. Every unit group mod
// p^e with p odd is cyclic, so the group is a product of cyclic factors: a
// character is an exponent vector against one fixed generator per
// prime-power factor, and evaluation is a discrete-log table lookup per
// factor followed by exact rational-angle arithmetic.

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "qcw/arith.hpp"
#include "qcw/convolution.hpp"
#include "qcw/unit_root.hpp"

namespace qcw {

class CharacterGroup;
using CharacterGroupPtr = std::shared_ptr<const CharacterGroup>;

struct DirichletCharacter {
    CharacterGroupPtr group;
    std::vector<i64> exponents;  // one per prime-power factor, reduced mod the factor order

    bool is_principal() const;
    i64 order() const;
    DirichletCharacter squared() const;
    UnitRoot operator()(i64 n) const;
};

class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
  public:
    struct Component {
        i64 prime = 0;
        int prime_exp = 0;
        i64 pe = 0;         // p^e
        i64 generator = 0;  // smallest primitive root mod p^e
        i64 order = 0;      // phi(p^e)
        std::vector<std::int32_t> log;  // discrete log; -1 on non-units
    };

    static CharacterGroupPtr build(const Modulus& m);
    static CharacterGroupPtr build(i64 q);

    const Modulus& modulus() const { return mod_; }
    const std::vector<Component>& components() const { return comps_; }
    i64 size() const { return mod_.phi; }
    i64 group_exponent() const { return exponent_; }

    DirichletCharacter principal() const;
    DirichletCharacter character_at(std::vector<i64> exponents) const;
    /// Mixed-radix enumeration: index in [0, phi(q)) -> character, first factor fastest.
    DirichletCharacter character_from_index(i64 index) const;

    /// Angle of chi(n) in units of 1/group_exponent(), or -1 when gcd(n,q) > 1.
    i64 angle_units(const DirichletCharacter& chi, i64 n) const;
    UnitRoot evaluate(const DirichletCharacter& chi, i64 n) const;
    std::complex<double> evaluate_complex(const DirichletCharacter& chi, i64 n) const;

    /// angle_units for every residue 0..q-1 in one pass.
    std::vector<i64> angle_units_table(const DirichletCharacter& chi) const;

    /// e(j / group_exponent()) for j in [0, group_exponent()).
    const std::vector<std::complex<double>>& roots() const { return roots_; }

  private:
    Modulus mod_;
    std::vector<Component> comps_;
    i64 exponent_ = 1;
    std::vector<std::complex<double>> roots_;
};

CharacterGroupPtr build_character_group(i64 q);

// --- conductor -------------------------------------------------------------

struct ConductorFactorization {
    i64 conductor = 1;   // q1: smallest modulus whose primitive character induces chi
    i64 complement = 1;  // q2 = q / q1
    // primitive character mod q1 inducing chi; empty iff chi is principal
    std::optional<DirichletCharacter> primitive;
};

ConductorFactorization conductor(const DirichletCharacter& chi);

// --- order-2 subfamily -------------------------------------------------------

struct OrderTwoCharacter {
    i64 q1 = 1;  // divisor of rad(q), > 1; the character is x -> (x/q1) on units
    DirichletCharacter chi;
};

/// All 2^omega(q) - 1 characters of order two, indexed by their Jacobi modulus q1.
std::vector<OrderTwoCharacter> order_two_characters(const CharacterGroupPtr& group);

// --- character sums ----------------------------------------------------------

/// S1 = sum_{M < n <= M+N} chi(n).
std::complex<double> char_sum_interval(const DirichletCharacter& chi, i64 m_start, i64 n_len);

/// S2 = sum_{|x1|,|x2| <= N} chi(x1^2 + alpha2*x2^2), via residue histograms
/// of x1^2 and alpha2*x2^2 combined by one cyclic convolution mod q.
std::complex<double> char_sum_quadratic_box(const DirichletCharacter& chi, i64 alpha2, i64 n_box,
                                            ConvBackend backend = ConvBackend::Auto);

// --- bound audits (report-only; implied constants are unknown) ---------------

struct BurgessAudit {
    double empirical = 0;  // |S1|
    double bound = 0;      // N^(1-1/r) * q^((r+1)/(4r^2) + eps)
    double ratio = 0;
};

double burgess_bound(i64 q, i64 n_len, int r, double epsilon = 0.05);
BurgessAudit burgess_ratio(const DirichletCharacter& chi, i64 m_start, i64 n_len, int r,
                           double epsilon = 0.05);

/// The conditional comparator N^(1/2) * q^eps for sums starting at 0. No
/// evaluator exists behind it; it is only ever reported next to empirical
/// values.
double lindelof_bound(i64 q, i64 n_len, double epsilon = 0.05);

enum class HbRegime { SmallR, LargeR, Uncovered };

struct HeathBrownAudit {
    double empirical = 0;
    double bound = 0;  // NaN when regime == Uncovered
    HbRegime regime = HbRegime::Uncovered;
    i64 conductor = 1;
    i64 lattice_points = 0;
};

double hb_bound_small_r(double radius, i64 q1, int r, i64 q0, double epsilon);
double hb_bound_large_r(double radius, i64 q1, i64 q0, double epsilon);

/// Character sum of a binary quadratic form a*x^2 + b*x*y + c*y^2 over the
/// integer points of a disc of radius R centered at (x0, y0). Requires a
/// squarefree modulus, a non-principal chi and gcd(b^2 - 4ac, q) = 1.
HeathBrownAudit hb_ratio(const DirichletCharacter& chi, i64 qa, i64 qb, i64 qc, double x0,
                         double y0, double radius, int r, double epsilon = 0.05);

}  // namespace qcw
