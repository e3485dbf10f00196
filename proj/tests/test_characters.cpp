#include <doctest.h>

#include <complex>
#include <map>
#include <set>

#include "qcw/characters.hpp"

using namespace qcw;

namespace {

// --- exact root-of-unity sum oracle -----------------------------------------
// A sum of D-th roots of unity sum_t c_t zeta_D^t vanishes iff the integer
// polynomial sum c_t x^t is divisible by the D-th cyclotomic polynomial.
// Everything below is exact integer arithmetic.

using Poly = std::vector<long long>;  // index = degree

Poly poly_divexact(Poly num, const Poly& den) {
    REQUIRE(num.size() >= den.size());
    REQUIRE(den.back() != 0);
    Poly quot(num.size() - den.size() + 1, 0);
    for (size_t qi = quot.size(); qi-- > 0;) {
        long long lead = num[qi + den.size() - 1];
        REQUIRE(lead % den.back() == 0);
        long long f = lead / den.back();
        quot[qi] = f;
        for (size_t j = 0; j < den.size(); ++j) num[qi + j] -= f * den[j];
    }
    for (long long v : num) REQUIRE(v == 0);
    return quot;
}

const Poly& cyclotomic(int n) {
    static std::map<int, Poly> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly p(n + 1, 0);  // x^n - 1
    p[0] = -1;
    p[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_divexact(p, cyclotomic(d));
    return memo.emplace(n, std::move(p)).first->second;
}

// remainder of P mod the (monic, integer) cyclotomic polynomial Phi_D is zero
bool vanishes_exactly(const std::map<i64, long long>& angle_counts, i64 big_d) {
    Poly p(big_d, 0);
    for (auto& [t, c] : angle_counts) p[t] += c;
    const Poly& phi = cyclotomic(static_cast<int>(big_d));
    if (p.size() >= phi.size()) {
        for (size_t qi = p.size() - phi.size() + 1; qi-- > 0;) {
            long long f = p[qi + phi.size() - 1];  // phi is monic
            for (size_t j = 0; j < phi.size(); ++j) p[qi + j] -= f * phi[j];
        }
    }
    for (long long v : p)
        if (v != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("UnitRoot angle arithmetic") {
    CHECK(UnitRoot::from_angle(3, 6) == UnitRoot::from_angle(1, 2));
    CHECK(UnitRoot::from_angle(7, 6) == UnitRoot::from_angle(1, 6));
    CHECK(UnitRoot::from_angle(-1, 6) == UnitRoot::from_angle(5, 6));
    CHECK((UnitRoot::from_angle(1, 3) * UnitRoot::from_angle(1, 6)) == UnitRoot::from_angle(1, 2));
    CHECK(UnitRoot::from_angle(1, 8).pow(4) == UnitRoot::from_angle(1, 2));
    CHECK(UnitRoot::from_angle(1, 5).conj() == UnitRoot::from_angle(4, 5));
    CHECK(UnitRoot::from_angle(2, 8).num == 1);  // stored reduced
    CHECK(UnitRoot::from_angle(2, 8).den == 4);
    CHECK((UnitRoot::zero_value() * UnitRoot::from_angle(1, 3)).zero);
    CHECK(UnitRoot::from_angle(1, 2).to_complex().real() == -1.0);
    CHECK(UnitRoot::from_angle(1, 4).to_complex().imag() == 1.0);
    CHECK(UnitRoot::one().to_complex().real() == 1.0);
}

TEST_CASE("group sizes and enumeration") {
    CHECK(build_character_group(9)->size() == 6);
    CHECK(build_character_group(15)->size() == 8);
    CHECK(build_character_group(3)->size() == 2);
    CHECK_THROWS_AS(build_character_group(8), std::invalid_argument);

    // enumeration yields size() distinct exponent vectors
    auto g = build_character_group(45);
    std::set<std::vector<i64>> seen;
    for (i64 i = 0; i < g->size(); ++i) seen.insert(g->character_from_index(i).exponents);
    CHECK(static_cast<i64>(seen.size()) == g->size());
    CHECK_THROWS_AS(g->character_from_index(g->size()), std::invalid_argument);
}

TEST_CASE("evaluation basics") {
    auto g15 = build_character_group(15);
    CHECK(g15->principal()(7) == UnitRoot::one());
    CHECK(g15->principal()(5).zero);
    for (i64 i = 0; i < g15->size(); ++i) CHECK(g15->character_from_index(i)(5).zero);

    // the quadratic character mod 5 takes -1 at the non-residue 2
    auto g5 = build_character_group(5);
    auto legendre5 = order_two_characters(g5).at(0).chi;
    CHECK(legendre5(2) == UnitRoot::from_angle(1, 2));
    CHECK(legendre5(4) == UnitRoot::one());

    // periodicity
    auto g9 = build_character_group(9);
    for (i64 i = 0; i < g9->size(); ++i) {
        auto chi = g9->character_from_index(i);
        for (i64 n = 0; n < 9; ++n) CHECK(chi(n) == chi(n + 9));
    }
}

TEST_CASE("orthogonality, exact") {
    for (i64 q = 3; q <= 45; q += 2) {
        auto g = build_character_group(q);
        i64 expo = g->group_exponent();
        for (i64 a = 0; a < q; ++a) {
            for (i64 b = 0; b < q; ++b) {
                bool units = gcd64(a, q) == 1 && gcd64(b, q) == 1;
                std::map<i64, long long> angles;
                i64 ones = 0;
                bool any_nonzero_term = false;
                for (i64 i = 0; i < g->size(); ++i) {
                    auto chi = g->character_from_index(i);
                    i64 ua = g->angle_units(chi, a), ub = g->angle_units(chi, b);
                    if (ua < 0 || ub < 0) continue;
                    any_nonzero_term = true;
                    i64 t = norm_mod(ua - ub, expo);
                    angles[t] += 1;
                    if (t == 0) ++ones;
                }
                if (!units) {
                    CHECK_FALSE(any_nonzero_term);
                } else if (a % q == b % q) {
                    CHECK(ones == g->size());
                    CHECK(static_cast<i64>(angles[0]) == g->size());
                } else {
                    CHECK(vanishes_exactly(angles, expo));
                }
            }
        }
    }
}

TEST_CASE("full-period character sums vanish") {
    for (i64 q = 3; q <= 225; q += 2) {
        auto g = build_character_group(q);
        for (i64 i = 0; i < g->size(); ++i) {
            auto chi = g->character_from_index(i);
            if (chi.is_principal()) continue;
            CHECK(std::abs(char_sum_interval(chi, 0, q)) <= 1e-9);
        }
    }
}

TEST_CASE("char_sum_interval examples") {
    auto g5 = build_character_group(5);
    auto legendre5 = order_two_characters(g5).at(0).chi;
    CHECK(char_sum_interval(legendre5, 0, 3).real() == doctest::Approx(-1.0));  // 1 - 1 - 1
    CHECK(char_sum_interval(legendre5, 0, 1).real() == doctest::Approx(1.0));
    CHECK(char_sum_interval(legendre5, 0, 5).real() == doctest::Approx(0.0));
    CHECK_THROWS_AS(char_sum_interval(legendre5, -1, 3), std::invalid_argument);
    CHECK_THROWS_AS(char_sum_interval(legendre5, 0, 0), std::invalid_argument);
}

TEST_CASE("order-2 characters") {
    CHECK(order_two_characters(build_character_group(15)).size() == 3);
    CHECK(order_two_characters(build_character_group(9)).size() == 1);
    CHECK(order_two_characters(build_character_group(9)).at(0).q1 == 3);
    CHECK(order_two_characters(build_character_group(105)).size() == 7);

    SUBCASE("q1 labels are exactly the divisors > 1 of rad(q)") {
        for (i64 q : {15, 45, 105, 225}) {
            auto g = build_character_group(q);
            std::vector<i64> q1s;
            for (auto& e : order_two_characters(g)) q1s.push_back(e.q1);
            std::vector<i64> expect;
            for (i64 d : divisors(g->modulus().rad))
                if (d > 1) expect.push_back(d);
            CHECK(q1s == expect);
        }
    }

    SUBCASE("value formula and brute-force order scan") {
        for (i64 q = 3; q <= 225; q += 2) {
            auto g = build_character_group(q);
            auto listed = order_two_characters(g);
            i64 q2prod = g->modulus().rad;

            std::set<std::vector<i64>> listed_set;
            for (auto& e : listed) {
                listed_set.insert(e.chi.exponents);
                i64 q2 = q2prod / e.q1;
                for (i64 x = 0; x < q; ++x) {
                    UnitRoot v = e.chi(x);
                    if (gcd64(x, q) != 1) {
                        CHECK(v.zero);
                    } else {
                        int expect = jacobi_symbol(x, e.q1) * (gcd64(x, q2) == 1 ? 1 : 0);
                        CHECK(v == (expect == 1 ? UnitRoot::one() : UnitRoot::from_angle(1, 2)));
                    }
                }
            }

            // brute force: chi has order two iff chi != chi0 and chi(n)^2 = chi0(n) on units
            std::set<std::vector<i64>> brute;
            for (i64 i = 0; i < g->size(); ++i) {
                auto chi = g->character_from_index(i);
                if (chi.is_principal()) continue;
                bool order2 = true;
                for (i64 n = 0; n < q && order2; ++n) {
                    if (gcd64(n, q) != 1) continue;
                    if (!chi(n).pow(2).is_one()) order2 = false;
                }
                if (order2) brute.insert(chi.exponents);
            }
            CHECK(brute == listed_set);
            CHECK(static_cast<i64>(listed.size()) == (i64(1) << g->modulus().omega()) - 1);
        }
    }
}

TEST_CASE("conductor") {
    auto g9 = build_character_group(9);
    CHECK(conductor(g9->principal()).conductor == 1);
    CHECK(conductor(g9->principal()).complement == 9);

    // the lift to modulus 9 of the quadratic character mod 3
    auto lifted = order_two_characters(g9).at(0).chi;
    auto cf = conductor(lifted);
    CHECK(cf.conductor == 3);
    CHECK(cf.complement == 3);
    REQUIRE(cf.primitive.has_value());

    auto g7 = build_character_group(7);
    CHECK(conductor(order_two_characters(g7).at(0).chi).conductor == 7);

    SUBCASE("minimality against the direct induction oracle") {
        for (i64 q = 3; q <= 165; q += 2) {
            auto g = build_character_group(q);
            auto divs = divisors(q);
            for (i64 i = 0; i < g->size(); ++i) {
                auto chi = g->character_from_index(i);
                auto fact = conductor(chi);

                // smallest d | q such that chi(n) = 1 whenever n = 1 (mod d)
                // and gcd(n, q) = 1
                i64 oracle = 0;
                for (i64 d : divs) {
                    bool induced = true;
                    for (i64 n = 1; n <= q && induced; n += d)
                        if (gcd64(n, q) == 1 && !chi(n).is_one()) induced = false;
                    if (induced) {
                        oracle = d;
                        break;
                    }
                }
                CHECK(fact.conductor == oracle);
                CHECK(fact.conductor * fact.complement == q);
            }
        }
    }

    SUBCASE("factorization chi = chi1 * chi2 on all units") {
        for (i64 q = 3; q <= 225; q += 2) {
            auto g = build_character_group(q);
            for (i64 i = 0; i < g->size(); ++i) {
                auto chi = g->character_from_index(i);
                auto fact = conductor(chi);
                if (fact.conductor == 1) {
                    CHECK(chi.is_principal());
                    continue;
                }
                REQUIRE(fact.primitive.has_value());
                const auto& chi1 = *fact.primitive;
                for (i64 n = 0; n < q; ++n) {
                    if (gcd64(n, q) != 1) continue;
                    CHECK(chi(n) == chi1(n));
                }
            }
        }
    }
}

TEST_CASE("char_sum_quadratic_box") {
    auto g3 = build_character_group(3);
    auto legendre3 = order_two_characters(g3).at(0).chi;
    CHECK(std::abs(char_sum_quadratic_box(legendre3, 1, 1)) == doctest::Approx(0.0));
    CHECK(char_sum_quadratic_box(g3->principal(), 1, 1).real() == doctest::Approx(8.0));
    CHECK(std::abs(char_sum_quadratic_box(legendre3, 1, 0)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(char_sum_quadratic_box(legendre3, 3, 2), std::invalid_argument);

    SUBCASE("histogram path equals direct double loop") {
        for (i64 q : {9, 15, 21, 45}) {
            auto g = build_character_group(q);
            for (i64 idx : {i64(1), g->size() - 1}) {
                auto chi = g->character_from_index(idx);
                for (i64 alpha2 : {i64(1), i64(2)}) {
                    if (gcd64(alpha2, q) != 1) continue;
                    for (i64 n : {i64(0), i64(3), q}) {
                        std::complex<double> direct(0, 0);
                        for (i64 x1 = -n; x1 <= n; ++x1)
                            for (i64 x2 = -n; x2 <= n; ++x2)
                                direct += chi(norm_mod(x1 * x1 + alpha2 * x2 * x2, q)).to_complex();
                        auto fast = char_sum_quadratic_box(chi, alpha2, n);
                        CHECK(std::abs(fast - direct) <= 1e-9 * (2 * n + 1) * (2 * n + 1));
                    }
                }
            }
        }
    }
}

TEST_CASE("burgess ratio") {
    CHECK(burgess_bound(10007, 100, 2, 0.05) == doctest::Approx(89.0).epsilon(0.01));
    CHECK(lindelof_bound(10007, 100, 0.0) == doctest::Approx(10.0));
    CHECK(lindelof_bound(16, 4, 0.5) == doctest::Approx(8.0));
    auto g5 = build_character_group(5);
    auto legendre5 = order_two_characters(g5).at(0).chi;
    auto audit = burgess_ratio(legendre5, 0, 5, 2, 0.0);
    CHECK(audit.empirical == doctest::Approx(0.0));
    CHECK(audit.ratio >= 0.0);
    CHECK(std::isfinite(audit.ratio));
    CHECK_THROWS_AS(burgess_ratio(g5->principal(), 0, 5, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(burgess_bound(5, 5, 4, 0.0), std::invalid_argument);
}

TEST_CASE("heath-brown disc sums") {
    auto g5 = build_character_group(5);
    auto legendre5 = order_two_characters(g5).at(0).chi;

    // disc of radius 2.5 at the origin holds 21 lattice points
    auto audit = hb_ratio(legendre5, 1, 0, 1, 0.0, 0.0, 2.5, 3, 0.05);
    CHECK(audit.lattice_points == 21);
    CHECK(audit.conductor == 5);

    // single point: |chi(Q(x0,y0))| is 0 or 1
    auto single = hb_ratio(legendre5, 1, 0, 1, 0.0, 0.0, 0.0, 3, 0.05);
    CHECK(single.lattice_points == 1);
    CHECK(single.empirical == doctest::Approx(0.0));  // Q(0,0) = 0
    auto single2 = hb_ratio(legendre5, 1, 0, 1, 1.0, 0.0, 0.0, 3, 0.05);
    CHECK(single2.empirical == doctest::Approx(1.0));  // Q(1,0) = 1

    // large-R bound formula, frozen value
    CHECK(hb_bound_large_r(1000.0, 10007, 10007, 0.05) ==
          doctest::Approx(1519800.0).epsilon(0.01));

    // regime selection: q1 = 5 => q1^(7/12) = 2.56, so R = 3 is large-R
    auto large = hb_ratio(legendre5, 1, 0, 1, 0.0, 0.0, 3.0, 3, 0.0);
    CHECK(large.regime == HbRegime::LargeR);

    // squareful modulus rejected
    auto g9 = build_character_group(9);
    auto chi9 = order_two_characters(g9).at(0).chi;
    CHECK_THROWS_AS(hb_ratio(chi9, 1, 0, 1, 0.0, 0.0, 2.0, 3, 0.0), std::invalid_argument);
    // discriminant sharing a factor with q rejected: disc(x^2 + 5y^2) = -20
    CHECK_THROWS_AS(hb_ratio(legendre5, 1, 0, 5, 0.0, 0.0, 2.0, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(hb_ratio(g5->principal(), 1, 0, 1, 0.0, 0.0, 2.0, 3, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(hb_ratio(legendre5, 1, 0, 1, 0.0, 0.0, 2.0, 2, 0.0), std::invalid_argument);
}
