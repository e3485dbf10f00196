#include <doctest.h>

#include <cmath>
#include <random>

#include "qcw/counting.hpp"

using namespace qcw;

TEST_CASE("TernaryForm normalization") {
    Modulus m7 = Modulus::make(7);
    TernaryForm f = TernaryForm::make(m7, 2, 2, 4);  // divide by 2: (1, 1, 2)
    CHECK(f.alpha2 == 1);
    CHECK(f.alpha3 == 2);
    CHECK_THROWS_AS(TernaryForm::make(Modulus::make(15), 1, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(TernaryForm::make(Modulus::make(15), 5, 1, 1), std::invalid_argument);
}

TEST_CASE("brute-force counter examples") {
    CHECK(count_solutions_bruteforce(TernaryForm::make(3, 1, 1), 1, CountMode::CoprimeX3) == 8);
    CHECK(count_solutions_bruteforce(TernaryForm::make(3, 1, 2), 1, CountMode::CoprimeX3) == 8);
    CHECK(count_solutions_bruteforce(TernaryForm::make(3, 1, 1), 0, CountMode::CoprimeX3) == 0);
    CHECK_THROWS_AS(count_solutions_bruteforce(TernaryForm::make(3, 1, 1), 301, CountMode::CoprimeX3),
                    std::invalid_argument);
}

TEST_CASE("histogram counter equals the oracle") {
    CHECK(count_solutions(TernaryForm::make(45, 2, 7), 20, CountMode::CoprimeX3) ==
          count_solutions_bruteforce(TernaryForm::make(45, 2, 7), 20, CountMode::CoprimeX3));
    CHECK(count_solutions(TernaryForm::make(3, 1, 1), 1, CountMode::CoprimeX3) == 8);

    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 60) {
        i64 q = 3 + 2 * static_cast<i64>(rng() % 49);  // odd, 3..99
        i64 a2 = 1 + static_cast<i64>(rng() % (q - 1));
        i64 a3 = 1 + static_cast<i64>(rng() % (q - 1));
        if (gcd64(a2, q) != 1 || gcd64(a3, q) != 1) continue;
        i64 grid[] = {1, q / 4, q / 2, std::min<i64>(q, 300), static_cast<i64>(rng() % (q + 1))};
        i64 n = grid[rng() % 5];
        CountMode mode = static_cast<CountMode>(rng() % 3);
        TernaryForm f = TernaryForm::make(q, a2, a3);
        CHECK(count_solutions(f, n, mode) == count_solutions_bruteforce(f, n, mode));
        ++done;
    }

    SUBCASE("both convolution backends agree") {
        TernaryForm f = TernaryForm::make(99, 5, 7);
        CHECK(count_solutions(f, 40, CountMode::CoprimeX3, ConvBackend::Schoolbook) ==
              count_solutions(f, 40, CountMode::CoprimeX3, ConvBackend::Fft));
    }
}

TEST_CASE("mean identity: sum over alpha3 of S equals K*L") {
    for (i64 q : {3, 9, 15, 25, 45, 63}) {
        Modulus mod = Modulus::make(q);
        for (i64 alpha2 : {i64(1), i64(2)}) {
            if (gcd64(alpha2, q) != 1) continue;
            for (i64 n : {i64(1), q / 3}) {
                SolutionScan scan(mod, alpha2, n, CountMode::CoprimeX3);
                i64 total = 0;
                for (i64 a3 = 1; a3 <= q; ++a3)
                    if (gcd64(a3, q) == 1) total += scan.count(a3);
                const MainTerm& mt = scan.main_term();
                CHECK(total == mt.k_pairs * mt.l_line);
                CHECK(Rational(total, 1) == Rational(mod.phi, 1) * mt.value);
            }
        }
    }
}

TEST_CASE("box symmetry: interior solutions come in full sign orbits") {
    // negating any coordinate preserves solutions, so triples with all
    // coordinates nonzero appear in groups of 8; S has the parity of the
    // boundary contribution (some x_i = 0)
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        i64 q = 3 + 2 * static_cast<i64>(rng() % 30);
        i64 a2 = 1 + static_cast<i64>(rng() % (q - 1));
        i64 a3 = 1 + static_cast<i64>(rng() % (q - 1));
        if (gcd64(a2, q) != 1 || gcd64(a3, q) != 1) continue;
        i64 n = 1 + static_cast<i64>(rng() % 12);
        i64 interior = 0, boundary = 0;
        for (i64 x1 = -n; x1 <= n; ++x1)
            for (i64 x2 = -n; x2 <= n; ++x2)
                for (i64 x3 = -n; x3 <= n; ++x3) {
                    if (gcd64(norm_mod(x3, q), q) != 1) continue;
                    if (norm_mod(x1 * x1 + a2 * x2 * x2 + a3 * x3 * x3, q) != 0) continue;
                    if (x1 != 0 && x2 != 0 && x3 != 0) ++interior;
                    else ++boundary;
                }
        CHECK(interior % 8 == 0);
        TernaryForm f = TernaryForm::make(q, a2, a3);
        i64 s = count_solutions(f, n, CountMode::CoprimeX3);
        CHECK(s == interior + boundary);
        CHECK(s % 2 == boundary % 2);
    }
}

TEST_CASE("main term") {
    Modulus m3 = Modulus::make(3);
    MainTerm mt = main_term_exact(m3, 1, 3);
    CHECK(mt.k_pairs == 40);
    CHECK(mt.l_line == 4);
    CHECK(mt.value == Rational(80));

    MainTerm mt1 = main_term_exact(m3, 1, 1);
    CHECK(mt1.k_pairs == 8);
    CHECK(mt1.l_line == 2);
    CHECK(mt1.value == Rational(8));

    CHECK(main_term_exact(m3, 1, 0).value.is_zero());
    CHECK_THROWS_AS(main_term_exact(Modulus::make(15), 3, 5), std::invalid_argument);
}

TEST_CASE("local constant") {
    CHECK(local_constant(Modulus::make(15), 1) == Rational(128, 225));
    CHECK(local_constant(Modulus::make(3), 1) == Rational(8, 9));
    // prime with (-alpha2/p) = +1: both factors equal (p-1)/p
    CHECK(local_constant(Modulus::make(5), -1) == Rational(16, 25));
    for (i64 q : {3, 9, 15, 35, 99}) {
        Modulus mod = Modulus::make(q);
        for (i64 a2 = 1; a2 < q; ++a2) {
            if (gcd64(a2, q) != 1) continue;
            Rational c = local_constant(mod, a2);
            CHECK(c.to_double() > 0.0);
            CHECK(c.to_double() <= 1.0);
        }
    }
    CHECK_THROWS_AS(local_constant(Modulus::make(15), 5), std::invalid_argument);
}

TEST_CASE("approximate main term") {
    CHECK(main_term_approx(Modulus::make(3), 1, 3) == doctest::Approx(64.0));
    CHECK(main_term_approx(Modulus::make(3), 1, 0) == doctest::Approx(0.0));
    CHECK(main_term_approx(Modulus::make(15), 1, 15) == doctest::Approx(1024.0));
}

TEST_CASE("error term") {
    CHECK(error_term(TernaryForm::make(3, 1, 1), 1) == doctest::Approx(0.0));
    CHECK(error_term(TernaryForm::make(3, 1, 2), 1) == doctest::Approx(0.0));

    SUBCASE("stats record is coherent") {
        SolutionStats st = solution_stats(TernaryForm::make(15, 2, 7), 6, CountMode::CoprimeX3);
        CHECK(st.count >= 0);
        double m = st.main.to_double();
        CHECK(st.error == doctest::Approx(static_cast<double>(st.count) - m));
    }
}

TEST_CASE("smallest solution") {
    // 1 + 2 + 4 = 7
    SmallestSolution s = smallest_solution(TernaryForm::make(7, 2, 4), CountMode::CoprimeAll);
    CHECK(s.found);
    CHECK(s.height == 1);
    CHECK(s.x1 == 1);
    CHECK(s.x2 == 1);
    CHECK(s.x3 == 1);

    SmallestSolution s27 = smallest_solution(TernaryForm::make(27, 1, 1), CountMode::Nontrivial);
    CHECK(s27.found);
    CHECK(s27.height == 3);

    SmallestSolution s3 = smallest_solution(TernaryForm::make(3, 1, 1), CountMode::CoprimeX3);
    CHECK(s3.found);
    CHECK(s3.height == 1);
    CHECK(s3.x1 == 1);
    CHECK(s3.x2 == 1);
    CHECK(s3.x3 == 1);

    SUBCASE("returned triples satisfy the congruence and mode") {
        std::mt19937_64 rng(33);
        for (int trial = 0; trial < 25; ++trial) {
            i64 q = 3 + 2 * static_cast<i64>(rng() % 120);
            i64 a2 = 1 + static_cast<i64>(rng() % (q - 1));
            i64 a3 = 1 + static_cast<i64>(rng() % (q - 1));
            if (gcd64(a2, q) != 1 || gcd64(a3, q) != 1) continue;
            CountMode mode = static_cast<CountMode>(rng() % 3);
            TernaryForm f = TernaryForm::make(q, a2, a3);
            SmallestSolution sol = smallest_solution(f, mode);
            if (!sol.found) continue;
            i64 v = norm_mod(sol.x1 * sol.x1 + a2 * norm_mod(sol.x2 * sol.x2, q) +
                                 a3 * norm_mod(sol.x3 * sol.x3, q),
                             q);
            CHECK(v == 0);
            CHECK(std::max({std::abs(sol.x1), std::abs(sol.x2), std::abs(sol.x3)}) == sol.height);
            CHECK(sol.height >= 1);
            if (mode != CountMode::Nontrivial) CHECK(gcd64(norm_mod(sol.x3, q), q) == 1);
            if (mode == CountMode::CoprimeAll) {
                CHECK(gcd64(norm_mod(sol.x1, q), q) == 1);
                CHECK(gcd64(norm_mod(sol.x2, q), q) == 1);
            }
        }
    }

    SUBCASE("minimality against brute force") {
        std::mt19937_64 rng(34);
        for (int trial = 0; trial < 15; ++trial) {
            i64 q = 3 + 2 * static_cast<i64>(rng() % 60);
            i64 a2 = 1 + static_cast<i64>(rng() % (q - 1));
            i64 a3 = 1 + static_cast<i64>(rng() % (q - 1));
            if (gcd64(a2, q) != 1 || gcd64(a3, q) != 1) continue;
            TernaryForm f = TernaryForm::make(q, a2, a3);
            SmallestSolution sol = smallest_solution(f, CountMode::CoprimeX3);
            REQUIRE(sol.found);
            // no solution strictly below the reported height
            if (sol.height > 1)
                CHECK(count_solutions_bruteforce(f, sol.height - 1, CountMode::CoprimeX3) == 0);
            CHECK(count_solutions_bruteforce(f, sol.height, CountMode::CoprimeX3) > 0);
        }
    }

    SUBCASE("cap respected") {
        // x^2+y^2+z^2 = 0 mod 11 has no admissible solution of height 1
        SmallestSolution none = smallest_solution(TernaryForm::make(11, 1, 1),
                                                  CountMode::Nontrivial, 1);
        CHECK_FALSE(none.found);
        CHECK_THROWS_AS(smallest_solution(TernaryForm::make(11, 1, 1), CountMode::Nontrivial, 20000),
                        std::invalid_argument);
    }
}
