#include <doctest.h>

#include <random>

#include "qcw/convolution.hpp"

using namespace qcw;

TEST_CASE("cyclic convolution known values") {
    // mod 3: a = [1,2,0], b = [0,1,1]
    std::vector<i64> a{1, 2, 0}, b{0, 1, 1};
    std::vector<i64> expect{2, 1, 3};
    CHECK(cyclic_convolve(a, b, ConvBackend::Schoolbook) == expect);
    CHECK(cyclic_convolve(a, b, ConvBackend::Fft) == expect);
}

TEST_CASE("fft backend agrees with schoolbook on random inputs") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        i64 q = 3 + static_cast<i64>(rng() % 600);
        std::vector<i64> a(q), b(q);
        for (i64 i = 0; i < q; ++i) {
            a[i] = static_cast<i64>(rng() % 2000);
            b[i] = static_cast<i64>(rng() % 2000);
        }
        CHECK(cyclic_convolve(a, b, ConvBackend::Schoolbook) ==
              cyclic_convolve(a, b, ConvBackend::Fft));
    }
}

TEST_CASE("convolution input validation") {
    CHECK_THROWS_AS(cyclic_convolve({1, 2}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_convolve({}, {}), std::invalid_argument);
}

TEST_CASE("residue_line_counts") {
    // q = 5, N = 2: each residue hit exactly once by {-2,...,2}
    CHECK(residue_line_counts(2, 5) == std::vector<i64>{1, 1, 1, 1, 1});
    // q = 5, N = 7: x in [-7,7]
    auto c = residue_line_counts(7, 5);
    CHECK(c[0] == 3);  // -5, 0, 5
    CHECK(c[1] == 3);  // -4, 1, 6
    CHECK(c[3] == 3);  // -7, -2, 3
    CHECK(residue_line_counts(0, 3) == std::vector<i64>{1, 0, 0});

    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        i64 q = 1 + static_cast<i64>(rng() % 50);
        i64 n = static_cast<i64>(rng() % 200);
        auto counts = residue_line_counts(n, q);
        i64 sum = 0;
        for (i64 v : counts) sum += v;
        CHECK(sum == 2 * n + 1);
    }
}
