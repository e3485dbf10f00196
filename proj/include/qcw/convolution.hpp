#pragma once

// Cyclic convolution of integer residue histograms mod q. This is the
// counting kernel shared by the solution counter, the quadratic-box
// character sums, and the variance experiments: given histograms
// a[r] and b[r] of residues mod q, c[s] = sum_r a[r]*b[(s-r) mod q]
// counts pairs whose residues add to s.
//
// Two backends: exact O(q^2) schoolbook, and a double-precision FFT with
// rounding to nearest integer. FFT results are exact as long as the true
// values stay well below 2^53; a runtime check on the worst rounding
// distance rejects anything outside that regime instead of silently
// returning garbage.

#include <vector>

#include "qcw/arith.hpp"

namespace qcw {

enum class ConvBackend { Auto, Schoolbook, Fft };

// Largest q routed to the schoolbook path under ConvBackend::Auto.
inline constexpr i64 kSchoolbookLimit = 4096;

std::vector<i64> cyclic_convolve(const std::vector<i64>& a, const std::vector<i64>& b,
                                 ConvBackend backend = ConvBackend::Auto);

/// Count of integers x with |x| <= N and x = y (mod q), for every y in [0,q).
std::vector<i64> residue_line_counts(i64 n_box, i64 q);

}  // namespace qcw
