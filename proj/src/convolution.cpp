#include "qcw/convolution.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qcw {

namespace {

using cd = std::complex<double>;

void fft_inplace(std::vector<cd>& a, bool invert) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) * (invert ? -1.0 : 1.0);
        cd wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                cd u = a[i + j];
                cd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (invert) {
        for (auto& x : a) x /= static_cast<double>(n);
    }
}

std::vector<i64> convolve_schoolbook(const std::vector<i64>& a, const std::vector<i64>& b) {
    const size_t q = a.size();
    std::vector<i64> c(q, 0);
    for (size_t r = 0; r < q; ++r) {
        if (a[r] == 0) continue;
        const i64 ar = a[r];
        // s = r + t split into the non-wrapping and wrapping ranges
        size_t s = r;
        for (size_t t = 0; t < q - r; ++t, ++s) c[s] += ar * b[t];
        s = 0;
        for (size_t t = q - r; t < q; ++t, ++s) c[s] += ar * b[t];
    }
    return c;
}

std::vector<i64> convolve_fft(const std::vector<i64>& a, const std::vector<i64>& b) {
    const size_t q = a.size();
    size_t m = 1;
    while (m < 2 * q - 1) m <<= 1;
    // pack both sequences into one complex FFT
    std::vector<cd> z(m, cd(0, 0));
    for (size_t i = 0; i < q; ++i) z[i] = cd(static_cast<double>(a[i]), static_cast<double>(b[i]));
    fft_inplace(z, false);
    std::vector<cd> prod(m);
    for (size_t k = 0; k < m; ++k) {
        size_t k2 = (m - k) & (m - 1);
        cd ak = (z[k] + std::conj(z[k2])) * 0.5;
        cd bk = (z[k] - std::conj(z[k2])) * cd(0, -0.5);
        prod[k] = ak * bk;
    }
    fft_inplace(prod, true);
    std::vector<i64> c(q, 0);
    double worst = 0.0;
    for (size_t s = 0; s < 2 * q - 1; ++s) {
        double v = prod[s].real();
        double r = std::round(v);
        worst = std::max(worst, std::abs(v - r));
        c[s % q] += static_cast<i64>(r);
    }
    if (worst > 0.25)
        throw std::runtime_error("cyclic_convolve: FFT rounding margin exhausted; inputs too large");
    return c;
}

}  // namespace

std::vector<i64> cyclic_convolve(const std::vector<i64>& a, const std::vector<i64>& b,
                                 ConvBackend backend) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("cyclic_convolve: size mismatch");
    if (backend == ConvBackend::Auto)
        backend = (static_cast<i64>(a.size()) <= kSchoolbookLimit) ? ConvBackend::Schoolbook
                                                                   : ConvBackend::Fft;
    return backend == ConvBackend::Schoolbook ? convolve_schoolbook(a, b) : convolve_fft(a, b);
}

std::vector<i64> residue_line_counts(i64 n_box, i64 q) {
    if (n_box < 0 || q <= 0) throw std::invalid_argument("residue_line_counts: bad arguments");
    std::vector<i64> cnt(q, 0);
    for (i64 y = 0; y < q; ++y)
        cnt[y] = floor_div(n_box - y, q) + floor_div(n_box + y, q) + 1;
    return cnt;
}

}  // namespace qcw
