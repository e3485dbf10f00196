#include "qcw/counting.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qcw {

const char* count_mode_name(CountMode mode) {
    switch (mode) {
        case CountMode::CoprimeX3: return "coprime-x3";
        case CountMode::CoprimeAll: return "coprime-all";
        case CountMode::Nontrivial: return "nontrivial";
    }
    return "?";
}

std::optional<CountMode> count_mode_from_name(const std::string& name) {
    if (name == "coprime-x3") return CountMode::CoprimeX3;
    if (name == "coprime-all") return CountMode::CoprimeAll;
    if (name == "nontrivial") return CountMode::Nontrivial;
    return std::nullopt;
}

TernaryForm TernaryForm::make(const Modulus& mod, i64 alpha1, i64 alpha2, i64 alpha3) {
    alpha1 = norm_mod(alpha1, mod.q);
    alpha2 = norm_mod(alpha2, mod.q);
    alpha3 = norm_mod(alpha3, mod.q);
    if (gcd64(alpha1, mod.q) != 1 || gcd64(alpha2, mod.q) != 1 || gcd64(alpha3, mod.q) != 1)
        throw std::invalid_argument("TernaryForm: coefficients must be coprime to q");
    i64 inv1 = inv_mod(alpha1, mod.q);
    return TernaryForm{mod, mul_mod(alpha2, inv1, mod.q), mul_mod(alpha3, inv1, mod.q)};
}

// ---------------------------------------------------------------------------
// SolutionScan
// ---------------------------------------------------------------------------

SolutionScan::SolutionScan(const Modulus& mod, i64 alpha2, i64 n_box, CountMode mode,
                           ConvBackend backend)
    : mod_(mod), alpha2_(norm_mod(alpha2, mod.q)), n_box_(n_box), mode_(mode) {
    const i64 q = mod_.q;
    if (gcd64(alpha2_, q) != 1) throw std::invalid_argument("SolutionScan: alpha2 not coprime to q");
    if (n_box < 0 || n_box > q) throw std::invalid_argument("SolutionScan: need 0 <= N <= q");
    if (q > 10000000) throw std::invalid_argument("SolutionScan: q exceeds the 10^7 guard");

    auto line = residue_line_counts(n_box_, q);
    const bool restrict_pairs = (mode_ == CountMode::CoprimeAll);
    std::vector<i64> h1(q, 0), h2(q, 0);
    for (i64 y = 0; y < q; ++y) {
        if (restrict_pairs && gcd64(y, q) != 1) continue;
        i64 y2 = mul_mod(y, y, q);
        h1[y2] += line[y];
        h2[mul_mod(alpha2_, y2, q)] += line[y];
    }
    pair_table_ = cyclic_convolve(h1, h2, backend);

    const bool restrict_x3 = (mode_ != CountMode::Nontrivial);
    std::vector<i64> w(q, 0);
    i64 l_line = 0;
    for (i64 y = 0; y < q; ++y) {
        bool coprime = gcd64(y, q) == 1;
        if (coprime) l_line += line[y];
        if (restrict_x3 && !coprime) continue;
        w[mul_mod(y, y, q)] += line[y];
    }
    for (i64 t = 0; t < q; ++t)
        if (w[t] != 0) x3_squares_.push_back({t, w[t]});

    if (mode_ == CountMode::CoprimeX3) {
        MainTerm mt;
        for (i64 s = 0; s < q; ++s)
            if (gcd64(s, q) == 1) mt.k_pairs += pair_table_[s];
        mt.l_line = l_line;
        mt.value = Rational(static_cast<i128>(mt.k_pairs) * mt.l_line, mod_.phi);
        main_ = mt;
    }
}

i64 SolutionScan::count(i64 alpha3) const {
    const i64 q = mod_.q;
    alpha3 = norm_mod(alpha3, q);
    if (gcd64(alpha3, q) != 1) throw std::invalid_argument("SolutionScan: alpha3 not coprime to q");
    i128 total = 0;
    for (auto& [t, w] : x3_squares_) {
        i64 s = mul_mod(alpha3, t, q);        // alpha3 * x3^2 residue
        i64 need = s == 0 ? 0 : q - s;        // pairs with x1^2+alpha2*x2^2 = -s
        total += static_cast<i128>(pair_table_[need]) * w;
    }
    if (mode_ == CountMode::Nontrivial) total -= 1;  // the all-zero triple
    if (total > INT64_MAX) throw std::runtime_error("SolutionScan: count overflows 64 bits");
    return static_cast<i64>(total);
}

const MainTerm& SolutionScan::main_term() const {
    if (!main_) throw std::logic_error("SolutionScan: main term defined only in coprime-x3 mode");
    return *main_;
}

// ---------------------------------------------------------------------------
// brute-force oracle
// ---------------------------------------------------------------------------

i64 count_solutions_bruteforce(const TernaryForm& form, i64 n_box, CountMode mode) {
    const i64 q = form.mod.q;
    if (n_box < 0 || n_box > 300)
        throw std::invalid_argument("count_solutions_bruteforce: need 0 <= N <= 300");

    std::vector<i64> cnt3(q, 0);
    for (i64 x3 = -n_box; x3 <= n_box; ++x3) {
        if (mode != CountMode::Nontrivial && gcd64(norm_mod(x3, q), q) != 1) continue;
        cnt3[norm_mod(form.alpha3 * norm_mod(x3 * x3, q), q)] += 1;
    }
    i64 total = 0;
    for (i64 x1 = -n_box; x1 <= n_box; ++x1) {
        if (mode == CountMode::CoprimeAll && gcd64(norm_mod(x1, q), q) != 1) continue;
        for (i64 x2 = -n_box; x2 <= n_box; ++x2) {
            if (mode == CountMode::CoprimeAll && gcd64(norm_mod(x2, q), q) != 1) continue;
            i64 qval = norm_mod(x1 * x1 + form.alpha2 * norm_mod(x2 * x2, q), q);
            total += cnt3[qval == 0 ? 0 : q - qval];
        }
    }
    if (mode == CountMode::Nontrivial) total -= 1;
    return total;
}

i64 count_solutions(const TernaryForm& form, i64 n_box, CountMode mode, ConvBackend backend) {
    SolutionScan scan(form.mod, form.alpha2, n_box, mode, backend);
    return scan.count(form.alpha3);
}

// ---------------------------------------------------------------------------
// main term and local density
// ---------------------------------------------------------------------------

MainTerm main_term_exact(const Modulus& mod, i64 alpha2, i64 n_box, ConvBackend backend) {
    SolutionScan scan(mod, alpha2, n_box, CountMode::CoprimeX3, backend);
    return scan.main_term();
}

Rational local_constant(const Modulus& mod, i64 alpha2) {
    if (gcd64(norm_mod(alpha2, mod.q), mod.q) != 1)
        throw std::invalid_argument("local_constant: alpha2 not coprime to q");
    Rational c(1);
    for (auto& [p, e] : mod.factors) {
        int leg = jacobi_symbol(-alpha2, p);
        c = c * Rational(p - 1, p) * Rational(p - leg, p);
    }
    return c;
}

double main_term_approx(const Modulus& mod, i64 alpha2, i64 n_box) {
    double twoN = 2.0 * static_cast<double>(n_box);
    return local_constant(mod, alpha2).to_double() * twoN * twoN * twoN /
           static_cast<double>(mod.q);
}

double error_term(const TernaryForm& form, i64 n_box, ConvBackend backend) {
    return solution_stats(form, n_box, CountMode::CoprimeX3, backend).error;
}

SolutionStats solution_stats(const TernaryForm& form, i64 n_box, CountMode mode,
                             ConvBackend backend) {
    SolutionScan scan(form.mod, form.alpha2, n_box, mode, backend);
    SolutionStats st;
    st.q = form.mod.q;
    st.alpha2 = form.alpha2;
    st.alpha3 = form.alpha3;
    st.n_box = n_box;
    st.mode = mode;
    st.count = scan.count(form.alpha3);
    st.main = main_term_exact(form.mod, form.alpha2, n_box, backend).value;
    // S - M as (S*den - num)/den, exactly, then one rounding to double
    st.error = static_cast<double>(static_cast<i128>(st.count) * st.main.den - st.main.num) /
               static_cast<double>(st.main.den);
    return st;
}

// ---------------------------------------------------------------------------
// smallest solution
// ---------------------------------------------------------------------------

namespace {

// flat square-root table: roots_of(r) = all y in [0,q) with y^2 = r (mod q)
struct SqrtTable {
    std::vector<std::int64_t> offset;
    std::vector<std::int32_t> roots;

    explicit SqrtTable(i64 q) : offset(q + 1, 0) {
        std::vector<std::int32_t> cnt(q, 0);
        for (i64 y = 0; y < q; ++y) ++cnt[mul_mod(y, y, q)];
        for (i64 r = 0; r < q; ++r) offset[r + 1] = offset[r] + cnt[r];
        roots.resize(q);
        std::vector<std::int64_t> cursor(offset.begin(), offset.end() - 1);
        for (i64 y = 0; y < q; ++y) roots[cursor[mul_mod(y, y, q)]++] = static_cast<std::int32_t>(y);
    }
};

struct Candidate {
    i64 x1, x2, x3;
    std::array<i64, 6> key() const {
        return {std::abs(x1), std::abs(x2), std::abs(x3),
                x1 < 0 ? 1 : 0, x2 < 0 ? 1 : 0, x3 < 0 ? 1 : 0};
    }
};

void consider(std::optional<Candidate>& best, const Candidate& c) {
    if (!best || c.key() < best->key()) best = c;
}

}  // namespace

SmallestSolution smallest_solution(const TernaryForm& form, CountMode mode, i64 height_cap) {
    const i64 q = form.mod.q;
    if (height_cap <= 0)
        height_cap = static_cast<i64>(std::ceil(std::pow(static_cast<double>(q), 0.625 + 0.1)));
    if (height_cap > 10000)
        throw std::invalid_argument("smallest_solution: height cap exceeds the 10^4 guard");

    SqrtTable table(q);
    const i64 inv_a3 = inv_mod(form.alpha3, q);
    const i64 inv_a2 = inv_mod(form.alpha2, q);
    const bool need_coprime_x3 = (mode != CountMode::Nontrivial);
    const bool need_coprime_x12 = (mode == CountMode::CoprimeAll);

    auto coprime = [&](i64 v) { return gcd64(norm_mod(v, q), q) == 1; };

    for (i64 h = 1; h <= height_cap; ++h) {
        std::optional<Candidate> best;

        // target residue for x3^2 given the pair value
        auto scan_x3 = [&](i64 x1, i64 x2) {
            i64 qval = norm_mod(x1 * x1 + form.alpha2 * norm_mod(x2 * x2, q), q);
            i64 t = mul_mod(qval == 0 ? 0 : q - qval, inv_a3, q);
            for (i64 idx = table.offset[t]; idx < table.offset[t + 1]; ++idx) {
                i64 y = table.roots[idx];
                if (need_coprime_x3 && gcd64(y, q) != 1) continue;
                for (i64 x3 = y + floor_div(-h - y, q) * q; x3 <= h; x3 += q) {
                    if (x3 < -h) continue;
                    if (std::max({std::abs(x1), std::abs(x2), std::abs(x3)}) != h) continue;
                    consider(best, {x1, x2, x3});
                }
            }
        };

        // (a) pairs on the ring max(|x1|,|x2|) = h, any |x3| <= h
        for (i64 x1 : {h, -h}) {
            if (need_coprime_x12 && !coprime(x1)) continue;
            for (i64 x2 = -h; x2 <= h; ++x2) {
                if (need_coprime_x12 && !coprime(x2)) continue;
                scan_x3(x1, x2);
            }
        }
        for (i64 x2 : {h, -h}) {
            if (need_coprime_x12 && !coprime(x2)) continue;
            for (i64 x1 = -(h - 1); x1 <= h - 1; ++x1) {
                if (need_coprime_x12 && !coprime(x1)) continue;
                scan_x3(x1, x2);
            }
        }

        // (b) |x3| = h, pair strictly inside: solve for x2 per x1
        if (!need_coprime_x3 || coprime(h)) {
            i64 rhs = mul_mod(form.alpha3, mul_mod(norm_mod(h, q), norm_mod(h, q), q), q);
            rhs = rhs == 0 ? 0 : q - rhs;  // x1^2 + alpha2 x2^2 must hit this residue
            for (i64 x3 : {h, -h}) {
                for (i64 x1 = -(h - 1); x1 <= h - 1; ++x1) {
                    if (need_coprime_x12 && !coprime(x1)) continue;
                    i64 diff = norm_mod(rhs - norm_mod(x1 * x1, q), q);
                    i64 t = mul_mod(diff, inv_a2, q);
                    for (i64 idx = table.offset[t]; idx < table.offset[t + 1]; ++idx) {
                        i64 y = table.roots[idx];
                        if (need_coprime_x12 && gcd64(y, q) != 1) continue;
                        for (i64 x2 = y + floor_div(-(h - 1) - y, q) * q; x2 <= h - 1; x2 += q) {
                            if (x2 < -(h - 1)) continue;
                            consider(best, {x1, x2, x3});
                        }
                    }
                }
            }
        }

        if (best) return {true, best->x1, best->x2, best->x3, h};
    }
    return {};
}

}  // namespace qcw
