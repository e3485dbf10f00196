#include "qcw/variance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <set>

#include "qcw/characters.hpp"
#include "qcw/counting.hpp"

namespace qcw {

double pairwise_sum(const std::vector<double>& terms) {
    // iterative cascade: combine adjacent pairs until one value remains
    if (terms.empty()) return 0.0;
    std::vector<double> level = terms;
    while (level.size() > 1) {
        size_t half = (level.size() + 1) / 2;
        for (size_t i = 0; i + 1 < level.size(); i += 2) level[i / 2] = level[i] + level[i + 1];
        if (level.size() % 2 == 1) level[half - 1] = level.back();
        level.resize(half);
    }
    return level[0];
}

namespace {

double safe_ratio(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace

double variance_direct(const Modulus& mod, i64 alpha2, i64 n_box, ConvBackend backend) {
    SolutionScan scan(mod, alpha2, n_box, CountMode::CoprimeX3, backend);
    const MainTerm& mt = scan.main_term();
    std::vector<double> terms;
    terms.reserve(mod.phi);
    for (i64 a3 = 1; a3 <= mod.q; ++a3) {
        if (gcd64(a3, mod.q) != 1) continue;
        i64 s = scan.count(a3);
        double e = static_cast<double>(static_cast<i128>(s) * mt.value.den - mt.value.num) /
                   static_cast<double>(mt.value.den);
        terms.push_back(e * e);
    }
    return pairwise_sum(terms);
}

i64 l_sum(i64 q1, i64 q2, i64 alpha2, i64 n_box, ConvBackend backend) {
    if (q1 <= 1) throw std::invalid_argument("l_sum: q1 must be > 1");
    if (q2 < 1) throw std::invalid_argument("l_sum: q2 must be >= 1");
    const i64 m = q1 * q2;
    if (m % 2 == 0 || mobius(m) == 0 || gcd64(q1, q2) != 1)
        throw std::invalid_argument("l_sum: q1*q2 must be odd squarefree with coprime parts");
    if (gcd64(norm_mod(alpha2, m), m) != 1)
        throw std::invalid_argument("l_sum: alpha2 not coprime to q1*q2");

    auto line = residue_line_counts(n_box, m);
    std::vector<i64> h1(m, 0), h2(m, 0);
    for (i64 y = 0; y < m; ++y) {
        i64 y2 = mul_mod(y, y, m);
        h1[y2] += line[y];
        h2[mul_mod(norm_mod(alpha2, m), y2, m)] += line[y];
    }
    auto pairs = cyclic_convolve(h1, h2, backend);
    i64 total = 0;
    for (i64 s = 0; s < m; ++s) {
        if (pairs[s] == 0 || gcd64(s, q2) != 1) continue;
        total += pairs[s] * jacobi_symbol(s, q1);
    }
    return total;
}

VarianceSplit variance_split(const Modulus& mod, i64 alpha2, i64 n_box, ConvBackend backend) {
    const i64 q = mod.q;
    SolutionScan scan(mod, alpha2, n_box, CountMode::CoprimeX3, backend);
    const i64 l_line = scan.main_term().l_line;

    VarianceSplit out;

    // V1: one term per divisor q1 > 1 of rad(q); the x3 factor is L^2
    {
        std::vector<double> terms;
        for (i64 q1 : divisors(mod.rad)) {
            if (q1 == 1) continue;
            i64 lv = l_sum(q1, mod.rad / q1, alpha2, n_box, backend);
            terms.push_back(static_cast<double>(lv) * static_cast<double>(lv) *
                            static_cast<double>(l_line) * static_cast<double>(l_line));
        }
        out.v1 = pairwise_sum(terms) / static_cast<double>(mod.phi);
    }

    // V2: all characters with chi != chi0 and chi^2 != chi0. The characters
    // vanish off the units, so the unrestricted pair table from the scan
    // serves as-is.
    {
        auto group = CharacterGroup::build(mod);
        auto line = residue_line_counts(n_box, q);
        const auto& pair_table = scan.pair_table();

        const auto& roots = group->roots();
        const i64 expo = group->group_exponent();
        std::vector<double> terms;
        for (i64 idx = 0; idx < group->size(); ++idx) {
            DirichletCharacter chi = group->character_from_index(idx);
            if (chi.is_principal() || chi.squared().is_principal()) continue;
            auto units = group->angle_units_table(chi);
            std::complex<double> box(0.0, 0.0), tail(0.0, 0.0);
            for (i64 s = 0; s < q; ++s) {
                i64 u = units[s];
                if (u < 0) continue;
                if (pair_table[s] != 0) box += static_cast<double>(pair_table[s]) * roots[u];
                // conj(chi^2)(s) = e(-2u / expo)
                i64 v = (2 * expo - 2 * u) % expo;
                tail += static_cast<double>(line[s]) * roots[v];
            }
            terms.push_back(std::norm(box) * std::norm(tail));
        }
        out.v2 = pairwise_sum(terms) / static_cast<double>(mod.phi);
    }
    return out;
}

ExceptionalScan exceptional_fraction(const Modulus& mod, i64 alpha2, i64 n_box, double delta,
                                     std::optional<i64> sample_size, std::uint64_t seed,
                                     ConvBackend backend) {
    if (delta <= 0) throw std::invalid_argument("exceptional_fraction: delta must be positive");
    SolutionScan scan(mod, alpha2, n_box, CountMode::CoprimeX3, backend);
    const Rational& m = scan.main_term().value;

    std::vector<i64> alphas;
    if (sample_size && *sample_size < mod.phi) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<i64> dist(1, mod.q);
        std::set<i64> chosen;
        while (static_cast<i64>(chosen.size()) < *sample_size) {
            i64 a = dist(rng);
            if (gcd64(a, mod.q) == 1) chosen.insert(a);
        }
        alphas.assign(chosen.begin(), chosen.end());
    } else {
        for (i64 a = 1; a <= mod.q; ++a)
            if (gcd64(a, mod.q) == 1) alphas.push_back(a);
    }

    ExceptionalScan out;
    out.sampled = sample_size && *sample_size < mod.phi;
    out.scanned = static_cast<i64>(alphas.size());
    for (i64 a3 : alphas) {
        i64 s = scan.count(a3);
        bool exceptional;
        if (m.is_zero()) {
            exceptional = (s != 0);
        } else {
            double rel = std::abs(static_cast<double>(static_cast<i128>(s) * m.den - m.num) /
                                  static_cast<double>(m.num));
            exceptional = rel > delta;
        }
        if (exceptional) out.exceptional.push_back(a3);
    }
    out.fraction = out.scanned == 0
                       ? 0.0
                       : static_cast<double>(out.exceptional.size()) / static_cast<double>(out.scanned);
    return out;
}

VarianceReport variance_bound_report(const Modulus& mod, i64 alpha2, i64 n_box, double epsilon,
                                     double deviation_threshold, ConvBackend backend) {
    VarianceReport rep;
    rep.q = mod.q;
    rep.alpha2 = norm_mod(alpha2, mod.q);
    rep.n_box = n_box;
    rep.epsilon = epsilon;
    rep.delta = std::pow(static_cast<double>(mod.q), -epsilon);
    rep.v = variance_direct(mod, alpha2, n_box, backend);
    auto split = variance_split(mod, alpha2, n_box, backend);
    rep.v1 = split.v1;
    rep.v2 = split.v2;
    double n6 = std::pow(static_cast<double>(n_box), 6.0);
    rep.target = rep.delta * n6 / static_cast<double>(mod.q);
    rep.ratio_v = safe_ratio(rep.v, rep.target);
    rep.ratio_v1 = safe_ratio(rep.v1, rep.target);
    rep.ratio_v2 = safe_ratio(rep.v2, rep.target);

    double qeps = std::pow(static_cast<double>(mod.q), epsilon);
    double n2 = static_cast<double>(n_box) * static_cast<double>(n_box);
    for (i64 q1 : divisors(mod.rad)) {
        if (q1 == 1) continue;
        VarianceReport::LTerm term;
        term.q1 = q1;
        term.value = l_sum(q1, mod.rad / q1, alpha2, n_box, backend);
        double av = std::abs(static_cast<double>(term.value));
        term.ratio_coarse = safe_ratio(
            av, static_cast<double>(n_box) * static_cast<double>(q1) * static_cast<double>(q1) * qeps);
        term.ratio_target = safe_ratio(av, std::sqrt(rep.delta) * n2 / qeps);
        rep.l_terms.push_back(term);
    }

    rep.deviation_threshold = deviation_threshold;
    ExceptionalScan exc = exceptional_fraction(mod, alpha2, n_box, deviation_threshold,
                                               std::nullopt, 0, backend);
    rep.exceptional_fraction = exc.fraction;
    rep.exceptional = std::move(exc.exceptional);
    return rep;
}

}  // namespace qcw
