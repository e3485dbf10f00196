#include "qcw/characters.hpp"

#include <algorithm>
#include <cmath>

namespace qcw {

namespace {

i64 lcm64(i64 a, i64 b) { return a / gcd64(a, b) * b; }

i64 find_primitive_root(i64 pe, i64 order) {
    auto order_factors = factorize(order);
    for (i64 g = 2; g < pe; ++g) {
        if (gcd64(g, pe) != 1) continue;
        bool primitive = true;
        for (auto& [ell, e] : order_factors) {
            if (pow_mod(g, order / ell, pe) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::runtime_error("find_primitive_root: no generator found");
}

}  // namespace

// ---------------------------------------------------------------------------
// group construction
// ---------------------------------------------------------------------------

CharacterGroupPtr CharacterGroup::build(const Modulus& m) {
    auto group = std::make_shared<CharacterGroup>();
    group->mod_ = m;
    for (auto& [p, e] : m.factors) {
        Component comp;
        comp.prime = p;
        comp.prime_exp = e;
        comp.pe = 1;
        for (int i = 0; i < e; ++i) comp.pe *= p;
        comp.order = comp.pe / p * (p - 1);
        comp.generator = find_primitive_root(comp.pe, comp.order);
        comp.log.assign(comp.pe, -1);
        i64 x = 1;
        for (i64 k = 0; k < comp.order; ++k) {
            comp.log[x] = static_cast<std::int32_t>(k);
            x = mul_mod(x, comp.generator, comp.pe);
        }
        group->exponent_ = lcm64(group->exponent_, comp.order);
        group->comps_.push_back(std::move(comp));
    }
    group->roots_.resize(group->exponent_);
    for (i64 j = 0; j < group->exponent_; ++j)
        group->roots_[j] = UnitRoot::from_angle(j, group->exponent_).to_complex();
    return group;
}

CharacterGroupPtr CharacterGroup::build(i64 q) { return build(Modulus::make(q)); }

CharacterGroupPtr build_character_group(i64 q) { return CharacterGroup::build(q); }

DirichletCharacter CharacterGroup::principal() const {
    return {shared_from_this(), std::vector<i64>(comps_.size(), 0)};
}

DirichletCharacter CharacterGroup::character_at(std::vector<i64> exponents) const {
    if (exponents.size() != comps_.size())
        throw std::invalid_argument("character_at: wrong exponent count");
    for (size_t i = 0; i < comps_.size(); ++i) exponents[i] = norm_mod(exponents[i], comps_[i].order);
    return {shared_from_this(), std::move(exponents)};
}

DirichletCharacter CharacterGroup::character_from_index(i64 index) const {
    if (index < 0 || index >= size())
        throw std::invalid_argument("character_from_index: index out of range");
    std::vector<i64> exps(comps_.size());
    for (size_t i = 0; i < comps_.size(); ++i) {
        exps[i] = index % comps_[i].order;
        index /= comps_[i].order;
    }
    return {shared_from_this(), std::move(exps)};
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

i64 CharacterGroup::angle_units(const DirichletCharacter& chi, i64 n) const {
    i64 units = 0;
    for (size_t i = 0; i < comps_.size(); ++i) {
        const Component& c = comps_[i];
        std::int32_t k = c.log[norm_mod(n, c.pe)];
        if (k < 0) return -1;
        units += (chi.exponents[i] * k % c.order) * (exponent_ / c.order);
        if (units >= exponent_) units -= exponent_;
    }
    return units;
}

UnitRoot CharacterGroup::evaluate(const DirichletCharacter& chi, i64 n) const {
    i64 u = angle_units(chi, n);
    if (u < 0) return UnitRoot::zero_value();
    return UnitRoot::from_angle(u, exponent_);
}

std::complex<double> CharacterGroup::evaluate_complex(const DirichletCharacter& chi, i64 n) const {
    i64 u = angle_units(chi, n);
    if (u < 0) return {0.0, 0.0};
    return roots_[u];
}

std::vector<i64> CharacterGroup::angle_units_table(const DirichletCharacter& chi) const {
    // per-factor contribution tables first, then one combining pass
    std::vector<std::vector<i64>> part(comps_.size());
    for (size_t i = 0; i < comps_.size(); ++i) {
        const Component& c = comps_[i];
        part[i].assign(c.pe, -1);
        for (i64 r = 0; r < c.pe; ++r)
            if (c.log[r] >= 0)
                part[i][r] = (chi.exponents[i] * c.log[r] % c.order) * (exponent_ / c.order);
    }
    std::vector<i64> table(mod_.q, -1);
    for (i64 n = 0; n < mod_.q; ++n) {
        i64 units = 0;
        for (size_t i = 0; i < comps_.size(); ++i) {
            i64 u = part[i][n % comps_[i].pe];
            if (u < 0) {
                units = -1;
                break;
            }
            units += u;
            if (units >= exponent_) units -= exponent_;
        }
        table[n] = units;
    }
    return table;
}

bool DirichletCharacter::is_principal() const {
    for (i64 a : exponents)
        if (a != 0) return false;
    return true;
}

i64 DirichletCharacter::order() const {
    i64 ord = 1;
    const auto& comps = group->components();
    for (size_t i = 0; i < exponents.size(); ++i)
        ord = lcm64(ord, comps[i].order / gcd64(exponents[i], comps[i].order));
    return ord;
}

DirichletCharacter DirichletCharacter::squared() const {
    std::vector<i64> exps(exponents.size());
    const auto& comps = group->components();
    for (size_t i = 0; i < exponents.size(); ++i) exps[i] = 2 * exponents[i] % comps[i].order;
    return {group, std::move(exps)};
}

UnitRoot DirichletCharacter::operator()(i64 n) const { return group->evaluate(*this, n); }

// ---------------------------------------------------------------------------
// conductor
// ---------------------------------------------------------------------------

ConductorFactorization conductor(const DirichletCharacter& chi) {
    const CharacterGroup& g = *chi.group;
    const Modulus& mod = g.modulus();
    ConductorFactorization out;

    // conductor is multiplicative over the prime-power components: the
    // component of order t is induced mod the smallest p^f with t | phi(p^f)
    for (size_t i = 0; i < g.components().size(); ++i) {
        const auto& c = g.components()[i];
        i64 t = c.order / gcd64(chi.exponents[i], c.order);
        if (t == 1) continue;
        i64 pf = c.prime;
        i64 phi_pf = c.prime - 1;
        while (phi_pf % t != 0) {
            pf *= c.prime;
            phi_pf *= c.prime;
        }
        out.conductor *= pf;
    }
    out.complement = mod.q / out.conductor;
    if (out.conductor == 1) return out;  // principal character

    auto induced = CharacterGroup::build(out.conductor);

    // Determine the exponent of the primitive character at each component of
    // the induced group: lift that component's generator to an integer n that
    // is 1 at every other prime of q, evaluate chi there, and read the angle.
    std::vector<i64> prim_exps(induced->components().size());
    for (size_t j = 0; j < induced->components().size(); ++j) {
        const auto& cj = induced->components()[j];
        std::vector<std::pair<i64, i64>> congruences;
        for (auto& c : g.components()) {
            congruences.push_back({c.prime == cj.prime ? cj.generator : 1, c.pe});
        }
        i64 n = crt_combine(congruences);
        i64 u = g.angle_units(chi, n);
        if (u < 0) throw std::runtime_error("conductor: lift not coprime to q");
        // chi(n) = e(u/E) must be an order-th root of unity at this component
        i128 scaled = (i128)u * cj.order;
        if (scaled % g.group_exponent() != 0)
            throw std::runtime_error("conductor: inconsistent component angle");
        prim_exps[j] = norm_mod(static_cast<i64>(scaled / g.group_exponent()), cj.order);
    }
    out.primitive = induced->character_at(std::move(prim_exps));
    return out;
}

// ---------------------------------------------------------------------------
// order-2 characters
// ---------------------------------------------------------------------------

std::vector<OrderTwoCharacter> order_two_characters(const CharacterGroupPtr& group) {
    const auto& comps = group->components();
    const int omega = static_cast<int>(comps.size());
    std::vector<OrderTwoCharacter> out;
    for (unsigned mask = 1; mask < (1u << omega); ++mask) {
        OrderTwoCharacter entry;
        std::vector<i64> exps(comps.size(), 0);
        entry.q1 = 1;
        for (int i = 0; i < omega; ++i) {
            if (mask & (1u << i)) {
                entry.q1 *= comps[i].prime;
                exps[i] = comps[i].order / 2;  // the unique order-2 component
            }
        }
        entry.chi = group->character_at(std::move(exps));
        out.push_back(std::move(entry));
    }
    std::sort(out.begin(), out.end(),
              [](const OrderTwoCharacter& a, const OrderTwoCharacter& b) { return a.q1 < b.q1; });
    return out;
}

// ---------------------------------------------------------------------------
// character sums
// ---------------------------------------------------------------------------

std::complex<double> char_sum_interval(const DirichletCharacter& chi, i64 m_start, i64 n_len) {
    if (m_start < 0 || n_len < 1)
        throw std::invalid_argument("char_sum_interval: need M >= 0, N >= 1");
    const CharacterGroup& g = *chi.group;
    const auto& roots = g.roots();
    std::complex<double> acc(0.0, 0.0);
    for (i64 n = m_start + 1; n <= m_start + n_len; ++n) {
        i64 u = g.angle_units(chi, n);
        if (u >= 0) acc += roots[u];
    }
    return acc;
}

std::complex<double> char_sum_quadratic_box(const DirichletCharacter& chi, i64 alpha2, i64 n_box,
                                            ConvBackend backend) {
    const CharacterGroup& g = *chi.group;
    const i64 q = g.modulus().q;
    if (gcd64(alpha2, q) != 1)
        throw std::invalid_argument("char_sum_quadratic_box: alpha2 not coprime to q");
    if (n_box < 0) throw std::invalid_argument("char_sum_quadratic_box: N must be >= 0");

    auto line = residue_line_counts(n_box, q);
    std::vector<i64> h1(q, 0), h2(q, 0);
    for (i64 y = 0; y < q; ++y) {
        i64 y2 = mul_mod(y, y, q);
        h1[y2] += line[y];
        h2[mul_mod(alpha2, y2, q)] += line[y];
    }
    auto pairs = cyclic_convolve(h1, h2, backend);

    const auto& roots = g.roots();
    std::complex<double> acc(0.0, 0.0);
    for (i64 s = 0; s < q; ++s) {
        if (pairs[s] == 0) continue;
        i64 u = g.angle_units(chi, s);
        if (u >= 0) acc += static_cast<double>(pairs[s]) * roots[u];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// bound audits
// ---------------------------------------------------------------------------

double burgess_bound(i64 q, i64 n_len, int r, double epsilon) {
    if (r != 2 && r != 3) throw std::invalid_argument("burgess_bound: r must be 2 or 3");
    double rr = static_cast<double>(r);
    return std::pow(static_cast<double>(n_len), 1.0 - 1.0 / rr) *
           std::pow(static_cast<double>(q), (rr + 1.0) / (4.0 * rr * rr) + epsilon);
}

double lindelof_bound(i64 q, i64 n_len, double epsilon) {
    return std::sqrt(static_cast<double>(n_len)) * std::pow(static_cast<double>(q), epsilon);
}

BurgessAudit burgess_ratio(const DirichletCharacter& chi, i64 m_start, i64 n_len, int r,
                           double epsilon) {
    if (chi.is_principal())
        throw std::invalid_argument("burgess_ratio: principal character not admissible");
    BurgessAudit audit;
    audit.empirical = std::abs(char_sum_interval(chi, m_start, n_len));
    audit.bound = burgess_bound(chi.group->modulus().q, n_len, r, epsilon);
    audit.ratio = audit.empirical / audit.bound;
    return audit;
}

double hb_bound_small_r(double radius, i64 q1, int r, i64 q0, double epsilon) {
    double rr = static_cast<double>(r);
    return std::pow(radius, 2.0 - 1.0 / rr) *
           std::pow(static_cast<double>(q1), (rr + 2.0) / (4.0 * rr * rr)) *
           std::pow(static_cast<double>(q0), epsilon);
}

double hb_bound_large_r(double radius, i64 q1, i64 q0, double epsilon) {
    double q1d = static_cast<double>(q1);
    return (std::pow(radius, 5.0 / 3.0) * std::pow(q1d, 5.0 / 36.0) +
            radius * radius * std::pow(q1d, -1.0 / 18.0)) *
           std::pow(static_cast<double>(q0), epsilon);
}

HeathBrownAudit hb_ratio(const DirichletCharacter& chi, i64 qa, i64 qb, i64 qc, double x0,
                         double y0, double radius, int r, double epsilon) {
    const CharacterGroup& g = *chi.group;
    const Modulus& mod = g.modulus();
    if (!mod.squarefree()) throw std::invalid_argument("hb_ratio: modulus must be squarefree");
    if (chi.is_principal()) throw std::invalid_argument("hb_ratio: principal character");
    if (r < 3) throw std::invalid_argument("hb_ratio: r must be >= 3");
    i64 disc = norm_mod(qb * qb - 4 * qa * qc, mod.q);
    if (gcd64(disc, mod.q) != 1)
        throw std::invalid_argument("hb_ratio: form discriminant shares a factor with q");
    if (radius < 0) throw std::invalid_argument("hb_ratio: negative radius");

    HeathBrownAudit audit;
    audit.conductor = conductor(chi).conductor;

    const auto& roots = g.roots();
    std::complex<double> acc(0.0, 0.0);
    const double r2 = radius * radius;
    for (i64 x = static_cast<i64>(std::ceil(x0 - radius)); x <= static_cast<i64>(std::floor(x0 + radius)); ++x) {
        double dx = static_cast<double>(x) - x0;
        double rem = r2 - dx * dx;
        if (rem < 0) continue;
        double dy = std::sqrt(rem);
        for (i64 y = static_cast<i64>(std::ceil(y0 - dy)); y <= static_cast<i64>(std::floor(y0 + dy)); ++y) {
            i128 val = (i128)qa * x * x + (i128)qb * x * y + (i128)qc * y * y;
            i64 s = static_cast<i64>(((val % mod.q) + mod.q) % mod.q);
            ++audit.lattice_points;
            i64 u = g.angle_units(chi, s);
            if (u >= 0) acc += roots[u];
        }
    }
    audit.empirical = std::abs(acc);

    double q1 = static_cast<double>(audit.conductor);
    double rr = static_cast<double>(r);
    if (radius > std::pow(q1, 7.0 / 12.0)) {
        audit.regime = HbRegime::LargeR;
        audit.bound = hb_bound_large_r(radius, audit.conductor, mod.q, epsilon);
    } else if (radius >= std::pow(q1, 0.25 + 1.0 / (2.0 * rr)) &&
               radius <= std::pow(q1, 5.0 / 12.0 + 1.0 / (2.0 * rr))) {
        audit.regime = HbRegime::SmallR;
        audit.bound = hb_bound_small_r(radius, audit.conductor, r, mod.q, epsilon);
    } else {
        audit.regime = HbRegime::Uncovered;
        audit.bound = std::nan("");
    }
    return audit;
}

}  // namespace qcw
