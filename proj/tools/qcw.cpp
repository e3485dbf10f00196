// qcw: a batch workbench for ternary quadratic congruences
// x1^2 + alpha2*x2^2 + alpha3*x3^2 = 0 (mod q).
//
// Subcommands: count, scan-alpha3, variance, smallest, conjecture,
// exceptional-count, gauss-audit, charsum-audit. Tables are emitted as CSV
// (header row, LF endings, wall_ms last), single records optionally as JSON.
// Exit codes: 0 success, 2 configuration error, 1 internal failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcw/arith.hpp"
#include "qcw/characters.hpp"
#include "qcw/counting.hpp"
#include "qcw/diophantine.hpp"
#include "qcw/gauss.hpp"
#include "qcw/parallel.hpp"
#include "qcw/report.hpp"
#include "qcw/variance.hpp"

using nlohmann::json;
using namespace qcw;

namespace {

struct ConfigError : std::runtime_error {
    std::string slug;
    ConfigError(std::string s, const std::string& msg) : std::runtime_error(msg), slug(std::move(s)) {}
};

struct Options {
    i64 q = 0;
    std::string q_range;  // "lo:hi", odd values inclusive
    i64 alpha1 = 1;
    i64 alpha2 = 1;
    i64 alpha3 = 1;
    i64 n_box = -1;  // -1: derive from theta
    double theta = 11.0 / 24.0 + 0.02;
    double epsilon = 0.05;
    double delta = 0.2;
    std::string mode = "coprime-x3";
    std::uint64_t seed = 0;
    std::string alpha3_list;
    i64 sample = 0;         // 0: no explicit sample
    i64 alpha3_limit = 20000;
    i64 height_cap = 0;     // 0: default cap
    bool fast = false;
    bool with_list = false;
    i64 max_c = 201;
    i64 samples = 10;
    int workers = default_workers();
    std::string out;
    std::string cache_dir;
    bool emit_json = false;
};

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_i64(i64 v) { return std::to_string(v); }

std::vector<i64> resolve_q_list(const Options& opt) {
    std::vector<i64> qs;
    if (!opt.q_range.empty()) {
        auto colon = opt.q_range.find(':');
        if (colon == std::string::npos)
            throw ConfigError("bad-range", "q-range must look like lo:hi");
        i64 lo = 0, hi = 0;
        try {
            lo = std::stoll(opt.q_range.substr(0, colon));
            hi = std::stoll(opt.q_range.substr(colon + 1));
        } catch (...) {
            throw ConfigError("bad-range", "q-range must contain integers");
        }
        if (lo > hi) throw ConfigError("bad-range", "q-range lower bound exceeds upper bound");
        for (i64 q = lo % 2 == 0 ? lo + 1 : lo; q <= hi; q += 2)
            if (q >= 3) qs.push_back(q);
        if (qs.empty()) throw ConfigError("bad-range", "q-range contains no odd q >= 3");
    } else {
        if (opt.q < 3 || opt.q % 2 == 0)
            throw ConfigError("bad-q", "q must be odd and >= 3");
        qs.push_back(opt.q);
    }
    return qs;
}

i64 resolve_n(const Options& opt, i64 q) {
    if (opt.n_box >= 0) {
        if (opt.n_box > q) throw ConfigError("bad-n", "N must satisfy 0 <= N <= q");
        return opt.n_box;
    }
    if (opt.theta <= 0.0 || opt.theta > 1.0)
        throw ConfigError("bad-theta", "theta must lie in (0, 1]");
    i64 n = static_cast<i64>(std::ceil(std::pow(static_cast<double>(q), opt.theta)));
    return std::min(n, q);
}

CountMode resolve_mode(const Options& opt) {
    auto m = count_mode_from_name(opt.mode);
    if (!m) throw ConfigError("bad-mode", "mode must be coprime-x3 | coprime-all | nontrivial");
    return *m;
}

// ---------------------------------------------------------------------------
// emission and cache plumbing
// ---------------------------------------------------------------------------

struct Payload {
    std::string primary;
    std::map<std::string, std::string> aux;  // suffix -> content
};

void emit_payload(const Options& opt, const Payload& payload) {
    if (opt.out.empty()) {
        std::fwrite(payload.primary.data(), 1, payload.primary.size(), stdout);
        for (auto& [suffix, content] : payload.aux) {
            std::fputs(content.c_str(), stderr);
            if (!content.empty() && content.back() != '\n') std::fputc('\n', stderr);
        }
        return;
    }
    {
        std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
        if (!f.good()) throw std::runtime_error("cannot open output file: " + opt.out);
        f.write(payload.primary.data(), static_cast<std::streamsize>(payload.primary.size()));
    }
    for (auto& [suffix, content] : payload.aux) {
        std::string path = opt.out + suffix;
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f.good()) throw std::runtime_error("cannot open output file: " + path);
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
}

std::string envelope_pack(const Payload& p) {
    json j{{"primary", p.primary}, {"aux", json::object()}};
    for (auto& [k, v] : p.aux) j["aux"][k] = v;
    return j.dump();
}

Payload envelope_unpack(const std::string& s) {
    json j = json::parse(s);
    Payload p;
    p.primary = j.at("primary").get<std::string>();
    for (auto& [k, v] : j.at("aux").items()) p.aux[k] = v.get<std::string>();
    return p;
}

ResultCache open_cache(const Options& opt) {
    std::string dir = opt.cache_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("QCW_CACHE_DIR")) dir = env;
    }
    if (dir.empty()) return ResultCache();
    ResultCache cache(dir);
    if (!cache.warning().empty()) std::fprintf(stderr, "warning: %s\n", cache.warning().c_str());
    return cache;
}

/// Runs compute() unless the cache already holds this configuration.
int run_cached(const Options& opt, const std::string& kind,
               std::vector<std::pair<std::string, std::string>> key_fields,
               const std::function<Payload()>& compute) {
    key_fields.insert(key_fields.begin(), {"kind", kind});
    key_fields.push_back({"json", opt.emit_json ? "1" : "0"});
    ResultCache cache = open_cache(opt);
    std::string key = cache_key(key_fields);
    if (auto hit = cache.get(key)) {
        emit_payload(opt, envelope_unpack(*hit));
        return 0;
    }
    Payload payload = compute();
    cache.put(key, envelope_pack(payload));
    emit_payload(opt, payload);
    return 0;
}

json config_json(const Options& opt, std::initializer_list<std::string> fields) {
    json c;
    for (const std::string& f : fields) {
        if (f == "q") c["q"] = opt.q;
        else if (f == "alpha1") c["alpha1"] = opt.alpha1;
        else if (f == "alpha2") c["alpha2"] = opt.alpha2;
        else if (f == "alpha3") c["alpha3"] = opt.alpha3;
        else if (f == "epsilon") c["epsilon"] = opt.epsilon;
        else if (f == "delta") c["delta"] = opt.delta;
        else if (f == "mode") c["mode"] = opt.mode;
        else if (f == "seed") c["seed"] = opt.seed;
    }
    c["schema"] = kSchemaVersion;
    c["version"] = kLibraryVersion;
    return c;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

Payload run_count(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    i64 q = resolve_q_list(opt).at(0);
    i64 n = resolve_n(opt, q);
    CountMode mode = resolve_mode(opt);
    Modulus mod = Modulus::make(q);
    TernaryForm form = TernaryForm::make(mod, opt.alpha1, opt.alpha2, opt.alpha3);
    SolutionStats st = solution_stats(form, n, mode);

    Payload p;
    if (opt.emit_json) {
        json j = config_json(opt, {"alpha1", "alpha2", "alpha3", "mode"});
        j["kind"] = "count";
        j["q"] = q;
        j["N"] = n;
        j["S"] = st.count;
        j["M"] = st.main.to_string();
        j["M_value"] = st.main.to_double();
        j["E"] = st.error;
        j["wall_ms"] = wall_ms_since(t0);
        p.primary = j.dump(2) + "\n";
        return p;
    }
    CsvTable t({"schema", "version", "kind", "q", "alpha1", "alpha2", "alpha3", "N", "mode", "S", "M", "E",
                "wall_ms"});
    t.add_row({kSchemaVersion, kLibraryVersion, "count", fmt_i64(q), fmt_i64(opt.alpha1), fmt_i64(form.alpha2),
               fmt_i64(form.alpha3), fmt_i64(n), count_mode_name(mode), fmt_i64(st.count),
               st.main.to_string(), format_double(st.error), format_double(wall_ms_since(t0))});
    p.primary = t.to_string();
    return p;
}

Payload run_scan_alpha3(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    i64 q = resolve_q_list(opt).at(0);
    i64 n = resolve_n(opt, q);
    CountMode mode = resolve_mode(opt);
    if (opt.delta <= 0) throw ConfigError("bad-delta", "delta must be positive");
    Modulus mod = Modulus::make(q);
    if (gcd64(norm_mod(opt.alpha2, q), q) != 1)
        throw ConfigError("bad-alpha", "alpha2 must be coprime to q");

    SolutionScan scan(mod, opt.alpha2, n, mode);
    MainTerm mt = main_term_exact(mod, opt.alpha2, n);

    // choose the alpha3 set: explicit list > explicit sample > all (auto-sampled
    // above the limit)
    std::vector<i64> alphas;
    bool sampled = false;
    if (!opt.alpha3_list.empty()) {
        std::stringstream ss(opt.alpha3_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            i64 a = 0;
            try {
                a = std::stoll(item);
            } catch (...) {
                throw ConfigError("bad-alpha", "alpha3 list must contain integers");
            }
            if (gcd64(norm_mod(a, q), q) != 1)
                throw ConfigError("bad-alpha", "alpha3 values must be coprime to q");
            alphas.push_back(norm_mod(a, q) == 0 ? q : norm_mod(a, q));
        }
        std::sort(alphas.begin(), alphas.end());
        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    } else {
        i64 want = opt.sample > 0 ? opt.sample : (mod.phi > opt.alpha3_limit ? opt.alpha3_limit : 0);
        if (want > 0 && want < mod.phi) {
            sampled = true;
            std::mt19937_64 rng(opt.seed);
            std::uniform_int_distribution<i64> dist(1, q);
            std::set<i64> chosen;
            while (static_cast<i64>(chosen.size()) < want) {
                i64 a = dist(rng);
                if (gcd64(a, q) == 1) chosen.insert(a);
            }
            alphas.assign(chosen.begin(), chosen.end());
        } else {
            for (i64 a = 1; a <= q; ++a)
                if (gcd64(a, q) == 1) alphas.push_back(a);
        }
    }

    std::vector<i64> counts(alphas.size());
    parallel_for(static_cast<i64>(alphas.size()), opt.workers,
                 [&](i64 i) { counts[i] = scan.count(alphas[i]); });

    const double m_val = mt.value.to_double();
    CsvTable t({"schema", "version", "kind", "q", "alpha2", "N", "mode", "alpha3", "S", "E", "rel_dev",
                "exceptional", "wall_ms"});
    i64 exceptional = 0;
    i128 total_s = 0;
    for (size_t i = 0; i < alphas.size(); ++i) {
        total_s += counts[i];
        double e = static_cast<double>(static_cast<i128>(counts[i]) * mt.value.den - mt.value.num) /
                   static_cast<double>(mt.value.den);
        double rel = mt.value.is_zero() ? (counts[i] == 0 ? 0.0 : INFINITY)
                                        : std::abs(e) / std::abs(m_val);
        bool exc = rel > opt.delta;
        if (exc) ++exceptional;
        t.add_row({kSchemaVersion, kLibraryVersion, "scan-alpha3", fmt_i64(q), fmt_i64(norm_mod(opt.alpha2, q)),
                   fmt_i64(n), count_mode_name(mode), fmt_i64(alphas[i]), fmt_i64(counts[i]),
                   format_double(e), format_double(rel), exc ? "1" : "0", ""});
    }

    json summary = config_json(opt, {"alpha2", "mode", "seed", "delta"});
    summary["kind"] = "scan-alpha3-summary";
    summary["q"] = q;
    summary["N"] = n;
    summary["M"] = mt.value.to_string();
    summary["K"] = mt.k_pairs;
    summary["L"] = mt.l_line;
    summary["scanned"] = static_cast<i64>(alphas.size());
    summary["sampled"] = sampled;
    summary["exceptional_count"] = exceptional;
    summary["exceptional_fraction"] =
        alphas.empty() ? 0.0 : static_cast<double>(exceptional) / static_cast<double>(alphas.size());
    summary["mean_S"] =
        alphas.empty() ? 0.0 : static_cast<double>(total_s) / static_cast<double>(alphas.size());
    summary["mean_S_over_M"] =
        mt.value.is_zero() || alphas.empty()
            ? 0.0
            : static_cast<double>(total_s) / (static_cast<double>(alphas.size()) * m_val);
    summary["wall_ms"] = wall_ms_since(t0);

    Payload p;
    p.primary = t.to_string();
    p.aux[".summary.json"] = summary.dump(2) + "\n";
    return p;
}

Payload run_variance(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    if (opt.delta <= 0) throw ConfigError("bad-delta", "delta must be positive");
    CsvTable t({"schema", "version", "kind", "row", "q", "alpha2", "N", "epsilon", "V", "V1", "V2",
                "target", "ratio_V", "ratio_V1", "ratio_V2", "delta", "exc_fraction", "exc_count",
                "q1", "L", "ratio_coarse", "ratio_target", "wall_ms"});
    for (i64 q : resolve_q_list(opt)) {
        i64 n = resolve_n(opt, q);
        Modulus mod = Modulus::make(q);
        if (gcd64(norm_mod(opt.alpha2, q), q) != 1)
            throw ConfigError("bad-alpha", "alpha2 must be coprime to q");
        VarianceReport rep = variance_bound_report(mod, opt.alpha2, n, opt.epsilon, opt.delta);
        t.add_row({kSchemaVersion, kLibraryVersion, "variance", "variance", fmt_i64(q),
                   fmt_i64(rep.alpha2), fmt_i64(n), format_double(opt.epsilon),
                   format_double(rep.v), format_double(rep.v1), format_double(rep.v2),
                   format_double(rep.target), format_double(rep.ratio_v),
                   format_double(rep.ratio_v1), format_double(rep.ratio_v2),
                   format_double(rep.deviation_threshold), format_double(rep.exceptional_fraction),
                   fmt_i64(static_cast<i64>(rep.exceptional.size())), "", "", "", "", ""});
        for (auto& lt : rep.l_terms) {
            t.add_row({kSchemaVersion, kLibraryVersion, "variance", "lterm", fmt_i64(q),
                       fmt_i64(rep.alpha2), fmt_i64(n), format_double(opt.epsilon), "", "", "", "",
                       "", "", "", "", "", "", fmt_i64(lt.q1), fmt_i64(lt.value),
                       format_double(lt.ratio_coarse), format_double(lt.ratio_target), ""});
        }
    }
    t.add_row({kSchemaVersion, kLibraryVersion, "variance", "done", "", "", "", "", "", "", "", "",
               "", "", "", "", "", "", "", "", "", "", format_double(wall_ms_since(t0))});
    Payload p;
    p.primary = t.to_string();
    return p;
}

Payload run_smallest(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    i64 q = resolve_q_list(opt).at(0);
    CountMode mode = resolve_mode(opt);
    Modulus mod = Modulus::make(q);
    TernaryForm form = TernaryForm::make(mod, opt.alpha1, opt.alpha2, opt.alpha3);
    SmallestSolution sol = smallest_solution(form, mode, opt.height_cap);

    Payload p;
    if (opt.emit_json) {
        json j = config_json(opt, {"alpha1", "alpha2", "alpha3", "mode"});
        j["kind"] = "smallest";
        j["q"] = q;
        j["found"] = sol.found;
        j["x1"] = sol.x1;
        j["x2"] = sol.x2;
        j["x3"] = sol.x3;
        j["height"] = sol.height;
        j["wall_ms"] = wall_ms_since(t0);
        p.primary = j.dump(2) + "\n";
        return p;
    }
    CsvTable t({"schema", "version", "kind", "q", "alpha1", "alpha2", "alpha3", "mode", "found", "x1", "x2",
                "x3", "height", "wall_ms"});
    t.add_row({kSchemaVersion, kLibraryVersion, "smallest", fmt_i64(q), fmt_i64(opt.alpha1), fmt_i64(form.alpha2),
               fmt_i64(form.alpha3), count_mode_name(mode), sol.found ? "1" : "0", fmt_i64(sol.x1),
               fmt_i64(sol.x2), fmt_i64(sol.x3), fmt_i64(sol.height),
               format_double(wall_ms_since(t0))});
    p.primary = t.to_string();
    return p;
}

Payload run_conjecture(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    i64 q = resolve_q_list(opt).at(0);
    if (opt.fast && norm_mod(opt.alpha1, q) != 1)
        throw ConfigError("bad-alpha", "--fast requires alpha1 = 1");
    ConjectureReport rep = opt.fast
                               ? conjecture_rhs_fast(q, opt.alpha2, opt.alpha3, opt.epsilon)
                               : conjecture_rhs_full(q, opt.alpha1, opt.alpha2, opt.alpha3,
                                                     opt.epsilon);
    auto beta_str = [&](i64 bnum) { return Rational(bnum, q).to_string(); };

    Payload p;
    if (opt.emit_json) {
        json j = config_json(opt, {"alpha1", "alpha2", "alpha3", "epsilon"});
        j["kind"] = "conjecture";
        j["q"] = q;
        j["method"] = opt.fast ? "fast" : "full";
        j["rhs"] = rep.rhs_value;
        j["floor_dominates"] = rep.floor_dominates;
        j["argmax_r"] = rep.argmax_r;
        j["max_abs_beta"] = beta_str(rep.max_abs_beta_num);
        j["beta"] = {beta_str(rep.beta_nums[0]), beta_str(rep.beta_nums[1]),
                     beta_str(rep.beta_nums[2])};
        j["wall_ms"] = wall_ms_since(t0);
        p.primary = j.dump(2) + "\n";
        return p;
    }
    CsvTable t({"schema", "version", "kind", "q", "alpha1", "alpha2", "alpha3", "epsilon", "method", "rhs",
                "floor_dominates", "argmax_r", "beta1", "beta2", "beta3", "wall_ms"});
    t.add_row({kSchemaVersion, kLibraryVersion, "conjecture", fmt_i64(q), fmt_i64(rep.alpha[0]),
               fmt_i64(rep.alpha[1]), fmt_i64(rep.alpha[2]), format_double(opt.epsilon),
               opt.fast ? "fast" : "full", format_double(rep.rhs_value),
               rep.floor_dominates ? "1" : "0", fmt_i64(rep.argmax_r), beta_str(rep.beta_nums[0]),
               beta_str(rep.beta_nums[1]), beta_str(rep.beta_nums[2]),
               format_double(wall_ms_since(t0))});
    p.primary = t.to_string();
    return p;
}

Payload run_exceptional_count(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    CsvTable t({"schema", "version", "kind", "q", "phi", "count", "fraction_of_phi", "values", "wall_ms"});
    for (i64 q : resolve_q_list(opt)) {
        ExceptionalAlphaCount ec = exceptional_alpha_count(q);
        i64 phi = euler_phi(q);
        std::string values;
        if (opt.with_list && !ec.values.empty()) {
            for (size_t i = 0; i < ec.values.size(); ++i) {
                if (i) values += ';';
                values += fmt_i64(ec.values[i]);
            }
        }
        t.add_row({kSchemaVersion, kLibraryVersion, "exceptional-count", fmt_i64(q), fmt_i64(phi), fmt_i64(ec.count),
                   format_double(static_cast<double>(ec.count) / static_cast<double>(phi)), values,
                   ""});
    }
    t.add_row({kSchemaVersion, kLibraryVersion, "exceptional-count", "", "", "", "", "done",
               format_double(wall_ms_since(t0))});
    Payload p;
    p.primary = t.to_string();
    return p;
}

Payload run_gauss_audit(const Options& opt, int* failures_out) {
    auto t0 = std::chrono::steady_clock::now();
    CsvTable t({"schema", "version", "kind", "c", "closed_form_err", "relation_err", "t_sum_max_abs", "ok",
                "wall_ms"});
    int failures = 0;
    for (i64 c = 3; c <= opt.max_c; c += 2) {
        if (mobius(c) == 0) continue;
        double closed_err = 0, relation_err = 0;
        i64 tsum_max = 0;
        double sqrt_c = std::sqrt(static_cast<double>(c));
        for (i64 a = 1; a <= c; ++a) {
            if (gcd64(a, c) != 1) continue;
            auto direct = gauss_sum(a, c, GaussMethod::Direct);
            auto closed = gauss_sum(a, c, GaussMethod::ClosedForm);
            closed_err = std::max(closed_err, std::abs(direct.value - closed.value) / sqrt_c);
            tsum_max = std::max(tsum_max, std::abs(t_sum(c, a)));
        }
        for (i64 nres = 0; nres < c; ++nres) {
            double err = std::abs(jacobi_via_gauss(nres, c) -
                                  static_cast<double>(jacobi_symbol(nres, c)));
            relation_err = std::max(relation_err, err);
        }
        bool ok = closed_err <= 1e-6 && relation_err <= 1e-6 && tsum_max == 0;
        if (!ok) ++failures;
        t.add_row({kSchemaVersion, kLibraryVersion, "gauss-audit", fmt_i64(c), format_double(closed_err),
                   format_double(relation_err), fmt_i64(tsum_max), ok ? "1" : "0", ""});
    }
    t.add_row({kSchemaVersion, kLibraryVersion, "gauss-audit", "", "", "", "", failures == 0 ? "all-ok" : "FAILED",
               format_double(wall_ms_since(t0))});
    *failures_out = failures;
    Payload p;
    p.primary = t.to_string();
    return p;
}

Payload run_charsum_audit(const Options& opt) {
    auto t0 = std::chrono::steady_clock::now();
    i64 q = resolve_q_list(opt).at(0);
    Modulus mod = Modulus::make(q);
    auto group = CharacterGroup::build(mod);
    std::mt19937_64 rng(opt.seed);

    auto random_nonprincipal = [&]() {
        while (true) {
            i64 idx = static_cast<i64>(rng() % static_cast<std::uint64_t>(group->size()));
            DirichletCharacter chi = group->character_from_index(idx);
            if (!chi.is_principal()) return chi;
        }
    };

    CsvTable t({"schema", "version", "kind", "row", "q", "chi_index", "conductor", "M", "N_or_R", "r",
                "epsilon", "empirical", "bound", "lindelof_bound", "ratio", "regime", "wall_ms"});

    for (i64 s = 0; s < opt.samples; ++s) {
        DirichletCharacter chi = random_nonprincipal();
        i64 chi_idx = 0;  // recover a printable index
        {
            i64 radix = 1;
            for (size_t i = 0; i < chi.exponents.size(); ++i) {
                chi_idx += chi.exponents[i] * radix;
                radix *= group->components()[i].order;
            }
        }
        double u = 0.3 + 0.4 * (static_cast<double>(rng() % 1000) / 1000.0);
        i64 n_len = std::max<i64>(1, static_cast<i64>(std::pow(static_cast<double>(q), u)));
        BurgessAudit ba = burgess_ratio(chi, 0, n_len, 2, opt.epsilon);
        t.add_row({kSchemaVersion, kLibraryVersion, "charsum-audit", "burgess", fmt_i64(q), fmt_i64(chi_idx), "",
                   "0", fmt_i64(n_len), "2", format_double(opt.epsilon),
                   format_double(ba.empirical), format_double(ba.bound),
                   format_double(lindelof_bound(q, n_len, opt.epsilon)), format_double(ba.ratio),
                   "", ""});
    }

    if (mod.squarefree()) {
        for (i64 s = 0; s < opt.samples; ++s) {
            DirichletCharacter chi = random_nonprincipal();
            // small random diagonal form with unit discriminant
            i64 a2;
            do {
                a2 = 1 + static_cast<i64>(rng() % 97);
            } while (gcd64(norm_mod(4 * a2, q), q) != 1);
            double u = 0.2 + 0.45 * (static_cast<double>(rng() % 1000) / 1000.0);
            double radius = std::pow(static_cast<double>(q), u);
            HeathBrownAudit ha = hb_ratio(chi, 1, 0, a2, 0.0, 0.0, radius, 3, opt.epsilon);
            const char* regime = ha.regime == HbRegime::SmallR
                                     ? "small-R"
                                     : (ha.regime == HbRegime::LargeR ? "large-R" : "uncovered");
            t.add_row({kSchemaVersion, kLibraryVersion, "charsum-audit", "heath-brown", fmt_i64(q), "",
                       fmt_i64(ha.conductor), "", format_double(radius), "3",
                       format_double(opt.epsilon), format_double(ha.empirical),
                       std::isnan(ha.bound) ? "" : format_double(ha.bound), "",
                       std::isnan(ha.bound) ? "" : format_double(ha.empirical / ha.bound), regime,
                       ""});
        }
    }

    // Polya-Vinogradov rows: max prefix sum against sqrt(q) * ln(q)
    for (i64 s = 0; s < std::min<i64>(opt.samples, group->size() - 1); ++s) {
        DirichletCharacter chi = random_nonprincipal();
        std::complex<double> acc(0, 0);
        double peak = 0;
        for (i64 nval = 1; nval <= q; ++nval) {
            acc += group->evaluate_complex(chi, nval);
            peak = std::max(peak, std::abs(acc));
        }
        double pv = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));
        t.add_row({kSchemaVersion, kLibraryVersion, "charsum-audit", "polya-vinogradov", fmt_i64(q), "", "", "",
                   fmt_i64(q), "", "", format_double(peak), format_double(pv), "",
                   format_double(peak / pv), "", ""});
    }

    t.add_row({kSchemaVersion, kLibraryVersion, "charsum-audit", "done", "", "", "", "", "", "",
               "", "", "", "", "", "", format_double(wall_ms_since(t0))});
    Payload p;
    p.primary = t.to_string();
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for ternary quadratic congruences x1^2+a2*x2^2+a3*x3^2 = 0 (mod q)"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_range) {
        sub->add_option("--q", opt.q, "odd modulus q >= 3");
        if (with_range) sub->add_option("--q-range", opt.q_range, "inclusive odd range lo:hi");
        sub->add_option("--out", opt.out, "output file (default: stdout)");
        sub->add_option("--cache-dir", opt.cache_dir,
                        "result cache directory (or QCW_CACHE_DIR env)");
        sub->add_flag("--json", opt.emit_json, "emit a JSON record instead of CSV");
        sub->add_option("--workers", opt.workers, "worker threads");
    };

    CLI::App* c_count = app.add_subcommand("count", "one solution count S, main term M, error E");
    add_common(c_count, false);
    c_count->add_option("--alpha1", opt.alpha1);
    c_count->add_option("--alpha2", opt.alpha2)->required();
    c_count->add_option("--alpha3", opt.alpha3)->required();
    c_count->add_option("--N", opt.n_box);
    c_count->add_option("--theta", opt.theta, "N = ceil(q^theta) when --N is absent");
    c_count->add_option("--mode", opt.mode);

    CLI::App* c_scan = app.add_subcommand("scan-alpha3", "per-alpha3 table plus summary");
    add_common(c_scan, false);
    c_scan->add_option("--alpha2", opt.alpha2)->required();
    c_scan->add_option("--N", opt.n_box);
    c_scan->add_option("--theta", opt.theta);
    c_scan->add_option("--mode", opt.mode);
    c_scan->add_option("--alpha3-list", opt.alpha3_list, "comma-separated alpha3 values");
    c_scan->add_option("--sample", opt.sample, "sample size from Phi(q)");
    c_scan->add_option("--alpha3-limit", opt.alpha3_limit, "auto-sample above this phi(q)");
    c_scan->add_option("--delta", opt.delta, "relative deviation threshold");
    c_scan->add_option("--seed", opt.seed);

    CLI::App* c_var = app.add_subcommand("variance", "V, V1, V2 and bound ratios");
    add_common(c_var, true);
    c_var->add_option("--alpha2", opt.alpha2)->required();
    c_var->add_option("--N", opt.n_box);
    c_var->add_option("--theta", opt.theta);
    c_var->add_option("--epsilon", opt.epsilon);
    c_var->add_option("--delta", opt.delta, "relative deviation threshold");

    CLI::App* c_small = app.add_subcommand("smallest", "smallest admissible solution");
    add_common(c_small, false);
    c_small->add_option("--alpha1", opt.alpha1);
    c_small->add_option("--alpha2", opt.alpha2)->required();
    c_small->add_option("--alpha3", opt.alpha3)->required();
    c_small->add_option("--mode", opt.mode);
    c_small->add_option("--height-cap", opt.height_cap, "0 = ceil(q^0.725)");

    CLI::App* c_conj = app.add_subcommand("conjecture", "height-bound report");
    add_common(c_conj, false);
    c_conj->add_option("--alpha1", opt.alpha1);
    c_conj->add_option("--alpha2", opt.alpha2)->required();
    c_conj->add_option("--alpha3", opt.alpha3)->required();
    c_conj->add_option("--epsilon", opt.epsilon);
    c_conj->add_flag("--fast", opt.fast, "restricted scan r < q^(1/3); needs alpha1 = 1");

    CLI::App* c_exc = app.add_subcommand("exceptional-count", "count of small-denominator alpha3");
    add_common(c_exc, true);
    c_exc->add_flag("--list", opt.with_list, "include the values column (q <= 1e5)");

    CLI::App* c_gauss = app.add_subcommand("gauss-audit", "Gauss sum identity suites");
    add_common(c_gauss, false);
    c_gauss->add_option("--max-c", opt.max_c);

    CLI::App* c_char = app.add_subcommand("charsum-audit", "Burgess/Heath-Brown/P-V ratio tables");
    add_common(c_char, false);
    c_char->add_option("--samples", opt.samples);
    c_char->add_option("--seed", opt.seed);
    c_char->add_option("--epsilon", opt.epsilon);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: bad-usage: %s\n", e.what());
        return 2;
    }

    try {
        auto kv = [&](std::initializer_list<const char*> keys) {
            std::vector<std::pair<std::string, std::string>> fields;
            for (const char* k : keys) {
                std::string key = k;
                std::string val;
                if (key == "q") val = std::to_string(opt.q);
                else if (key == "q_range") val = opt.q_range;
                else if (key == "alpha1") val = std::to_string(opt.alpha1);
                else if (key == "alpha2") val = std::to_string(opt.alpha2);
                else if (key == "alpha3") val = std::to_string(opt.alpha3);
                else if (key == "N") val = std::to_string(opt.n_box);
                else if (key == "theta") val = format_double(opt.theta);
                else if (key == "epsilon") val = format_double(opt.epsilon);
                else if (key == "delta") val = format_double(opt.delta);
                else if (key == "mode") val = opt.mode;
                else if (key == "seed") val = std::to_string(opt.seed);
                else if (key == "alpha3_list") val = opt.alpha3_list;
                else if (key == "sample") val = std::to_string(opt.sample);
                else if (key == "alpha3_limit") val = std::to_string(opt.alpha3_limit);
                else if (key == "height_cap") val = std::to_string(opt.height_cap);
                else if (key == "fast") val = opt.fast ? "1" : "0";
                else if (key == "list") val = opt.with_list ? "1" : "0";
                else if (key == "max_c") val = std::to_string(opt.max_c);
                else if (key == "samples") val = std::to_string(opt.samples);
                fields.push_back({key, val});
            }
            return fields;
        };

        if (app.got_subcommand(c_count))
            return run_cached(opt, "count",
                              kv({"q", "alpha1", "alpha2", "alpha3", "N", "theta", "mode"}),
                              [&] { return run_count(opt); });
        if (app.got_subcommand(c_scan))
            return run_cached(opt, "scan-alpha3",
                              kv({"q", "alpha2", "N", "theta", "mode", "alpha3_list", "sample",
                                  "alpha3_limit", "delta", "seed"}),
                              [&] { return run_scan_alpha3(opt); });
        if (app.got_subcommand(c_var))
            return run_cached(opt, "variance",
                              kv({"q", "q_range", "alpha2", "N", "theta", "epsilon", "delta"}),
                              [&] { return run_variance(opt); });
        if (app.got_subcommand(c_small))
            return run_cached(opt, "smallest",
                              kv({"q", "alpha1", "alpha2", "alpha3", "mode", "height_cap"}),
                              [&] { return run_smallest(opt); });
        if (app.got_subcommand(c_conj))
            return run_cached(opt, "conjecture",
                              kv({"q", "alpha1", "alpha2", "alpha3", "epsilon", "fast"}),
                              [&] { return run_conjecture(opt); });
        if (app.got_subcommand(c_exc))
            return run_cached(opt, "exceptional-count", kv({"q", "q_range", "list"}),
                              [&] { return run_exceptional_count(opt); });
        if (app.got_subcommand(c_gauss)) {
            // audits are never served from the cache: the exit code is the verdict
            int failures = 0;
            emit_payload(opt, run_gauss_audit(opt, &failures));
            return failures == 0 ? 0 : 1;
        }
        if (app.got_subcommand(c_char))
            return run_cached(opt, "charsum-audit", kv({"q", "samples", "seed", "epsilon"}),
                              [&] { return run_charsum_audit(opt); });
        std::fprintf(stderr, "error: bad-usage: no subcommand\n");
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.slug.c_str(), e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: invalid-config: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return 1;
    }
}
