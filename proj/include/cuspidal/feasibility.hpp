#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cuspidal/cusp.hpp"
#include "cuspidal/picard.hpp"

namespace cuspidal {

/// One cuspidal-configuration candidate: surface, type and cusps.
/// kodaira_nonneg asserts kbar(F_e \ C) >= 0; it is auto-set for two
/// or more cusps (where it always holds) and otherwise caller-supplied.
struct CurveSpec {
    SurfaceId surface;
    DivisorClass cls;
    std::vector<MultiplicitySequence> config;
    bool kodaira_nonneg = false;

    CurveSpec(SurfaceId s, DivisorClass c, std::vector<MultiplicitySequence> cfg,
              bool kodaira = false)
        : surface(s), cls(c), config(std::move(cfg)),
          kodaira_nonneg(kodaira || config.size() >= 2) {
        if (!is_curve_class(cls))
            throw std::invalid_argument("curve class must have b > 0, a >= 0");
    }

    Int num_cusps() const { return static_cast<Int>(config.size()); }

    Int delta_sum() const {
        Int d = 0;
        for (const auto& s : config) d += delta(s);
        return d;
    }

    Int m_number_sum() const {
        Int m = 0;
        for (const auto& s : config) m += m_number(s);
        return m;
    }

    /// Largest cusp multiplicity, 0 when smooth.
    Int max_multiplicity() const {
        Int m = 0;
        for (const auto& s : config) m = std::max(m, s.head());
        return m;
    }

    /// F_0 ruling swap (a,b) -> (b,a).
    CurveSpec swap_rulings() const {
        if (surface.e != 0) throw std::logic_error("swap_rulings only applies on F_0");
        return CurveSpec(surface, DivisorClass{cls.b, cls.a}, config, kodaira_nonneg);
    }
};

inline Int geometric_genus(SurfaceId s, DivisorClass c,
                           const std::vector<MultiplicitySequence>& config) {
    Int g = arithmetic_genus(s, c);
    for (const auto& seq : config) g -= delta(seq);
    if (g < 0)
        throw std::domain_error("impossible configuration: delta sum exceeds arithmetic genus by " +
                                std::to_string(-g));
    return g;
}

inline Int geometric_genus(const CurveSpec& spec) {
    return geometric_genus(spec.surface, spec.cls, spec.config);
}

enum class Verdict { Pass, Fail, Skipped, Error };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Skipped: return "skipped";
        default: return "error";
    }
}

/// Verdict plus the witness numbers that decided it.
struct CheckResult {
    Verdict verdict = Verdict::Skipped;
    std::string note;
    std::vector<std::pair<std::string, Int>> data;

    bool passed() const { return verdict == Verdict::Pass; }
    bool failed() const { return verdict == Verdict::Fail || verdict == Verdict::Error; }
};

inline CheckResult check_rationality(const CurveSpec& spec) {
    Int pa = arithmetic_genus(spec.surface, spec.cls);
    Int g = pa - spec.delta_sum();
    CheckResult r;
    r.data = {{"genus", g}};
    if (g == 0)
        r.verdict = Verdict::Pass;
    else {
        r.verdict = Verdict::Fail;
        r.note = g < 0 ? "delta sum exceeds arithmetic genus" : "positive genus";
    }
    return r;
}

/// m <= b for every cusp (each cusp sits on a fiber, and L.C = b).
inline CheckResult check_mult_vs_b(const CurveSpec& spec) {
    CheckResult r;
    r.verdict = Verdict::Pass;
    for (const auto& seq : spec.config) {
        if (seq.head() > spec.cls.b) {
            r.verdict = Verdict::Fail;
            r.note = seq.format() + " has multiplicity " + std::to_string(seq.head()) +
                     " > b = " + std::to_string(spec.cls.b);
            break;
        }
    }
    r.data = {{"max_multiplicity", spec.max_multiplicity()}, {"b", spec.cls.b}};
    return r;
}

/// 2b + 2g - 2, with min(a,b) instead of b on F_0.
inline Int ramification_budget(const CurveSpec& spec) {
    Int g = geometric_genus(spec);
    Int fiber_degree = spec.surface.e == 0 ? std::min(spec.cls.a, spec.cls.b) : spec.cls.b;
    return 2 * fiber_degree + 2 * g - 2;
}

/// Hurwitz bound: sum(m_j - 1) <= 2b + 2g - 2 (min(a,b) on F_0).
/// Stated for s > 0 cusps; skipped on smooth specs.
inline CheckResult check_hurwitz(const CurveSpec& spec) {
    CheckResult r;
    if (spec.config.empty()) {
        r.verdict = Verdict::Skipped;
        r.note = "no cusps";
        return r;
    }
    if (arithmetic_genus(spec.surface, spec.cls) - spec.delta_sum() < 0) {
        r.verdict = Verdict::Skipped;
        r.note = "negative genus; see rationality";
        return r;
    }
    Int budget = ramification_budget(spec);
    Int sum = 0;
    for (const auto& seq : spec.config) sum += seq.head() - 1;
    r.verdict = sum <= budget ? Verdict::Pass : Verdict::Fail;
    r.data = {{"ramification_sum", sum}, {"budget", budget}};
    return r;
}

/// sum M_j <= 2(a+b) + be, valid under kbar >= 0.
inline CheckResult check_m_sum_bound(const CurveSpec& spec) {
    CheckResult r;
    if (!spec.kodaira_nonneg) {
        r.verdict = Verdict::Skipped;
        r.note = "kodaira_nonneg not set";
        return r;
    }
    Int sum = spec.m_number_sum();
    Int bound = 2 * (spec.cls.a + spec.cls.b) + spec.cls.b * spec.surface.e;
    r.verdict = sum <= bound ? Verdict::Pass : Verdict::Fail;
    r.data = {{"m_sum", sum}, {"bound", bound}};
    return r;
}

/// K.(K+C) on F_e: 8 - 2a - 2b - be.
inline Int k_dot_kc(const CurveSpec& spec) {
    DivisorClass k = canonical(spec.surface);
    DivisorClass kc{k.a + spec.cls.a, k.b + spec.cls.b};
    return intersect(spec.surface, k, kc);
}

/// chi of the logarithmic tangent sheaf of the resolved pair:
/// 7 - 2a - 2b - be + sum M_j.
inline Int chi_log(const CurveSpec& spec) {
    return k_dot_kc(spec) - 1 + spec.m_number_sum();
}

enum class MultBoundMode { Quadratic, PaperClosedForm };

namespace detail {
/// Sign of (sqrt(radicand) - q) for q integer, exact. radicand >= 0.
inline int compare_sqrt(Int radicand, Int q) {
    if (q < 0) return 1;
    Int q2 = q * q;
    if (radicand > q2) return 1;
    if (radicand < q2) return -1;
    return 0;
}
}  // namespace detail

/// Lower bound on the largest cusp multiplicity. Two modes: the
/// quadratic m*g(a,b,m) < 0 from the proof chain, and the printed
/// closed form m > 3/2 + a + b - sqrt(1+20(a+b)+4(a^2+b^2)+4be(1-b))/2.
/// Their radicands differ when e > 0; both are reported and full
/// reports flag disagreements instead of choosing silently.
inline CheckResult check_mult_lower_bound(const CurveSpec& spec, MultBoundMode mode) {
    CheckResult r;
    bool applicable = spec.num_cusps() >= 2 || spec.kodaira_nonneg;
    if (!applicable || spec.config.empty()) {
        r.verdict = Verdict::Skipped;
        r.note = spec.config.empty() ? "no cusps" : "needs two cusps or kodaira_nonneg";
        return r;
    }
    Int a = spec.cls.a, b = spec.cls.b, e = spec.surface.e;
    Int m = spec.max_multiplicity();
    if (mode == MultBoundMode::Quadratic) {
        Int lin = 3 + 2 * (a + b) + b * e;
        Int con = 2 * a * b - 2 * (a + b) + 2 + b * b * e - b * e;
        Int value = m * m - lin * m + con;
        r.verdict = value < 0 ? Verdict::Pass : Verdict::Fail;
        r.data = {{"quadratic_value", value}, {"m", m}};
    } else {
        Int radicand = 1 + 20 * (a + b) + 4 * (a * a + b * b) + 4 * b * e * (1 - b);
        r.data = {{"radicand", radicand}, {"m", m}};
        if (radicand < 0) {
            r.verdict = Verdict::Error;
            r.note = "closed-form radicand is negative; threshold undefined";
            return r;
        }
        // m > (3 + 2(a+b) - sqrt(radicand))/2  <=>  sqrt(radicand) > 3 + 2(a+b) - 2m
        int cmp = detail::compare_sqrt(radicand, 3 + 2 * (a + b) - 2 * m);
        r.verdict = cmp > 0 ? Verdict::Pass : Verdict::Fail;
    }
    return r;
}

/// Sign of (closed-form threshold - q) for rational-free integer q:
/// threshold = (3 + 2(a+b) - sqrt(radicand))/2. Pins "a cusp of
/// multiplicity at least 3 must exist" conclusions exactly.
inline int closed_form_threshold_compare(const CurveSpec& spec, Int q) {
    Int a = spec.cls.a, b = spec.cls.b, e = spec.surface.e;
    Int radicand = 1 + 20 * (a + b) + 4 * (a * a + b * b) + 4 * b * e * (1 - b);
    if (radicand < 0) throw std::domain_error("closed-form radicand is negative");
    // threshold >=< q  <=>  3 + 2(a+b) - 2q >=< sqrt(radicand)
    return -detail::compare_sqrt(radicand, 3 + 2 * (a + b) - 2 * q);
}

/// Resolution invariants of the minimal embedded resolution (V, D).
struct ResolutionReport {
    Int r = 0;             // components of D
    Int t_total = 0;       // total monoidal transformations
    Int k_v_sq = 0;        // K_V^2 = 9 - r
    Int c2 = 0;            // 3 + r
    Int chi_theta_v = 0;   // 8 - 2r
    Int c_tilde_sq = 0;    // strict transform self-intersection
    Int d_sq = 0;          // D^2
    Int sum_di_sq = 0;     // sum of component self-intersections
    Int chi_normal_sum = 0;  // chi(sum of normal sheaves) = r + sum D_i^2
    Int chi_log = 0;       // 6 - r - D^2
};

inline ResolutionReport resolution_report(const CurveSpec& spec) {
    if (!check_rationality(spec).passed())
        throw std::domain_error("resolution report requires geometric genus 0");
    Int a = spec.cls.a, b = spec.cls.b, e = spec.surface.e;
    ResolutionReport rep;
    Int sum_m_sq = 0;  // over full sequences: compact entries plus two 1s per cusp
    Int sum_omega_plus_1 = 0;
    for (const auto& seq : spec.config) {
        rep.t_total += resolution_length(seq);
        for (Int m : seq.entries()) sum_m_sq += m * m;
        sum_m_sq += 2;
        sum_omega_plus_1 += eta_omega(seq).second + 1;
    }
    Int s = spec.num_cusps();
    rep.r = rep.t_total + 1;
    rep.k_v_sq = 9 - rep.r;
    rep.c2 = 3 + rep.r;
    rep.chi_theta_v = 8 - 2 * rep.r;
    rep.c_tilde_sq = b * b * e + 2 * a * b - sum_m_sq;
    rep.d_sq = rep.c_tilde_sq + 2 * s - sum_omega_plus_1;
    rep.sum_di_sq = rep.d_sq - 2 * rep.r + 2;
    rep.chi_normal_sum = rep.r + rep.sum_di_sq;
    rep.chi_log = 6 - rep.r - rep.d_sq;
    Int direct = cuspidal::chi_log(spec);
    if (rep.chi_log != direct || rep.chi_log != rep.chi_theta_v - rep.chi_normal_sum)
        throw std::logic_error("chi consistency breach: resolution path gives " +
                               std::to_string(rep.chi_log) + ", M-number path gives " +
                               std::to_string(direct));
    return rep;
}

/// All checks of a candidate, never short-circuiting.
struct FeasibilityReport {
    Int genus = 0;
    Int chi = 0;
    Int k_dot_kc = 0;
    std::vector<std::pair<std::string, CheckResult>> checks;
    bool mult_bound_disagreement = false;

    bool all_pass() const {
        for (const auto& [name, c] : checks) {
            if (name == "mult_lower_bound_closed_form") continue;  // advisory, see below
            if (c.failed()) return false;
        }
        return true;
    }

    const CheckResult& check(const std::string& name) const {
        for (const auto& [n, c] : checks)
            if (n == name) return c;
        throw std::out_of_range("no such check: " + name);
    }
};

inline FeasibilityReport full_report(const CurveSpec& spec) {
    FeasibilityReport rep;
    Int pa = arithmetic_genus(spec.surface, spec.cls);
    rep.genus = pa - spec.delta_sum();
    rep.chi = chi_log(spec);
    rep.k_dot_kc = cuspidal::k_dot_kc(spec);
    rep.checks.emplace_back("rationality", check_rationality(spec));
    rep.checks.emplace_back("mult_vs_b", check_mult_vs_b(spec));
    rep.checks.emplace_back("hurwitz", check_hurwitz(spec));
    rep.checks.emplace_back("m_sum_bound", check_m_sum_bound(spec));
    CheckResult quad = check_mult_lower_bound(spec, MultBoundMode::Quadratic);
    CheckResult closed = check_mult_lower_bound(spec, MultBoundMode::PaperClosedForm);
    if (quad.verdict != closed.verdict && quad.verdict != Verdict::Skipped)
        rep.mult_bound_disagreement = true;
    // the quadratic form is the internally consistent one and gates
    // candidates; the closed form is reported verbatim as advisory
    rep.checks.emplace_back("mult_lower_bound_quadratic", quad);
    if (rep.mult_bound_disagreement) {
        if (!closed.note.empty()) closed.note += "; ";
        closed.note += "disagrees with quadratic mode";
    }
    rep.checks.emplace_back("mult_lower_bound_closed_form", closed);
    return rep;
}

/// Gate used by the enumerator: rationality plus every applicable
/// structural bound (quadratic multiplicity mode).
inline bool passes_all_checks(const CurveSpec& spec) {
    if (!check_rationality(spec).passed()) return false;
    if (!check_mult_vs_b(spec).passed()) return false;
    if (check_hurwitz(spec).failed()) return false;
    if (check_m_sum_bound(spec).failed()) return false;
    if (check_mult_lower_bound(spec, MultBoundMode::Quadratic).failed()) return false;
    return true;
}

namespace detail {
/// Per-pool-entry invariants cached once for the partition search.
struct PoolEntry {
    Int delta = 0;
    Int m_number = 0;
    Int head = 0;
};
}  // namespace detail

/// All multisets of valid sequences with delta sum equal to the
/// arithmetic genus that pass every enabled check and have at least
/// min_cusps cusps. Canonically ordered (multisets non-decreasing in
/// the sequence order, emitted in lexicographic pool order). The
/// checks are evaluated on running aggregates, so failing branches of
/// the partition tree are pruned instead of materialized.
inline std::vector<CurveSpec> enumerate_configs(SurfaceId s, DivisorClass cls, Int min_cusps,
                                                bool kodaira_nonneg,
                                                std::size_t max_candidates = 1000000) {
    Int pa = arithmetic_genus(s, cls);
    if (pa < 0) throw std::domain_error("negative arithmetic genus");
    std::vector<CurveSpec> result;
    if (pa == 0) {
        if (min_cusps <= 0) result.emplace_back(s, cls, std::vector<MultiplicitySequence>{}, kodaira_nonneg);
        return result;
    }
    auto pool = enumerate_valid(pa, cls.b);
    std::sort(pool.begin(), pool.end(),
              [](const auto& x, const auto& y) { return x.entries() < y.entries(); });
    std::vector<detail::PoolEntry> cache(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        cache[i] = {delta(pool[i]), m_number(pool[i]), pool[i].head()};

    Int a = cls.a, b = cls.b, e = s.e;
    Int fiber_degree = e == 0 ? std::min(a, b) : b;
    Int ram_budget = 2 * fiber_degree - 2;  // Hurwitz with g = 0 at completion
    Int m_sum_bound = 2 * (a + b) + b * e;
    Int quad_lin = 3 + 2 * (a + b) + b * e;
    Int quad_con = 2 * a * b - 2 * (a + b) + 2 + b * b * e - b * e;

    std::vector<MultiplicitySequence> cur;
    // running aggregates: delta remaining, ramification sum, M-number
    // sum, max head (= head of the last entry, heads are non-decreasing
    // along the pool order)
    auto rec = [&](auto&& self, std::size_t start, Int remaining, Int ram_sum,
                   Int m_sum) -> void {
        if (result.size() >= max_candidates) return;
        if (remaining == 0) {
            Int count = static_cast<Int>(cur.size());
            if (count < min_cusps) return;
            bool applicable = kodaira_nonneg || count >= 2;
            if (ram_sum > ram_budget) return;                 // hurwitz
            if (applicable && m_sum > m_sum_bound) return;    // M-number sum
            if (applicable) {                                 // multiplicity lower bound
                Int m = cur.back().head();
                if (m * m - quad_lin * m + quad_con >= 0) return;
            }
            result.emplace_back(s, cls, cur, kodaira_nonneg);
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            const auto& entry = cache[i];
            if (entry.delta > remaining) continue;
            // heads are non-decreasing in pool order, so once the
            // ramification sum overshoots, every later branch does too
            if (ram_sum + entry.head - 1 > ram_budget) break;
            // the M-sum bound applies to every completion of size >= 2
            if ((kodaira_nonneg || !cur.empty()) && m_sum + entry.m_number > m_sum_bound)
                continue;
            cur.push_back(pool[i]);
            self(self, i, remaining - entry.delta, ram_sum + entry.head - 1,
                 m_sum + entry.m_number);
            cur.pop_back();
        }
    };
    rec(rec, 0, pa, 0, 0);
    return result;
}

/// Report serialization. records=true emits stable machine-readable
/// `key = value` lines; otherwise a short human block.
inline std::string serialize_report(const CurveSpec& spec, const FeasibilityReport& rep,
                                    bool records) {
    std::ostringstream os;
    if (records) {
        os << "surface = F" << spec.surface.e << "\n";
        os << "type = (" << spec.cls.a << "," << spec.cls.b << ")\n";
        os << "config = " << format_config(spec.config) << "\n";
        os << "genus = " << rep.genus << "\n";
        os << "chi = " << rep.chi << "\n";
        os << "k_dot_kc = " << rep.k_dot_kc << "\n";
        for (const auto& [name, c] : rep.checks) {
            os << "verdict." << name << " = " << to_string(c.verdict) << "\n";
            for (const auto& [k, v] : c.data) os << "verdict." << name << "." << k << " = " << v << "\n";
        }
        os << "mult_bound_disagreement = " << (rep.mult_bound_disagreement ? 1 : 0) << "\n";
        if (check_rationality(spec).passed()) {
            ResolutionReport rr = resolution_report(spec);
            os << "r = " << rr.r << "\n";
            os << "D_sq = " << rr.d_sq << "\n";
            os << "K_V_sq = " << rr.k_v_sq << "\n";
            os << "c2 = " << rr.c2 << "\n";
            os << "chi_theta_V = " << rr.chi_theta_v << "\n";
        }
    } else {
        os << "Curve of type (" << spec.cls.a << "," << spec.cls.b << ") on F" << spec.surface.e;
        if (!spec.config.empty()) os << " with cusps " << format_config(spec.config);
        os << "\n";
        os << "  genus " << rep.genus << ", chi " << rep.chi << ", K.(K+C) " << rep.k_dot_kc << "\n";
        for (const auto& [name, c] : rep.checks) {
            os << "  " << name << ": " << to_string(c.verdict);
            if (!c.note.empty()) os << " (" << c.note << ")";
            for (const auto& [k, v] : c.data) os << " " << k << "=" << v;
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace cuspidal
