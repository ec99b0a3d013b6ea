#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cuspidal/cusp.hpp"
#include "cuspidal/picard.hpp"

namespace cuspidal {

using Rational = boost::multiprecision::cpp_rational;

struct PolyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sparse multivariate polynomial over the rationals with named
/// variables. All arithmetic is exact.
class MPoly {
  public:
    using Exponents = std::vector<int>;

    MPoly() = default;
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MPoly constant(std::vector<std::string> vars, const Rational& c) {
        MPoly p(std::move(vars));
        p.add_term(Exponents(p.vars_.size(), 0), c);
        return p;
    }

    static MPoly variable(std::vector<std::string> vars, std::size_t index) {
        MPoly p(std::move(vars));
        Exponents e(p.vars_.size(), 0);
        e.at(index) = 1;
        p.add_term(e, 1);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

    MPoly operator-() const {
        MPoly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e = ea;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend MPoly operator*(const Rational& c, const MPoly& a) {
        MPoly r(a.vars_);
        for (const auto& [e, ca] : a.terms_) r.add_term(e, c * ca);
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

    MPoly pow(int n) const {
        MPoly r = constant(vars_, 1);
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    Rational eval(const std::vector<Rational>& point) const {
        Rational total = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            total += t;
        }
        return total;
    }

    /// Substitutes images[i] for variable i. All images must share one
    /// variable list, which becomes the result's variable list.
    MPoly substitute(const std::vector<MPoly>& images) const {
        if (images.size() != vars_.size())
            throw PolyError("substitution needs one image per variable");
        std::vector<std::string> out_vars = images.empty() ? vars_ : images.front().vars_;
        MPoly r(out_vars);
        for (const auto& [e, c] : terms_) {
            MPoly t = constant(out_vars, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0) t = t * images[i].pow(e[i]);
            r = r + t;
        }
        return r;
    }

    int min_total_degree() const {
        if (is_zero()) throw PolyError("zero polynomial has no degree");
        int best = -1;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            if (best < 0 || d < best) best = d;
        }
        return best;
    }

    int max_total_degree() const {
        if (is_zero()) throw PolyError("zero polynomial has no degree");
        int best = 0;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            best = std::max(best, d);
        }
        return best;
    }

    int min_degree_in(std::size_t var) const {
        if (is_zero()) throw PolyError("zero polynomial has no degree");
        int best = -1;
        for (const auto& [e, c] : terms_)
            if (best < 0 || e[var] < best) best = e[var];
        return best;
    }

    /// Divides every term by vars[var]^n (all terms must allow it).
    MPoly shift_down(std::size_t var, int n) const {
        MPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] < n) throw PolyError("monomial division not exact");
            Exponents e2 = e;
            e2[var] -= n;
            r.terms_.emplace(e2, c);
        }
        return r;
    }

    std::string format_monomial(const Exponents& e) const {
        std::string s;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += vars_[i];
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s.empty() ? "1" : s;
    }

    std::string format() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) {
                    os << "-";
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            std::string mono = format_monomial(e);
            if (a != 1 || mono == "1") {
                os << a;
                if (mono != "1") os << "*";
            }
            if (mono != "1") os << mono;
        }
        return os.str();
    }

    /// Parses a sum of terms `coeff * v1^a1 * v2^a2`, with `/` for
    /// rational coefficients and `*` or spaces between factors.
    static MPoly parse(const std::string& text, std::vector<std::string> vars);

  private:
    std::vector<std::string> vars_;
    std::map<Exponents, Rational> terms_;
};

namespace detail {

inline bool is_number_start(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace detail

inline MPoly MPoly::parse(const std::string& text, std::vector<std::string> vars) {
    MPoly result(vars);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw PolyError("empty polynomial");
    bool any_term = false;
    while (i < text.size()) {
        int sign = 1;
        skip_ws();
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -1;
            ++i;
        } else if (any_term) {
            throw PolyError("expected '+' or '-' between terms near position " + std::to_string(i));
        }
        skip_ws();
        if (i >= text.size()) throw PolyError("dangling sign at end of polynomial");

        Rational coeff = sign;
        Exponents exp(vars.size(), 0);
        bool factor_seen = false;
        while (i < text.size()) {
            skip_ws();
            if (i >= text.size() || text[i] == '+' || text[i] == '-') break;
            if (text[i] == '*') {
                ++i;
                skip_ws();
            }
            if (i >= text.size()) throw PolyError("dangling '*' at end of polynomial");
            if (detail::is_number_start(text[i])) {
                std::size_t start = i;
                while (i < text.size() && detail::is_number_start(text[i])) ++i;
                std::string num = text.substr(start, i - start);
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    std::size_t ds = i;
                    while (i < text.size() && detail::is_number_start(text[i])) ++i;
                    if (ds == i) throw PolyError("malformed rational near position " + std::to_string(i));
                    num += "/" + text.substr(ds, i - ds);
                }
                coeff *= Rational(num);
            } else {
                std::size_t start = i;
                while (i < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                    ++i;
                std::string name = text.substr(start, i - start);
                if (name.empty())
                    throw PolyError("unexpected character '" + std::string(1, text[i]) +
                                    "' at position " + std::to_string(i));
                auto it = std::find(vars.begin(), vars.end(), name);
                if (it == vars.end()) throw PolyError("unknown variable '" + name + "'");
                int power = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    std::size_t es = i;
                    while (i < text.size() && detail::is_number_start(text[i])) ++i;
                    if (es == i) throw PolyError("malformed exponent near position " + std::to_string(i));
                    power = std::stoi(text.substr(es, i - es));
                }
                exp[static_cast<std::size_t>(it - vars.begin())] += power;
            }
            factor_seen = true;
        }
        if (!factor_seen) throw PolyError("empty term in polynomial");
        result.add_term(exp, coeff);
        any_term = true;
        skip_ws();
    }
    return result;
}

// ---------------------------------------------------------------------------
// Bigraded polynomials on a Hirzebruch surface, variables x0,x1,y0,y1
// with deg x0 = deg x1 = (1,0), deg y0 = (0,1), deg y1 = (-e,1).

inline const std::vector<std::string>& surface_vars() {
    static const std::vector<std::string> v{"x0", "x1", "y0", "y1"};
    return v;
}

inline const std::vector<std::string>& plane_vars() {
    static const std::vector<std::string> v{"x", "y", "z"};
    return v;
}

struct BigradedPolynomial {
    SurfaceId surface;
    MPoly poly;

    BigradedPolynomial(SurfaceId s, MPoly p) : surface(s), poly(std::move(p)) {
        if (poly.vars() != surface_vars())
            throw PolyError("bigraded polynomials use variables x0,x1,y0,y1");
    }

    static BigradedPolynomial parse(SurfaceId s, const std::string& text) {
        return BigradedPolynomial(s, MPoly::parse(text, surface_vars()));
    }
};

/// The unique (a,b) with a = α0+α1-e·β1 and b = β0+β1 for every term.
inline DivisorClass bidegree(const BigradedPolynomial& f) {
    if (f.poly.is_zero()) throw PolyError("zero polynomial has no bidegree");
    bool have = false;
    DivisorClass deg{0, 0};
    MPoly::Exponents first_e;
    for (const auto& [e, c] : f.poly.terms()) {
        DivisorClass d{e[0] + e[1] - f.surface.e * e[3], e[2] + e[3]};
        if (!have) {
            deg = d;
            first_e = e;
            have = true;
        } else if (!(d == deg)) {
            throw PolyError("inhomogeneous polynomial: terms " + f.poly.format_monomial(first_e) +
                            " and " + f.poly.format_monomial(e) + " have different bidegrees");
        }
    }
    return deg;
}

/// A named variable substitution between polynomial rings; exceptional
/// monomial factors of the image are stripped by apply_map.
struct SubstitutionMap {
    std::string name;
    std::vector<std::string> source_vars;
    std::vector<std::string> target_vars;
    std::vector<MPoly> images;  // one per source variable, in target_vars

    static SubstitutionMap parse(std::string name, std::vector<std::string> source,
                                 std::vector<std::string> target,
                                 const std::vector<std::string>& image_texts) {
        SubstitutionMap m{std::move(name), std::move(source), std::move(target), {}};
        if (image_texts.size() != m.source_vars.size())
            throw PolyError("map needs one image per source variable");
        for (const auto& t : image_texts) m.images.push_back(MPoly::parse(t, m.target_vars));
        return m;
    }
};

/// Substitute, then strip the maximal power of every coordinate
/// variable (the exceptional factors of the transformation).
inline MPoly apply_map(const MPoly& f, const SubstitutionMap& map) {
    if (f.vars() != map.source_vars) throw PolyError("polynomial does not match the map's source ring");
    MPoly g = f.substitute(map.images);
    if (g.is_zero()) throw PolyError("image is zero: curve lies in the exceptional locus");
    for (std::size_t v = 0; v < g.vars().size(); ++v) {
        int m = g.min_degree_in(v);
        if (m > 0) g = g.shift_down(v, m);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Charts: dehomogenize by fixing one variable of each pencil to 1.

/// Sets x_{xi}=1 and y_{yj}=1, returning a polynomial in the two
/// remaining variables (in their original names).
inline MPoly chart(const BigradedPolynomial& f, int xi, int yj) {
    if (xi < 0 || xi > 1 || yj < 0 || yj > 1) throw PolyError("chart indices must be 0 or 1");
    std::vector<std::string> out_vars{surface_vars()[1 - xi], surface_vars()[2 + (1 - yj)]};
    MPoly r(out_vars);
    for (const auto& [e, c] : f.poly.terms()) r.add_term({e[1 - xi], e[2 + (1 - yj)]}, c);
    return r;
}

/// Sets variable `var` of a plane polynomial to 1.
inline MPoly plane_chart(const MPoly& f, std::size_t var) {
    if (f.vars().size() != 3 || var > 2) throw PolyError("plane_chart expects 3 variables");
    std::vector<std::string> out_vars;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < 3; ++i)
        if (i != var) {
            out_vars.push_back(f.vars()[i]);
            keep.push_back(i);
        }
    MPoly r(out_vars);
    for (const auto& [e, c] : f.terms()) r.add_term({e[keep[0]], e[keep[1]]}, c);
    return r;
}

// ---------------------------------------------------------------------------
// Local analysis at rational points of a 2-variable chart polynomial.

using Point2 = std::pair<Rational, Rational>;

/// Translates the point to the origin.
inline MPoly translate(const MPoly& f, const Point2& p) {
    if (f.vars().size() != 2) throw PolyError("local analysis needs a 2-variable chart polynomial");
    std::vector<MPoly> images{
        MPoly::variable(f.vars(), 0) + MPoly::constant(f.vars(), p.first),
        MPoly::variable(f.vars(), 1) + MPoly::constant(f.vars(), p.second)};
    return f.substitute(images);
}

/// Minimal total degree after translation; 0 if the point is off the
/// curve.
inline Int multiplicity_at(const MPoly& f, const Point2& p) {
    if (f.is_zero()) throw PolyError("zero polynomial");
    return translate(f, p).min_total_degree();
}

/// Vanishing order of f along the degree-<=1 curve g at a point of g.
inline Int contact_order(const MPoly& f, const MPoly& g, const Point2& p) {
    if (f.vars().size() != 2 || g.vars() != f.vars())
        throw PolyError("contact_order needs 2-variable polynomials over the same chart");
    if (g.is_zero() || g.max_total_degree() > 1)
        throw PolyError("contact curve must have degree 1 in the chart");
    if (g.eval({p.first, p.second}) != 0) throw PolyError("point does not lie on the contact curve");
    // g = c0 + c1*u + c2*v; parametrize through p
    Rational c1 = 0, c2 = 0;
    for (const auto& [e, c] : g.terms()) {
        if (e[0] == 1) c1 = c;
        if (e[1] == 1) c2 = c;
    }
    if (c1 == 0 && c2 == 0) throw PolyError("contact curve is constant");
    std::vector<std::string> tvar{"t"};
    MPoly t = MPoly::variable(tvar, 0);
    MPoly u_img(tvar), v_img(tvar);
    if (c2 != 0) {
        u_img = MPoly::constant(tvar, p.first) + t;
        v_img = MPoly::constant(tvar, p.second) + (Rational(-c1) / c2) * t;
    } else {
        u_img = MPoly::constant(tvar, p.first);
        v_img = MPoly::constant(tvar, p.second) + t;
    }
    MPoly restricted = f.substitute({u_img, v_img});
    if (restricted.is_zero()) throw PolyError("curve vanishes identically on the contact curve");
    return restricted.min_degree_in(0);
}

namespace detail {

inline Rational binomial(int n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace detail

/// Iterated blow-up of a unibranch germ with rational tangents:
/// returns the compact multiplicity sequence (empty if smooth).
inline MultiplicitySequence local_resolution(const MPoly& f0, const Point2& p) {
    MPoly f = translate(f0, p);
    if (f.is_zero()) throw PolyError("zero polynomial");
    if (f.eval({0, 0}) != 0) throw PolyError("point is not on the curve");
    std::vector<Int> seq;
    for (int guard = 0; guard < 512; ++guard) {
        int m = f.min_total_degree();
        if (m == 0) throw PolyError("point left the curve during resolution");
        if (m == 1) {
            if (seq.empty()) throw PolyError("point is a smooth point of the curve");
            return MultiplicitySequence(seq);
        }
        // lowest form coefficients: c[i] multiplies u^{m-i} v^i
        std::vector<Rational> c(static_cast<std::size_t>(m) + 1, 0);
        for (const auto& [e, co] : f.terms())
            if (e[0] + e[1] == m) c[static_cast<std::size_t>(e[1])] = co;
        bool swapped = false;
        if (c[static_cast<std::size_t>(m)] == 0) {
            // tangent cone must then be exactly c0 * u^m; swap u and v
            for (int i = 1; i <= m; ++i)
                if (c[static_cast<std::size_t>(i)] != 0)
                    throw PolyError("tangent cone is not a power of a rational line "
                                    "(multiple branches or irrational tangent)");
            swapped = true;
            MPoly g(f.vars());
            for (const auto& [e, co] : f.terms()) g.add_term({e[1], e[0]}, co);
            f = g;
            std::reverse(c.begin(), c.end());
        }
        const Rational& cm = c[static_cast<std::size_t>(m)];
        Rational r = -c[static_cast<std::size_t>(m - 1)] / (Rational(m) * cm);
        for (int i = 0; i <= m; ++i) {
            Rational expect = cm * detail::binomial(m, i);
            Rational pw = 1;
            for (int k = 0; k < m - i; ++k) pw *= -r;
            if (c[static_cast<std::size_t>(i)] != expect * pw)
                throw PolyError("tangent cone is not a power of a rational line "
                                "(multiple branches or irrational tangent)");
        }
        (void)swapped;
        seq.push_back(m);
        // blow up: v = u*(v' + r), then divide by u^m
        std::vector<MPoly> images{
            MPoly::variable(f.vars(), 0),
            MPoly::variable(f.vars(), 0) *
                (MPoly::variable(f.vars(), 1) + MPoly::constant(f.vars(), r))};
        f = f.substitute(images).shift_down(0, m);
        if (f.is_zero()) throw PolyError("germ is not reduced at the blown-up point");
    }
    throw PolyError("resolution did not terminate (non-cuspidal germ?)");
}

/// Genus bookkeeping: arithmetic genus minus the delta invariants of
/// the resolved cusps; the residual covers singularities at
/// irrational points. Negative residuals are impossible for actual
/// curves and reported as errors.
struct DeltaAudit {
    Int p_a = 0;
    Int resolved_delta = 0;
    Int residual = 0;
};

inline DeltaAudit delta_audit(Int p_a, const std::vector<MultiplicitySequence>& resolved) {
    DeltaAudit audit;
    audit.p_a = p_a;
    for (const auto& s : resolved) audit.resolved_delta += delta(s);
    audit.residual = p_a - audit.resolved_delta;
    if (audit.residual < 0)
        throw PolyError("delta audit failed: resolved delta " +
                        std::to_string(audit.resolved_delta) + " exceeds arithmetic genus " +
                        std::to_string(p_a));
    return audit;
}

inline DeltaAudit delta_audit(const BigradedPolynomial& f,
                              const std::vector<MultiplicitySequence>& resolved) {
    return delta_audit(arithmetic_genus(f.surface, bidegree(f)), resolved);
}

}  // namespace cuspidal
