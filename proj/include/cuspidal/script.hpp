#pragma once

#include <array>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "cuspidal/birational.hpp"

namespace cuspidal {

struct ScriptError : std::runtime_error {
    int line;
    ScriptError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// One parsed move of the line-oriented script language.
struct Move {
    enum class Kind {
        Start,
        Mark,
        Blowup,
        Contract,
        Elm,
        ToPlane,
        FromPlane,
        SwapRulings,
        Assert
    };
    Kind kind;
    int line = 0;

    // start / assert
    bool plane = false;
    bool has_surface = false;
    bool has_degree = false, has_type = false, has_config = false, has_chi = false;
    Int degree = 0, e = 0, chi = 0;
    DivisorClass type{0, 1};
    std::vector<MultiplicitySequence> config_val;

    // mark
    FiberMark mark;

    // blowup / elm / from_plane
    CurveState::PointSpec point;
    std::string fiber;  // elm / contract
};

using MoveScript = std::vector<Move>;

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline Int parse_int(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        Int v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ScriptError(line, "expected an integer, got '" + s + "'");
    }
}

inline DivisorClass parse_type(const std::string& s, int line) {
    if (s.size() < 5 || s.front() != '(' || s.back() != ')')
        throw ScriptError(line, "type must look like (a,b), got '" + s + "'");
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ScriptError(line, "type must look like (a,b)");
    return DivisorClass{parse_int(s.substr(1, comma - 1), line),
                        parse_int(s.substr(comma + 1, s.size() - comma - 2), line)};
}

inline std::vector<std::pair<std::string, Int>> parse_pattern(const std::string& s, int line) {
    std::vector<std::pair<std::string, Int>> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto plus = s.find('+', pos);
        std::string term = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        auto star = term.find('*');
        if (star == std::string::npos)
            throw ScriptError(line, "pattern term must look like 4*p1, got '" + term + "'");
        out.push_back({term.substr(star + 1), parse_int(term.substr(0, star), line)});
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    if (out.empty()) throw ScriptError(line, "empty pattern");
    return out;
}

}  // namespace detail

/// Parses the line-oriented move language. '#' starts a comment.
inline MoveScript parse_script(const std::string& text) {
    MoveScript script;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto toks = detail::split_ws(raw);
        if (toks.empty()) continue;

        Move mv;
        mv.line = line;
        auto keyval = [&](const std::string& tok) -> std::pair<std::string, std::string> {
            auto eq = tok.find('=');
            if (eq == std::string::npos) return {tok, ""};
            return {tok.substr(0, eq), tok.substr(eq + 1)};
        };
        auto parse_state_fields = [&](std::size_t from) {
            for (std::size_t i = from; i < toks.size(); ++i) {
                auto [key, val] = keyval(toks[i]);
                if (key == "plane") {
                    mv.plane = true;
                } else if (key == "surface") {
                    if (val.size() < 2 || val[0] != 'F')
                        throw ScriptError(line, "surface must look like F2, got '" + val + "'");
                    mv.has_surface = true;
                    mv.e = detail::parse_int(val.substr(1), line);
                } else if (key == "degree") {
                    mv.has_degree = true;
                    mv.degree = detail::parse_int(val, line);
                } else if (key == "type") {
                    mv.has_type = true;
                    mv.type = detail::parse_type(val, line);
                } else if (key == "config") {
                    mv.has_config = true;
                    try {
                        mv.config_val = parse_config(val);
                    } catch (const std::exception& ex) {
                        throw ScriptError(line, std::string("bad config: ") + ex.what());
                    }
                } else if (key == "chi") {
                    mv.has_chi = true;
                    mv.chi = detail::parse_int(val, line);
                } else {
                    throw ScriptError(line, "unknown field '" + key + "'");
                }
            }
        };

        const std::string& verb = toks[0];
        if (verb == "start" || verb == "assert") {
            mv.kind = verb == "start" ? Move::Kind::Start : Move::Kind::Assert;
            parse_state_fields(1);
            if (mv.kind == Move::Kind::Start) {
                if (mv.plane && !mv.has_degree)
                    throw ScriptError(line, "start plane needs degree=");
                if (!mv.plane && (!mv.has_surface || !mv.has_type))
                    throw ScriptError(line, "start needs 'plane degree=d' or 'surface=Fe type=(a,b)'");
            }
        } else if (verb == "mark") {
            mv.kind = Move::Kind::Mark;
            if (toks.size() < 3) throw ScriptError(line, "mark needs an id and a pattern");
            mv.mark.id = toks[1];
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto [key, val] = keyval(toks[i]);
                if (key == "pattern")
                    mv.mark.pattern = detail::parse_pattern(val, line);
                else if (key == "onE")
                    mv.mark.on_special_section = val;
                else
                    throw ScriptError(line, "unknown mark field '" + key + "'");
            }
            if (mv.mark.pattern.empty()) throw ScriptError(line, "mark needs pattern=");
        } else if (verb == "blowup" || verb == "from_plane") {
            mv.kind = verb == "blowup" ? Move::Kind::Blowup : Move::Kind::FromPlane;
            std::size_t i = 1;
            if (verb == "from_plane") {
                if (toks.size() < 3 || toks[1] != "at")
                    throw ScriptError(line, "usage: from_plane at <point>");
                i = 2;
            }
            if (i >= toks.size()) throw ScriptError(line, "blowup needs a point");
            mv.point.id = toks[i++];
            for (; i < toks.size(); ++i) {
                auto [key, val] = keyval(toks[i]);
                if (key == "onE" && val.empty())
                    mv.point.on_e = true;
                else if (key == "offE" && val.empty())
                    mv.point.on_e = false;
                else if (key == "on")
                    mv.point.on_mark = val;
                else
                    throw ScriptError(line, "unknown blowup option '" + toks[i] + "'");
            }
        } else if (verb == "contract") {
            mv.kind = Move::Kind::Contract;
            if (toks.size() != 2) throw ScriptError(line, "usage: contract <fiber>");
            mv.fiber = toks[1];
        } else if (verb == "elm") {
            mv.kind = Move::Kind::Elm;
            if (toks.size() < 4 || toks[2] != "at")
                throw ScriptError(line, "usage: elm <fiber> at <point> [onE]");
            mv.fiber = toks[1];
            mv.point.id = toks[3];
            for (std::size_t i = 4; i < toks.size(); ++i) {
                if (toks[i] == "onE")
                    mv.point.on_e = true;
                else if (toks[i] == "offE")
                    mv.point.on_e = false;
                else if (auto [key, val] = keyval(toks[i]); key == "on")
                    mv.point.on_mark = val;
                else
                    throw ScriptError(line, "unknown elm option '" + toks[i] + "'");
            }
        } else if (verb == "to_plane") {
            mv.kind = Move::Kind::ToPlane;
        } else if (verb == "swap_rulings") {
            mv.kind = Move::Kind::SwapRulings;
        } else {
            throw ScriptError(line, "unknown move '" + verb + "'");
        }
        script.push_back(std::move(mv));
    }
    return script;
}

struct ScriptResult {
    CurveState state;
    std::vector<std::string> trace;
};

namespace detail {

inline std::vector<MultiplicitySequence> sorted_config(std::vector<MultiplicitySequence> cfg) {
    std::sort(cfg.begin(), cfg.end(),
              [](const auto& x, const auto& y) { return x.entries() > y.entries(); });
    std::erase_if(cfg, [](const auto& s) { return s.size() == 0; });
    return cfg;
}

inline void apply_assert(const CurveState& st, const Move& mv) {
    auto fail = [&](const std::string& what) { throw ScriptError(mv.line, "assert failed: " + what); };
    if ((mv.plane || mv.has_surface) && mv.plane != st.is_plane())
        fail(std::string("expected ") + (mv.plane ? "plane" : "surface") + " mode, state is " +
             st.describe());
    if (mv.has_surface && mv.e != st.e())
        fail("expected F" + std::to_string(mv.e) + ", state is " + st.describe());
    if (mv.has_degree && st.degree() != mv.degree)
        fail("expected degree " + std::to_string(mv.degree) + ", state is " + st.describe());
    if (mv.has_type && !(st.cls() == mv.type))
        fail("expected type (" + std::to_string(mv.type.a) + "," + std::to_string(mv.type.b) +
             "), state is " + st.describe());
    if (mv.has_config) {
        auto want = sorted_config(mv.config_val);
        auto got = st.config();
        if (want != got)
            fail("expected config " + format_config(want) + ", state has " +
                 (got.empty() ? std::string("no cusps") : format_config(got)));
    }
    if (mv.has_chi) {
        if (st.is_plane()) fail("chi assertions need surface mode");
        Int got = chi_log(st.spec());
        if (got != mv.chi)
            fail("expected chi " + std::to_string(mv.chi) + ", state has " + std::to_string(got));
    }
}

}  // namespace detail

/// Applies a parsed script to a starting state. A `start` move may
/// only appear as the very first move (and replaces the given state).
inline ScriptResult run_script(CurveState initial, const MoveScript& script) {
    ScriptResult res{std::move(initial), {}};
    bool first = true;
    for (const Move& mv : script) {
        if (mv.kind == Move::Kind::Start && !first)
            throw ScriptError(mv.line, "start must be the first move");
        first = false;
        try {
            switch (mv.kind) {
                case Move::Kind::Start:
                    res.state = mv.plane ? CurveState::plane(mv.degree, mv.config_val)
                                         : CurveState::surface(mv.e, mv.type, mv.config_val);
                    break;
                case Move::Kind::Mark:
                    res.state.add_mark(mv.mark);
                    break;
                case Move::Kind::Blowup:
                    if (res.state.is_plane())
                        res.state.from_plane(mv.point);
                    else
                        res.state.blowup(mv.point);
                    break;
                case Move::Kind::FromPlane:
                    res.state.from_plane(mv.point);
                    break;
                case Move::Kind::Contract:
                    res.state.contract(mv.fiber);
                    break;
                case Move::Kind::Elm:
                    res.state.elm(mv.fiber, mv.point);
                    break;
                case Move::Kind::ToPlane:
                    res.state.to_plane();
                    break;
                case Move::Kind::SwapRulings:
                    res.state.swap_rulings();
                    break;
                case Move::Kind::Assert:
                    detail::apply_assert(res.state, mv);
                    break;
            }
        } catch (const ScriptError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ScriptError(mv.line, ex.what());
        }
        res.trace.push_back("line " + std::to_string(mv.line) + ": " + res.state.describe());
    }
    return res;
}

/// Runs a self-contained script (must begin with `start`).
inline ScriptResult run_script(const std::string& text) {
    MoveScript script = parse_script(text);
    if (script.empty() || script.front().kind != Move::Kind::Start)
        throw ScriptError(script.empty() ? 1 : script.front().line,
                          "a self-contained script must begin with 'start'");
    return run_script(CurveState::plane(1, {}), script);
}

// ---------------------------------------------------------------------------
// Series generators: each emits the move script transcribing one
// construction and the resulting state (obtained by running it).

struct SeriesResult {
    CurveState state;
    std::string script;
};

namespace detail {

inline MultiplicitySequence block(Int head, Int head_count, Int tail, Int tail_count) {
    std::vector<Int> v;
    for (Int i = 0; i < head_count; ++i) v.push_back(head);
    for (Int i = 0; i < tail_count; ++i) v.push_back(tail);
    return MultiplicitySequence(v);
}

inline SeriesResult finish_series(std::ostringstream& sc, Int e, DivisorClass type,
                                  const std::vector<MultiplicitySequence>& config) {
    auto cfg = sorted_config(config);
    sc << "assert surface=F" << e << " type=(" << type.a << "," << type.b << ")";
    if (!cfg.empty()) sc << " config=" << format_config(cfg);
    sc << " chi=" << chi_log(CurveSpec(SurfaceId(e), type, cfg)) << "\n";
    std::string text = sc.str();
    return SeriesResult{run_script(text).state, text};
}

}  // namespace detail

/// Type (2k+1,4), configuration [4_{k-1+e},2_3],[2],[2],[2] on F_e,
/// for e,k >= 0 except (0,0).
inline SeriesResult series_row1(Int e, Int k) {
    if (e < 0 || k < 0 || (e == 0 && k == 0))
        throw std::invalid_argument("series_row1 needs e,k >= 0, (e,k) != (0,0)");
    std::ostringstream sc;
    sc << "start plane degree=5 config=[2_3],[2],[2],[2]\n";
    sc << "mark T pattern=4*c1+1*r1\n";
    sc << "blowup r1\n";  // -> F_1, (1,4)
    int fresh = 0;
    if (k == 0) {
        for (Int i = 1; i < e; ++i) sc << "elm T at s" << ++fresh << " onE\n";
    } else {
        Int level;
        if (k % 2 == 1) {
            sc << "elm T at c1\n";  // cusp center: F_1 -> F_0, (3,4)
            level = 1;
        } else {
            sc << "elm T at t" << ++fresh << "\n";  // F_1 -> F_0, (5,4)
            level = 2;
        }
        while (level < k) {
            sc << "elm T at s" << ++fresh << "\n";  // F_0 -> F_1
            sc << "elm T at t" << ++fresh << "\n";  // F_1 -> F_0, two levels up
            level += 2;
        }
        if (e >= 1) {
            sc << "elm T at s" << ++fresh << "\n";  // F_0 -> F_1
            for (Int i = 1; i < e; ++i) sc << "elm T at u" << ++fresh << " onE\n";
        }
    }
    std::vector<MultiplicitySequence> config{detail::block(4, k - 1 + e, 2, 3),
                                             MultiplicitySequence({2}), MultiplicitySequence({2}),
                                             MultiplicitySequence({2})};
    return detail::finish_series(sc, e, DivisorClass{2 * k + 1, 4}, config);
}

/// Type (3k+1-h,5), configuration [4_{2k-1+h},2_3],[2],[2],[2] on F_h,
/// h in {0,1}, k >= 0, except (h,k)=(0,0).
inline SeriesResult series_row2(Int h, Int k) {
    if (h < 0 || h > 1 || k < 0 || (h == 0 && k == 0))
        throw std::invalid_argument("series_row2 needs h in {0,1}, k >= 0, (h,k) != (0,0)");
    std::ostringstream sc;
    sc << "start plane degree=5 config=[2_3],[2],[2],[2]\n";
    sc << "mark T pattern=4*c1+1*r1\n";
    sc << "blowup t1 on=T\n";  // off-curve point of T: -> F_1, (0,5)
    for (Int i = 0; i < 2 * k - 1 + h; ++i) sc << "elm T at r1\n";
    std::vector<MultiplicitySequence> config{detail::block(4, 2 * k - 1 + h, 2, 3),
                                             MultiplicitySequence({2}), MultiplicitySequence({2}),
                                             MultiplicitySequence({2})};
    return detail::finish_series(sc, h, DivisorClass{3 * k + 1 - h, 5}, config);
}

/// Type (2k+2-h,4), configuration [3_{2k-1+h},2],[2_3],[2],[2] on F_h,
/// h in {0,1}, k >= 0, except (h,k)=(0,0).
inline SeriesResult series_row3(Int h, Int k) {
    if (h < 0 || h > 1 || k < 0 || (h == 0 && k == 0))
        throw std::invalid_argument("series_row3 needs h in {0,1}, k >= 0, (h,k) != (0,0)");
    std::ostringstream sc;
    sc << "start plane degree=5 config=[2_3],[2],[2],[2]\n";
    sc << "mark T pattern=3*c2+1*r1+1*s1\n";  // tangent at an ordinary cusp
    sc << "blowup s1\n";                      // -> F_1, (1,4)
    for (Int i = 0; i < 2 * k - 1 + h; ++i) sc << "elm T at r1\n";
    std::vector<MultiplicitySequence> config{detail::block(3, 2 * k - 1 + h, 2, 1),
                                             detail::block(2, 3, 0, 0), MultiplicitySequence({2}),
                                             MultiplicitySequence({2})};
    return detail::finish_series(sc, h, DivisorClass{2 * k + 2 - h, 4}, config);
}

namespace detail {

/// Shared body of the fourth series and its fewer-cusps extension:
/// builds type (k+1-h,3) with configuration [2_{n_1}],..,[2_{n_4}],
/// where zero entries mean the cusp is removed again at the end.
inline SeriesResult series_twos(Int h, Int k, std::array<Int, 4> n) {
    Int sum = n[0] + n[1] + n[2] + n[3];
    if (sum != 2 * k + h)
        throw std::invalid_argument("indices must satisfy n1+n2+n3+n4 = 2k+h");
    std::array<Int, 4> filled = n;
    for (auto& v : filled) v = std::max<Int>(v, 1);
    std::ostringstream sc;
    sc << "start plane degree=4 config=[2],[2],[2]\n";
    sc << "mark T pattern=2*p4+1*t1+1*t2\n";  // tangent at a general smooth point
    sc << "blowup t1\n";                      // -> F_1, (1,3)
    sc << "elm T at t2\n";                    // -> F_0, (3,3), fourth cusp at p4
    sc << "mark L1 pattern=2*c1+1*r1\n";
    sc << "mark L2 pattern=2*c2+1*r2\n";
    sc << "mark L3 pattern=2*c3+1*r3\n";
    const std::array<std::string, 4> fiber{"L1", "L2", "L3", "T"};
    const std::array<std::string, 4> smooth{"r1", "r2", "r3", "t2"};
    const std::array<std::string, 4> cusp{"c1", "c2", "c3", "p4"};
    for (int j = 0; j < 4; ++j)
        for (Int i = 1; i < filled[j]; ++i) sc << "elm " << fiber[j] << " at " << smooth[j] << "\n";
    for (int j = 0; j < 4; ++j)
        if (n[j] == 0) sc << "elm " << fiber[j] << " at " << cusp[j] << "\n";
    std::vector<MultiplicitySequence> config;
    for (Int v : n)
        if (v >= 1) config.push_back(block(2, v, 0, 0));
    return finish_series(sc, h, DivisorClass{k + 1 - h, 3}, config);
}

}  // namespace detail

/// Type (k+1-h,3), configuration [2_{n_1}],[2_{n_2}],[2_{n_3}],[2_{n_4}]
/// on F_h, h in {0,1}, k >= 2, all n_j >= 1 with sum 2k+h.
inline SeriesResult series_row4(Int h, Int k, std::array<Int, 4> n) {
    if (h < 0 || h > 1 || k < 2) throw std::invalid_argument("series_row4 needs h in {0,1}, k >= 2");
    for (Int v : n)
        if (v < 1) throw std::invalid_argument("series_row4 needs all n_j >= 1");
    return detail::series_twos(h, k, n);
}

/// Extension of the fourth series to fewer cusps: n_j >= 0, k >= 0,
/// sum 2k+h; zero entries drop the corresponding cusp.
inline SeriesResult series_row4_ext(Int h, Int k, std::array<Int, 4> n) {
    if (h < 0 || h > 1 || k < 0)
        throw std::invalid_argument("series_row4_ext needs h in {0,1}, k >= 0");
    for (Int v : n)
        if (v < 0) throw std::invalid_argument("series_row4_ext needs all n_j >= 0");
    return detail::series_twos(h, k, n);
}

/// The sporadic four-cusped curve of type (0,3) on F_2.
inline SeriesResult curve_f2() {
    std::ostringstream sc;
    sc << "start plane degree=5 config=[2_3],[2],[2],[2]\n";
    sc << "mark T pattern=4*c1+1*s1\n";
    sc << "mark L1 pattern=2*c1+2*c2+1*r1\n";
    sc << "mark L2 pattern=2*c1+2*c3+1*r2\n";
    sc << "mark L3 pattern=2*c1+2*c4+1*r3\n";
    sc << "blowup c1\n";       // -> F_1, (2,3), first cusp reduced to [2_2]
    sc << "elm T at c1 onE\n"; // -> F_2, (0,3), [2],[2],[2],[2]
    std::vector<MultiplicitySequence> config{
        MultiplicitySequence({2}), MultiplicitySequence({2}), MultiplicitySequence({2}),
        MultiplicitySequence({2})};
    return detail::finish_series(sc, 2, DivisorClass{0, 3}, config);
}

}  // namespace cuspidal
