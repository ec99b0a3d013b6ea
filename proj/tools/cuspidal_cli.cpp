// Command-line front end: feasibility checks, invariant computations,
// candidate enumeration, construction-series scripts, and exact local
// analysis of defining polynomials.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cuspidal/feasibility.hpp"
#include "cuspidal/polyengine.hpp"
#include "cuspidal/script.hpp"

namespace {

using namespace cuspidal;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SurfaceId parse_surface(const std::string& text) {
    std::string t = text;
    if (!t.empty() && (t[0] == 'F' || t[0] == 'f')) t = t.substr(1);
    try {
        std::size_t used = 0;
        Int e = std::stoll(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return SurfaceId(e);
    } catch (const std::exception&) {
        throw UsageError("bad surface '" + text + "': expected F<e> with e >= 0");
    }
}

DivisorClass parse_type(const std::string& text) {
    std::string t = text;
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    auto comma = t.find(',');
    if (comma == std::string::npos)
        throw UsageError("bad type '" + text + "': expected a,b");
    try {
        return DivisorClass{std::stoll(t.substr(0, comma)), std::stoll(t.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad type '" + text + "': expected a,b");
    }
}

std::pair<Rational, Rational> parse_point(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw UsageError("bad point '" + text + "': expected x,y with rational coordinates");
    try {
        return {Rational(text.substr(0, comma)), Rational(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad point '" + text + "': expected x,y with rational coordinates");
    }
}

CurveSpec spec_from_flags(const std::string& surface, const std::string& type,
                          const std::string& config, bool kodaira) {
    std::vector<MultiplicitySequence> cfg;
    if (!config.empty()) cfg = parse_config(config);
    return CurveSpec(parse_surface(surface), parse_type(type), cfg, kodaira);
}

std::string read_stream_or_file(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in.good()) throw UsageError("cannot read file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_check(const std::string& surface, const std::string& type, const std::string& config,
              bool kodaira, bool records) {
    CurveSpec spec = spec_from_flags(surface, type, config, kodaira);
    FeasibilityReport rep = full_report(spec);
    std::cout << serialize_report(spec, rep, records);
    return rep.all_pass() ? 0 : 1;
}

int run_chi(const std::string& surface, const std::string& type, const std::string& config,
            bool records) {
    CurveSpec spec = spec_from_flags(surface, type, config, false);
    Int chi = chi_log(spec);
    if (records)
        std::cout << "chi = " << chi << "\n";
    else
        std::cout << chi << "\n";
    return 0;
}

std::size_t enum_cap() {
    if (const char* env = std::getenv("CUSPIDAL_MAX_ENUM")) {
        try {
            long long v = std::stoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw UsageError("CUSPIDAL_MAX_ENUM must be a positive integer");
    }
    return 1000000;
}

void print_candidate(const CurveSpec& spec, bool records) {
    if (records) {
        std::cout << "candidate = F" << spec.surface.e << " (" << spec.cls.a << "," << spec.cls.b
                  << ") " << (spec.config.empty() ? "[]" : format_config(spec.config)) << "\n";
    } else {
        std::cout << "F" << spec.surface.e << "  (" << spec.cls.a << "," << spec.cls.b << ")  "
                  << (spec.config.empty() ? "smooth" : format_config(spec.config)) << "  chi="
                  << chi_log(spec) << "\n";
    }
}

int run_enumerate(const std::string& surface, const std::string& type, Int min_cusps, bool kodaira,
                  Int max_e, Int max_a, Int max_b, bool records) {
    std::size_t cap = enum_cap();
    std::size_t total = 0;
    auto emit = [&](SurfaceId s, DivisorClass cls) {
        for (const auto& spec : enumerate_configs(s, cls, min_cusps, kodaira, cap)) {
            print_candidate(spec, records);
            ++total;
        }
    };
    if (!surface.empty() || !type.empty()) {
        if (surface.empty() || type.empty())
            throw UsageError("enumerate needs both --surface and --type (or range flags)");
        emit(parse_surface(surface), parse_type(type));
    } else {
        if (max_e < 0 || max_a < 0 || max_b < 0)
            throw UsageError("enumerate needs --surface/--type or --max-e/--max-a/--max-b");
        for (Int e = 0; e <= max_e; ++e)
            for (Int b = 0; b <= max_b; ++b)
                for (Int a = 0; a <= max_a; ++a) {
                    DivisorClass cls{a, b};
                    if (!is_curve_class(cls)) continue;
                    if (arithmetic_genus(SurfaceId(e), cls) < 0) continue;
                    emit(SurfaceId(e), cls);
                }
    }
    if (records)
        std::cout << "count = " << total << "\n";
    else
        std::cout << total << " candidate" << (total == 1 ? "" : "s") << "\n";
    return 0;
}

std::array<Int, 4> parse_quadruple(const std::string& text) {
    std::array<Int, 4> n{};
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= 4) throw UsageError("bad indices '" + text + "': expected n1,n2,n3,n4");
        try {
            n[i++] = std::stoll(item);
        } catch (const std::exception&) {
            throw UsageError("bad indices '" + text + "': expected n1,n2,n3,n4");
        }
    }
    if (i != 4) throw UsageError("bad indices '" + text + "': expected n1,n2,n3,n4");
    return n;
}

int run_series(const std::string& row, Int e, Int h, Int k, const std::string& indices) {
    SeriesResult res = [&] {
        try {
            if (row == "1") return series_row1(e, k);
            if (row == "2") return series_row2(h, k);
            if (row == "3") return series_row3(h, k);
            if (row == "4") return series_row4(h, k, parse_quadruple(indices));
            if (row == "4ext") return series_row4_ext(h, k, parse_quadruple(indices));
            if (row == "f2") return curve_f2();
        } catch (const std::invalid_argument& err) {
            throw UsageError(err.what());
        }
        throw UsageError("bad --row '" + row + "': expected 1, 2, 3, 4, 4ext, or f2");
    }();
    const CurveState& st = res.state;
    std::cout << "# surface = F" << st.e() << "\n";
    std::cout << "# type = (" << st.cls().a << "," << st.cls().b << ")\n";
    std::cout << "# config = " << format_config(st.config()) << "\n";
    std::cout << "# chi = " << chi_log(st.spec()) << "\n";
    std::cout << res.script;
    return 0;
}

int run_run_script(const std::string& input, bool trace) {
    std::string text = read_stream_or_file(input);
    MoveScript script;
    try {
        script = parse_script(text);
    } catch (const ScriptError& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return 2;
    }
    try {
        ScriptResult res = run_script(text);
        if (trace)
            for (const auto& line : res.trace) std::cout << line << "\n";
        std::cout << res.state.describe() << "\n";
        return 0;
    } catch (const ScriptError& err) {
        std::cerr << "script failed: " << err.what() << "\n";
        return 1;
    }
}

int run_poly(const std::string& file, const std::string& surface, bool plane, bool want_bidegree,
             const std::string& chart_spec, const std::string& at, bool want_multiplicity,
             bool want_resolve, const std::string& contact_file) {
    std::string text = read_stream_or_file(file);
    if (plane == !surface.empty())
        throw UsageError("poly needs exactly one of --surface F<e> or --plane");

    MPoly local;  // 2-variable chart polynomial, once a chart is chosen
    bool have_local = false;
    if (!surface.empty()) {
        BigradedPolynomial f = BigradedPolynomial::parse(parse_surface(surface), text);
        DivisorClass deg = bidegree(f);
        if (want_bidegree) std::cout << "bidegree = (" << deg.a << "," << deg.b << ")\n";
        if (!chart_spec.empty()) {
            auto comma = chart_spec.find(',');
            if (comma == std::string::npos)
                throw UsageError("bad --chart '" + chart_spec + "': expected i,j");
            local = chart(f, std::stoi(chart_spec.substr(0, comma)),
                          std::stoi(chart_spec.substr(comma + 1)));
            have_local = true;
        }
    } else {
        MPoly f = MPoly::parse(text, plane_vars());
        if (want_bidegree) std::cout << "degree = " << f.max_total_degree() << "\n";
        if (!chart_spec.empty()) {
            const auto& vars = plane_vars();
            auto it = std::find(vars.begin(), vars.end(), chart_spec);
            if (it == vars.end())
                throw UsageError("bad --chart '" + chart_spec + "': expected x, y, or z");
            local = plane_chart(f, static_cast<std::size_t>(it - vars.begin()));
            have_local = true;
        }
    }

    if (want_multiplicity || want_resolve || !contact_file.empty()) {
        if (!have_local || at.empty())
            throw UsageError("local analysis needs --chart and --at");
        Point2 p = parse_point(at);
        if (want_multiplicity)
            std::cout << "multiplicity = " << multiplicity_at(local, p) << "\n";
        if (want_resolve) {
            MultiplicitySequence seq = local_resolution(local, p);
            std::cout << "sequence = " << seq.format() << "\n";
            std::cout << "delta = " << delta(seq) << "\n";
        }
        if (!contact_file.empty()) {
            MPoly g = MPoly::parse(read_stream_or_file(contact_file), plane_vars());
            // restrict the contact curve to the same chart
            std::size_t var = 2;  // plane contact curves live in the z-chart by default
            MPoly g_local = plane_chart(g, var);
            std::cout << "contact = " << contact_order(local, g_local, p) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculus for rational cuspidal curves on Hirzebruch surfaces"};
    app.set_help_flag("--help", "print usage");  // frees -h/--h for the parity flag
    app.require_subcommand(1);

    std::string surface, type, config, format = "human";
    bool kodaira = false;

    auto add_spec_flags = [&](CLI::App* cmd, bool config_required) {
        cmd->add_option("--surface", surface, "surface F<e>")->required();
        cmd->add_option("--type", type, "divisor class a,b")->required();
        auto* c = cmd->add_option("--config", config, "cusp configuration, e.g. [2_3],[2]");
        if (config_required) c->required();
        cmd->add_flag("--kodaira", kodaira, "assume non-negative logarithmic Kodaira dimension");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"human", "records"}));
    };

    auto* check_cmd = app.add_subcommand("check", "run every feasibility check on a candidate");
    add_spec_flags(check_cmd, true);
    add_format(check_cmd);

    auto* report_cmd =
        app.add_subcommand("report", "full invariant and resolution report for a candidate");
    add_spec_flags(report_cmd, false);
    add_format(report_cmd);

    auto* chi_cmd = app.add_subcommand("chi", "Euler characteristic of the logarithmic bundle");
    add_spec_flags(chi_cmd, false);
    add_format(chi_cmd);

    Int min_cusps = 0, max_e = -1, max_a = -1, max_b = -1;
    auto* enum_cmd = app.add_subcommand("enumerate", "enumerate feasible cusp configurations");
    enum_cmd->add_option("--surface", surface, "surface F<e>");
    enum_cmd->add_option("--type", type, "divisor class a,b");
    enum_cmd->add_option("--min-cusps", min_cusps, "require at least this many cusps");
    enum_cmd->add_flag("--kodaira", kodaira, "assume non-negative logarithmic Kodaira dimension");
    enum_cmd->add_option("--max-e", max_e, "sweep surfaces F0..Fe");
    enum_cmd->add_option("--max-a", max_a, "sweep 0 <= a <= max");
    enum_cmd->add_option("--max-b", max_b, "sweep 0 <= b <= max");
    add_format(enum_cmd);

    std::string row, indices;
    Int se = 0, sh = 0, sk = 0;
    auto* series_cmd = app.add_subcommand("series", "emit the move script of a construction");
    series_cmd->add_option("--row", row, "1, 2, 3, 4, 4ext, or f2")->required();
    series_cmd->add_option("--e", se, "target surface index (row 1)");
    series_cmd->add_option("--h", sh, "surface parity h in {0,1} (rows 2-4, 4ext)");
    series_cmd->add_option("--k", sk, "series step");
    series_cmd->add_option("--n", indices, "cusp sizes n1,n2,n3,n4 (row 4, 4ext)");

    std::string input;
    bool trace = false;
    auto* run_cmd = app.add_subcommand("run-script", "replay a move script");
    run_cmd->add_option("--input,-i", input, "script file (default: stdin)");
    run_cmd->add_flag("--trace", trace, "print the state after every move");

    std::string poly_file, chart_spec, at, contact_file;
    bool plane = false, want_bidegree = false, want_multiplicity = false, want_resolve = false;
    auto* poly_cmd = app.add_subcommand("poly", "exact local analysis of a defining polynomial");
    poly_cmd->add_option("--file,-f", poly_file, "polynomial file (default: stdin)");
    poly_cmd->add_option("--surface", surface, "interpret as bigraded on F<e>");
    poly_cmd->add_flag("--plane", plane, "interpret as a plane curve in x,y,z");
    poly_cmd->add_flag("--bidegree", want_bidegree, "print the (bi)degree");
    poly_cmd->add_option("--chart", chart_spec, "affine chart: i,j on a surface, x/y/z on the plane");
    poly_cmd->add_option("--at", at, "rational chart point x,y");
    poly_cmd->add_flag("--multiplicity", want_multiplicity, "multiplicity at the point");
    poly_cmd->add_flag("--resolve", want_resolve, "multiplicity sequence of the cusp at the point");
    poly_cmd->add_option("--contact", contact_file, "line file: contact order at the point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check_cmd) return run_check(surface, type, config, kodaira, format == "records");
        if (*report_cmd) {
            CurveSpec spec = spec_from_flags(surface, type, config, kodaira);
            FeasibilityReport rep = full_report(spec);
            std::cout << serialize_report(spec, rep, format == "records");
            return rep.all_pass() ? 0 : 1;
        }
        if (*chi_cmd) return run_chi(surface, type, config, format == "records");
        if (*enum_cmd)
            return run_enumerate(surface, type, min_cusps, kodaira, max_e, max_a, max_b,
                                 format == "records");
        if (*series_cmd) return run_series(row, se, sh, sk, indices);
        if (*run_cmd) return run_run_script(input, trace);
        if (*poly_cmd)
            return run_poly(poly_file, surface, plane, want_bidegree, chart_spec, at,
                            want_multiplicity, want_resolve, contact_file);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
