#include <catch2/catch_amalgamated.hpp>
#include <functional>
#include <random>

#include "cuspidal/script.hpp"

using namespace cuspidal;

namespace {

std::vector<MultiplicitySequence> cfg(const std::string& text) {
    return text.empty() ? std::vector<MultiplicitySequence>{} : parse_config(text);
}

}  // namespace

TEST_CASE("curve states validate genus") {
    CHECK_NOTHROW(CurveState::plane(5, cfg("[2_3],[2],[2],[2]")));
    CHECK_NOTHROW(CurveState::surface(2, {0, 3}, cfg("[2],[2],[2],[2]")));
    CHECK_THROWS_AS(CurveState::plane(5, cfg("[2_3]")), MoveError);
    CHECK_THROWS_AS(CurveState::surface(2, {0, 3}, cfg("[2]")), MoveError);
}

TEST_CASE("marks must sum to the fiber degree") {
    auto st = CurveState::plane(5, cfg("[2_3],[2],[2],[2]"));
    CHECK_THROWS_AS(st.add_mark({"T", {{"c1", 4}}, {}}), MoveError);
    CHECK_NOTHROW(st.add_mark({"T", {{"c1", 4}, {"r1", 1}}, {}}));
    CHECK_THROWS_AS(st.add_mark({"T", {{"c1", 4}, {"r2", 1}}, {}}), MoveError);  // duplicate id
    // contact below multiplicity
    CHECK_THROWS_AS(st.add_mark({"L", {{"c1", 1}, {"r2", 4}}, {}}), MoveError);
}

TEST_CASE("from_plane and to_plane round trip") {
    auto st = CurveState::plane(5, cfg("[2_3],[2],[2],[2]"));
    st.add_mark({"T", {{"c1", 4}, {"r1", 1}}, {}});

    SECTION("at a smooth marked point") {
        st.from_plane({.id = "r1"});
        CHECK_FALSE(st.is_plane());
        CHECK(st.e() == 1);
        CHECK(st.cls() == DivisorClass{1, 4});
        CHECK(format_config(st.config()) == "[2_3],[2],[2],[2]");
        REQUIRE(st.marks().size() == 1);
        CHECK(st.marks()[0].pattern == std::vector<std::pair<std::string, Int>>{{"c1", 4}});
        st.to_plane();
        CHECK(st.is_plane());
        CHECK(st.degree() == 5);
        CHECK(format_config(st.config()) == "[2_3],[2],[2],[2]");
    }
    SECTION("at a cusp") {
        st.from_plane({.id = "c1"});
        CHECK(st.cls() == DivisorClass{2, 3});
        CHECK(format_config(st.config()) == "[2_2],[2],[2],[2]");
        st.to_plane();
        CHECK(st.degree() == 5);
        CHECK(format_config(st.config()) == "[2_3],[2],[2],[2]");
    }
    SECTION("at a point off the curve") {
        st.from_plane({.id = "q", .off_curve = true, .on_mark = "T"});
        CHECK(st.cls() == DivisorClass{0, 5});
        REQUIRE(st.marks().size() == 1);  // T passes through q
        st.to_plane();
        CHECK(st.degree() == 5);
        CHECK(format_config(st.config()) == "[2_3],[2],[2],[2]");
    }
}

TEST_CASE("single blow-ups of the quintic reproduce the three curves on F_1") {
    // off the curve -> (0,5); smooth point -> (1,4); the [2_3] cusp -> (2,3)
    auto mk = [&] {
        auto st = CurveState::plane(5, cfg("[2_3],[2],[2],[2]"));
        st.add_mark({"T", {{"c1", 4}, {"r1", 1}}, {}});
        return st;
    };
    auto c1 = mk();
    c1.from_plane({.id = "q", .off_curve = true, .on_mark = "T"});
    CHECK(c1.cls() == DivisorClass{0, 5});
    CHECK(format_config(c1.config()) == "[2_3],[2],[2],[2]");
    auto c2 = mk();
    c2.from_plane({.id = "r1"});
    CHECK(c2.cls() == DivisorClass{1, 4});
    CHECK(format_config(c2.config()) == "[2_3],[2],[2],[2]");
    auto c3 = mk();
    c3.from_plane({.id = "c1"});
    CHECK(c3.cls() == DivisorClass{2, 3});
    CHECK(format_config(c3.config()) == "[2_2],[2],[2],[2]");
}

TEST_CASE("elm up and down restore the state") {
    auto st = CurveState::plane(5, cfg("[2_3],[2],[2],[2]"));
    st.add_mark({"T", {{"c1", 4}, {"r1", 1}}, {}});
    st.from_plane({.id = "r1"});  // F_1, (1,4), T.C = 4c1
    auto before_cls = st.cls();
    auto before_cfg = format_config(st.config());

    st.elm("T", {.id = "s", .on_e = true});  // F_2, (1,4), [4,2_3],...
    CHECK(st.e() == 2);
    CHECK(st.cls() == DivisorClass{1, 4});
    CHECK(format_config(st.config()) == "[4,2_3],[2],[2],[2]");

    st.elm("T", {.id = "c1"});  // back down at the cusp that gained the 4
    CHECK(st.e() == 1);
    CHECK(st.cls() == before_cls);
    CHECK(format_config(st.config()) == before_cfg);
}

TEST_CASE("contraction with spread residual contact is rejected") {
    auto st = CurveState::plane(5, cfg("[2_3],[2],[2],[2]"));
    st.add_mark({"L", {{"c2", 3}, {"r1", 1}, {"s1", 1}}, {}});
    st.from_plane({.id = "q", .off_curve = true, .on_mark = "L"});
    // L still meets the curve at c2, r1, s1: removing nothing leaves
    // contact spread over three points
    CHECK_THROWS_WITH(st.elm("L", {.id = "q2", .off_curve = true}),
                      Catch::Matchers::ContainsSubstring("residual contact"));
}

TEST_CASE("pending blow-up discipline") {
    auto st = CurveState::plane(5, cfg("[2_3],[2],[2],[2]"));
    st.add_mark({"T", {{"c1", 4}, {"r1", 1}}, {}});
    st.from_plane({.id = "r1"});
    CHECK_THROWS_AS(st.contract("T"), MoveError);  // nothing pending
    st.blowup({.id = "c1"});
    CHECK_THROWS_AS(st.blowup({.id = "c1"}), MoveError);  // already pending
    CHECK_THROWS_AS(st.to_plane(), MoveError);            // pending blocks other moves
    st.contract("T");
    CHECK(st.e() == 0);
    CHECK(st.cls() == DivisorClass{3, 4});
}

TEST_CASE("swap_rulings") {
    auto st = CurveState::surface(0, {3, 4}, cfg("[2_3],[2],[2],[2]"));
    st.swap_rulings();
    CHECK(st.cls() == DivisorClass{4, 3});
    auto st1 = CurveState::surface(1, {1, 4}, cfg("[2_3],[2],[2],[2]"));
    CHECK_THROWS_AS(st1.swap_rulings(), MoveError);
}

TEST_CASE("script parsing errors carry line numbers") {
    CHECK_THROWS_AS(parse_script("start plane degree=5\nfrobnicate T\n"), ScriptError);
    try {
        parse_script("start plane degree=5\nfrobnicate T\n");
    } catch (const ScriptError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_script("mark T\n"), ScriptError);
    CHECK_THROWS_AS(parse_script("start plane\n"), ScriptError);
    CHECK_THROWS_AS(parse_script("elm T x onE\n"), ScriptError);
}

TEST_CASE("run_script basics") {
    // empty script is the identity
    auto st = CurveState::surface(2, {0, 3}, cfg("[2],[2],[2],[2]"));
    auto res = run_script(st, {});
    CHECK(res.state.cls() == DivisorClass{0, 3});
    CHECK(res.trace.empty());

    // self-contained script must start with `start`
    CHECK_THROWS_AS(run_script("to_plane\n"), ScriptError);

    // a failing move aborts with its line number
    const char* bad =
        "start plane degree=5 config=[2_3],[2],[2],[2]\n"
        "mark L pattern=3*c2+1*r1+1*s1\n"
        "blowup q on=L\n"
        "elm L at q2\n";
    try {
        run_script(bad);
        FAIL("expected ScriptError");
    } catch (const ScriptError& e) {
        CHECK(e.line == 4);
        CHECK(std::string(e.what()).find("residual contact") != std::string::npos);
    }
}

TEST_CASE("script transcribing the sporadic construction") {
    const char* text =
        "# quintic with four cusps; blow up the big cusp, then an\n"
        "# elementary transformation centered on it again\n"
        "start plane degree=5 config=[2_3],[2],[2],[2]\n"
        "mark T pattern=4*c1+1*s1\n"
        "blowup c1\n"
        "assert surface=F1 type=(2,3) config=[2_2],[2],[2],[2]\n"
        "elm T at c1 onE\n"
        "assert surface=F2 type=(0,3) config=[2],[2],[2],[2] chi=-1\n";
    auto res = run_script(text);
    CHECK(res.state.e() == 2);
    CHECK(res.state.cls() == DivisorClass{0, 3});
    CHECK(format_config(res.state.config()) == "[2],[2],[2],[2]");
}

TEST_CASE("assert failures are positioned") {
    const char* text =
        "start plane degree=5 config=[2_3],[2],[2],[2]\n"
        "assert plane degree=6\n";
    try {
        run_script(text);
        FAIL("expected ScriptError");
    } catch (const ScriptError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("assert failed") != std::string::npos);
    }
}

TEST_CASE("series generators hit the family table") {
    auto r1 = series_row1(2, 0);
    CHECK(r1.state.e() == 2);
    CHECK(r1.state.cls() == DivisorClass{1, 4});
    CHECK(format_config(r1.state.config()) == "[4,2_3],[2],[2],[2]");
    CHECK(r1.script.find("assert surface=F2 type=(1,4)") != std::string::npos);

    for (Int e = 0; e <= 4; ++e)
        for (Int k = 0; k <= 4; ++k) {
            if (e == 0 && k == 0) continue;
            auto res = series_row1(e, k);
            CHECK(res.state.e() == e);
            CHECK(res.state.cls() == DivisorClass{2 * k + 1, 4});
            auto spec = res.state.spec();
            CHECK(geometric_genus(spec) == 0);
            CHECK(spec.num_cusps() == 4);
        }
    for (Int h = 0; h <= 1; ++h)
        for (Int k = 0; k <= 4; ++k) {
            if (h == 0 && k == 0) continue;
            auto r2 = series_row2(h, k);
            CHECK(r2.state.e() == h);
            CHECK(r2.state.cls() == DivisorClass{3 * k + 1 - h, 5});
            CHECK(r2.state.config()[0].size() == static_cast<std::size_t>(2 * k - 1 + h + 3));
            auto r3 = series_row3(h, k);
            CHECK(r3.state.e() == h);
            CHECK(r3.state.cls() == DivisorClass{2 * k + 2 - h, 4});
        }
    // fourth series: all partitions for small k
    for (Int h = 0; h <= 1; ++h)
        for (Int k = 2; k <= 4; ++k)
            for (Int n1 = 1; n1 <= 2 * k + h - 3; ++n1)
                for (Int n2 = 1; n1 + n2 <= 2 * k + h - 2; ++n2)
                    for (Int n3 = 1; n1 + n2 + n3 <= 2 * k + h - 1; ++n3) {
                        Int n4 = 2 * k + h - n1 - n2 - n3;
                        auto res = series_row4(h, k, {n1, n2, n3, n4});
                        CHECK(res.state.e() == h);
                        CHECK(res.state.cls() == DivisorClass{k + 1 - h, 3});
                        CHECK(res.state.spec().num_cusps() == 4);
                    }
    auto spot = series_row4(0, 2, {1, 1, 1, 1});
    CHECK(spot.state.e() == 0);
    CHECK(spot.state.cls() == DivisorClass{3, 3});
    CHECK(format_config(spot.state.config()) == "[2],[2],[2],[2]");

    auto f2 = curve_f2();
    CHECK(f2.state.e() == 2);
    CHECK(f2.state.cls() == DivisorClass{0, 3});
    CHECK(format_config(f2.state.config()) == "[2],[2],[2],[2]");
}

TEST_CASE("fewer-cusps extension of the fourth series") {
    for (Int h = 0; h <= 1; ++h)
        for (Int k = 0; k <= 3; ++k)
            for (Int n1 = 0; n1 <= 2 * k + h; ++n1)
                for (Int n2 = 0; n1 + n2 <= 2 * k + h; ++n2)
                    for (Int n3 = 0; n1 + n2 + n3 <= 2 * k + h; ++n3) {
                        Int n4 = 2 * k + h - n1 - n2 - n3;
                        auto res = series_row4_ext(h, k, {n1, n2, n3, n4});
                        CHECK(res.state.e() == h);
                        CHECK(res.state.cls() == DivisorClass{k + 1 - h, 3});
                        Int cusps = (n1 > 0) + (n2 > 0) + (n3 > 0) + (n4 > 0);
                        CHECK(res.state.spec().num_cusps() == cusps);
                    }
}

TEST_CASE("series parameter validation") {
    CHECK_THROWS_AS(series_row1(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(series_row2(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(series_row2(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(series_row3(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(series_row4(0, 1, {1, 1, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(series_row4(0, 2, {1, 1, 1, 2}), std::invalid_argument);  // wrong sum
    CHECK_THROWS_AS(series_row4_ext(0, 2, {5, 0, 0, 0}), std::invalid_argument);  // wrong sum
}

TEST_CASE("series scripts replay through run_script") {
    for (auto res : {series_row1(3, 2), series_row2(1, 2), series_row3(0, 3),
                     series_row4(1, 3, {3, 2, 1, 1}), series_row4_ext(1, 1, {3, 0, 0, 0}),
                     curve_f2()}) {
        auto replay = run_script(res.script);
        CHECK(replay.state.e() == res.state.e());
        CHECK(replay.state.cls() == res.state.cls());
        CHECK(format_config(replay.state.config()) == format_config(res.state.config()));
    }
}

TEST_CASE("randomized round trips") {
    std::mt19937 rng(23);
    int trips = 0;
    // plane round trips over every small genus-0 plane configuration
    for (Int d = 3; d <= 6; ++d) {
        Int pa = (d - 1) * (d - 2) / 2;
        auto pool = enumerate_valid(pa, d - 1);
        std::vector<std::vector<MultiplicitySequence>> configs;
        std::vector<MultiplicitySequence> cur;
        std::function<void(std::size_t, Int)> rec = [&](std::size_t start, Int remaining) {
            if (remaining == 0) {
                configs.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < pool.size(); ++i) {
                if (delta(pool[i]) > remaining) continue;
                cur.push_back(pool[i]);
                rec(i, remaining - delta(pool[i]));
                cur.pop_back();
            }
        };
        rec(0, pa);
        for (const auto& config : configs) {
            auto st = CurveState::plane(d, config);
            std::uniform_int_distribution<std::size_t> pick(0, config.size());
            std::size_t at = pick(rng);
            CurveState::PointSpec x;
            if (at == config.size())
                x = {.id = "fresh", .off_curve = true};
            else
                x = {.id = "c" + std::to_string(at + 1)};
            auto before = format_config(st.config());
            st.from_plane(x);
            CHECK(geometric_genus(st.spec()) == 0);
            st.to_plane();
            CHECK(st.degree() == d);
            CHECK(format_config(st.config()) == before);
            ++trips;
        }
    }
    // elm round trips on series states (their tracked fiber T meets
    // the curve at the single point c1)
    std::uniform_int_distribution<Int> ee(0, 3), kk(1, 5);
    while (trips < 500) {
        Int e = ee(rng), k = kk(rng);
        auto st = series_row1(e, k).state;
        auto before_cls = st.cls();
        auto before_cfg = format_config(st.config());
        Int before_e = st.e();
        // up at a fresh point of the tracked fiber, then down at c1,
        // which carries the prepended head afterwards
        if (st.e() == 0)
            st.elm("T", {.id = "fresh_up"});  // F_0 -> F_1
        else
            st.elm("T", {.id = "fresh_up", .on_e = true});
        st.elm("T", {.id = "c1"});  // back down
        CHECK(st.e() == before_e);
        CHECK(st.cls() == before_cls);
        CHECK(format_config(st.config()) == before_cfg);
        ++trips;
    }
    CHECK(trips >= 500);
}
