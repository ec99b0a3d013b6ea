#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "cuspidal/cusp.hpp"

using namespace cuspidal;

namespace {

std::vector<Int> seq(std::initializer_list<Int> v) { return std::vector<Int>(v); }

// Brute-force generator of all valid compact sequences with delta <= budget.
void brute_rec(std::vector<Int>& cur, Int budget, std::set<std::vector<Int>>& out) {
    if (!cur.empty() && !check_sequence(cur)) out.insert(cur);
    Int max_next = cur.empty() ? budget + 1 : cur.back();
    for (Int v = 2; v <= max_next; ++v) {
        Int d = 0;
        for (Int m : cur) d += m * (m - 1) / 2;
        if (d + v * (v - 1) / 2 > budget) break;
        cur.push_back(v);
        brute_rec(cur, budget, out);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("proximity validation") {
    // valid compact sequences
    CHECK_FALSE(check_sequence(seq({2})));
    CHECK_FALSE(check_sequence(seq({2, 2, 2})));
    CHECK_FALSE(check_sequence(seq({3, 2})));
    CHECK_FALSE(check_sequence(seq({4, 2, 2, 2})));
    CHECK_FALSE(check_sequence(seq({6, 6, 3, 3, 3, 2})));
    CHECK_FALSE(check_sequence(seq({5, 2})));  // tail 2+1+1+1 hits 5 exactly
    // invalid ones
    CHECK(check_sequence(seq({})).has_value());      // empty
    CHECK(check_sequence(seq({1})).has_value());     // compact entries must be >= 2
    CHECK(check_sequence(seq({2, 3})).has_value());  // increasing
    // [3,2,2]: after 3 the entries 2+2 overshoot to 4
    auto v = check_sequence(seq({3, 2, 2}));
    REQUIRE(v.has_value());
    CHECK(v->index == 0);
}

TEST_CASE("parse and format round trip") {
    for (const char* text : {"[2]", "[2_3]", "[4,2_3]", "[6_2,3_3,2]", "[4_2,2_3]", "[3_5,2]"}) {
        auto s = MultiplicitySequence::parse(text);
        CHECK(s.format() == text);
        CHECK(MultiplicitySequence::parse(s.format()) == s);
    }
    CHECK_THROWS_AS(MultiplicitySequence::parse("[3,2,2]"), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicitySequence::parse("[1]"), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicitySequence::parse("[]"), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicitySequence::parse("[2,]"), std::invalid_argument);
    CHECK_THROWS_AS(MultiplicitySequence::parse("2_3"), std::invalid_argument);
}

TEST_CASE("config parse and format") {
    auto cfg = parse_config("[4,2_3],[2],[2],[2]");
    REQUIRE(cfg.size() == 4);
    CHECK(cfg[0] == MultiplicitySequence::parse("[4,2_3]"));
    CHECK(format_config(cfg) == "[4,2_3],[2],[2],[2]");
}

TEST_CASE("delta, milnor, eta, omega, M-number") {
    auto s2 = MultiplicitySequence::parse("[2]");
    auto s23 = MultiplicitySequence::parse("[2_3]");
    auto s32 = MultiplicitySequence::parse("[3,2]");
    auto s4 = MultiplicitySequence::parse("[4,2_3]");
    CHECK(delta(s2) == 1);
    CHECK(delta(s23) == 3);
    CHECK(delta(s32) == 4);
    CHECK(delta(s4) == 9);
    CHECK(milnor(s2) == 2);
    CHECK(milnor(s4) == 18);
    CHECK(m_number(s2) == 1);
    CHECK(m_number(s23) == 3);
    CHECK(m_number(s32) == 4);
    CHECK(m_number(s4) == 7);
    CHECK(eta_omega(s2) == std::pair<Int, Int>{1, 1});
    CHECK(eta_omega(s32) == std::pair<Int, Int>{3, 2});
    CHECK(eta_omega(s23) == std::pair<Int, Int>{3, 1});
    // [2_n] -> M = n
    for (Int n = 1; n <= 12; ++n) {
        auto s = MultiplicitySequence(std::vector<Int>(static_cast<std::size_t>(n), 2));
        CHECK(m_number(s) == n);
        CHECK(eta_omega(s) == std::pair<Int, Int>{n, 1});
    }
    CHECK(resolution_length(s2) == 3);
    CHECK(resolution_length(s4) == 6);
}

TEST_CASE("M-number is stable under the virtual tail of ones") {
    auto formula = [](std::vector<Int> ext) {
        Int m = -1;
        for (Int v : ext) m += v - 1;
        for (std::size_t i = 1; i < ext.size(); ++i)
            m += (ext[i - 1] + ext[i] - 1) / ext[i] - 1;  // ceil(prev/cur) - 1
        return m;
    };
    for (const char* text : {"[2]", "[2_5]", "[3,2]", "[4,2_3]", "[6_2,3_3,2]", "[3_4,2]"}) {
        auto s = MultiplicitySequence::parse(text);
        for (int extra = 1; extra <= 4; ++extra) {
            std::vector<Int> ext = s.entries();
            ext.insert(ext.end(), static_cast<std::size_t>(extra), 1);
            CHECK(formula(ext) == m_number(s));
        }
    }
}

TEST_CASE("enumeration of valid sequences") {
    auto got = enumerate_valid(3);
    std::vector<MultiplicitySequence> want{
        MultiplicitySequence::parse("[2]"), MultiplicitySequence::parse("[2_2]"),
        MultiplicitySequence::parse("[2_3]"), MultiplicitySequence::parse("[3]")};
    CHECK(got == want);

    for (Int budget = 1; budget <= 8; ++budget) {
        std::set<std::vector<Int>> brute;
        std::vector<Int> cur;
        brute_rec(cur, budget, brute);
        auto fast = enumerate_valid(budget);
        std::set<std::vector<Int>> fast_set;
        for (const auto& s : fast) fast_set.insert(s.entries());
        CHECK(fast_set == brute);
        CHECK(fast.size() == brute.size());
    }
}

TEST_CASE("enumeration honors the max entry cap") {
    for (const auto& s : enumerate_valid(10, 3)) CHECK(s.head() <= 3);
}
