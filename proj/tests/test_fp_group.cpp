#include "atd/fp_group.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace atd;

namespace {

std::set<Word> relator_set(const FpPresentation &p)
{
    return {p.relators.begin(), p.relators.end()};
}

PermutationGroup symmetric(std::size_t n)
{
    std::vector<Point> cyc(n);
    for (std::size_t i = 0; i < n; ++i)
        cyc[i] = static_cast<Point>(i);
    return PermutationGroup(n, {Permutation::from_cycles(n, {{0, 1}}), Permutation::from_cycles(n, {cyc})});
}

} // namespace

TEST_CASE("word helpers")
{
    CHECK(free_reduce({1, -1, 2, 3, -3}) == Word{2});
    CHECK(cyclic_reduce({-2, 1, 3, 2}) == Word{1, 3});
    CHECK(inverse({1, -2}) == Word{2, -1});
    CHECK(power({1, 2}, -2) == Word{-2, -1, -2, -1});
    CHECK(commutator(Word{1}, Word{2}) == Word{-1, -2, 1, 2});
    CHECK(conjugate(Word{1}, Word{3}) == Word{-3, 1, 3});
}

TEST_CASE("parser")
{
    auto p = parse_presentation("a, b, g | a^2, b^2, a^g b, [a,b], a^2");
    CHECK(p.generators == std::vector<std::string>{"a", "b", "g"});
    REQUIRE(p.relators.size() == 4);
    CHECK(p.relators[2] == Word{-3, 1, 3, 2});
    CHECK(p.relators[3] == Word{-1, -2, 1, 2});
    CHECK(parse_word(p, "(ab)^-1") == Word{-2, -1});
    CHECK(parse_word(p, "a^(bg)") == Word{-3, -2, 1, 2, 3});
    CHECK(parse_word(p, "a = b") == Word{1, -2});
    CHECK(parse_word(p, "a a^-1").empty());

    auto longest = parse_presentation("x, xy | xyx");
    CHECK(longest.relators[0] == Word{2, 1});

    CHECK_THROWS_AS(parse_presentation("a | a^2, b"), ParseError);
    try {
        parse_presentation("a,g | a^2, ag, h^2");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.position() == 15);
        CHECK(std::string(e.what()).find("'h'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_presentation("a, a | a"), ParseError);
    CHECK_THROWS_AS(parse_presentation("a a^2"), ParseError);
    CHECK_THROWS_AS(parse_presentation("a | [a, a"), ParseError);
}

TEST_CASE("universal groups follow the published table")
{
    // Relators exactly as tabulated, including the repeated d^2 in the s = 5 rows.
    const std::vector<std::pair<std::string, std::string>> table = {
        {"A_1^1", "a,g | a^2"},
        {"A_2^1", "a,b,g | a^2,b^2,a^gb,[a,b]"},
        {"A_3^1", "a,b,c,g | a^2,b^2,c^2,a^gb,b^gc,[a,b],[a,c]"},
        {"A_3^2", "a,b,c,g | a^2,b^2,c^2,a^gb,b^gc,[a,b],[a,c]b"},
        {"A_4^1", "a,b,c,d,g | a^2,b^2,c^2,d^2,a^gb,b^gc,c^gd,[a,b],[a,c],[a,d]"},
        {"A_4^2", "a,b,c,d,g | a^2,b^2,c^2,d^2,a^gb,b^gc,c^gd,[a,b],[a,c],[a,d]b"},
        {"A_4^3", "a,b,c,d,g | a^2,b^2,c^2,d^2,a^gb,b^gc,c^gd,[a,b],[a,c],[a,d]bc"},
        {"A_5^1", "a,b,c,d,e,g | a^2,b^2,c^2,d^2,e^2,d^2,a^gb,b^gc,c^gd,d^ge,[a,b],[a,c],[a,d],[a,e]"},
        {"A_5^2", "a,b,c,d,e,g | a^2,b^2,c^2,d^2,e^2,d^2,a^gb,b^gc,c^gd,d^ge,[a,b],[a,c],[a,d],[a,e]b"},
        {"A_5^3", "a,b,c,d,e,g | a^2,b^2,c^2,d^2,e^2,d^2,a^gb,b^gc,c^gd,d^ge,[a,b],[a,c],[a,d],[a,e]c"},
        {"A_5^4", "a,b,c,d,e,g | a^2,b^2,c^2,d^2,e^2,d^2,a^gb,b^gc,c^gd,d^ge,[a,b],[a,c],[a,d],[a,e]bc"},
        {"A_5^5", "a,b,c,d,e,g | a^2,b^2,c^2,d^2,e^2,d^2,a^gb,b^gc,c^gd,d^ge,[a,b],[a,c],[a,d],[a,e]bd"},
        {"A_5^6", "a,b,c,d,e,g | a^2,b^2,c^2,d^2,e^2,d^2,a^gb,b^gc,c^gd,d^ge,[a,b],[a,c],[a,d],[a,e]bcd"},
    };
    auto cat = universal_catalogue(5);
    REQUIRE(cat.size() == table.size());
    for (std::size_t i = 0; i < cat.size(); ++i) {
        INFO(table[i].first);
        CHECK(cat[i].type.name == table[i].first);
        auto expected = parse_presentation(table[i].second);
        CHECK(cat[i].presentation.generators == expected.generators);
        CHECK(relator_set(cat[i].presentation) == relator_set(expected));
    }
    CHECK(universal_catalogue(3).size() == 4);
    CHECK_THROWS(universal_catalogue(6));
}

TEST_CASE("universal types")
{
    UniversalType t{4, 3, {{1, 0}}, ""};
    auto r = reverse_type(t);
    CHECK(r.c == std::vector<std::vector<std::uint8_t>>{{0, 1}});
    CHECK(reverse_type(r) == t);
    // a type and its reverse give the same group up to relabelling, only one is listed
    auto cat = universal_catalogue(4);
    bool has_t = false, has_r = false;
    for (const auto &e : cat) {
        has_t |= e.type == t;
        has_r |= e.type == r;
    }
    CHECK(has_t);
    CHECK_FALSE(has_r);

    CHECK_THROWS_AS(validate_type(UniversalType{3, 1, {{}, {}}, ""}), std::invalid_argument);
    CHECK_THROWS_AS(validate_type(UniversalType{3, 2, {{1, 1}}, ""}), std::invalid_argument);
    CHECK_THROWS_AS(validate_type(UniversalType{3, 2, {{2}}, ""}), std::invalid_argument);
    CHECK_NOTHROW(validate_type(UniversalType{3, 2, {{1}}, ""}));
    auto p = universal_group(UniversalType{6, 4, {{1}, {0, 1}}, ""});
    CHECK(p.generators.front() == "x0");
    CHECK(p.generators.back() == "g");
}

TEST_CASE("Todd-Coxeter")
{
    auto s3 = parse_presentation("a,b | a^2, b^3, (ab)^2");
    CHECK(todd_coxeter(s3, {parse_word(s3, "a")}, 100).index == 3);
    CHECK(todd_coxeter(s3, {}, 100).index == 6);
    CHECK(todd_coxeter(s3, {parse_word(s3, "b")}, 100).index == 2);

    auto inf = parse_presentation("a,g | a^2");
    CHECK_THROWS_AS(todd_coxeter(inf, {parse_word(inf, "a")}, 100), CosetCapExceeded);

    // a larger group and its regular action: PSL(2,7) of order 168
    auto psl = parse_presentation("a,b | a^2, b^3, (ab)^7, [a,b]^4");
    auto t = todd_coxeter(psl, {}, 10000);
    CHECK(t.index == 168);
    PermutationGroup g(168, t.actions);
    CHECK(g.order() == 168);
    for (const auto &r : psl.relators)
        CHECK(evaluate(r, t.actions).is_identity());
    CHECK(todd_coxeter(psl, {parse_word(psl, "b")}, 10000).index == 56);
}

TEST_CASE("low-index normal quotients: small examples")
{
    auto a11 = universal_catalogue(1)[0].presentation;
    auto q = low_index_normal_quotients(a11, 2);
    REQUIRE(q.size() == 4);
    CHECK(q[0].index == 1);
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(q[i].index == 2);

    auto d = low_index_normal_quotients(parse_presentation("a,g | a^2, g^2"), 2);
    CHECK(std::count_if(d.begin(), d.end(), [](const auto &r) { return r.index == 2; }) == 3);

    // Z^2 has sigma(n) subgroups of index n, all normal
    auto z2 = low_index_normal_quotients(parse_presentation("x,y | [x,y]"), 6);
    std::map<std::size_t, int> by_index;
    for (const auto &r : z2)
        ++by_index[r.index];
    CHECK(by_index == std::map<std::size_t, int>{{1, 1}, {2, 3}, {3, 4}, {4, 7}, {5, 6}, {6, 12}});

    CHECK_THROWS_AS(low_index_normal_quotients(a11, 513), std::invalid_argument);
    LowIndexOptions tight;
    tight.node_budget = 5;
    tight.label = "A_1^1";
    try {
        low_index_normal_quotients(a11, 30, tight);
        FAIL("expected the budget to run out");
    } catch (const QuotientBudgetExceeded &e) {
        CHECK(std::string(e.what()).find("A_1^1") != std::string::npos);
    }
}

TEST_CASE("low-index normal quotients agree with the classic enumeration")
{
    std::vector<FpPresentation> ps;
    for (const auto &e : universal_catalogue(3))
        ps.push_back(e.presentation);
    ps.push_back(parse_presentation("a,b | a^2, b^3"));
    ps.push_back(parse_presentation("a,b | a^2, b^2, (ab)^6"));
    ps.push_back(parse_presentation("x,y,z | x^2, y^2, z^2"));
    for (const auto &p : ps) {
        INFO(p.to_string());
        auto records = low_index_normal_quotients(p, 8);
        testing::ClassicLowIndex oracle(p, 8);
        CHECK(testing::library_normal_keys(records) == oracle.normal_keys());
        for (const auto &r : records) {
            for (const auto &rel : p.relators)
                CHECK(evaluate(rel, r.images).is_identity());
            CHECK(PermutationGroup(r.index, r.images).order() == r.index);
        }
        CHECK(std::is_sorted(records.begin(), records.end(), [](const auto &a, const auto &b) {
            return std::tie(a.index, a.key) < std::tie(b.index, b.key);
        }));
    }
}

TEST_CASE("low-index options filter exactly")
{
    for (const auto &e : universal_catalogue(2)) {
        auto all = low_index_normal_quotients(e.presentation, 16);
        LowIndexOptions opt;
        opt.order_bounds = {{"g", 4}};
        opt.accept_index = [](std::size_t n) { return n % 4 == 0; };
        auto some = low_index_normal_quotients(e.presentation, 16, opt);
        std::vector<std::vector<std::uint32_t>> want, got;
        const std::size_t g = e.presentation.generator_index("g");
        for (const auto &r : all)
            if (r.index % 4 == 0 && r.images[g].order() <= 4)
                want.push_back(r.key);
        for (const auto &r : some)
            got.push_back(r.key);
        CHECK(got == want);
    }
}

TEST_CASE("quotients inside a given group")
{
    auto a11 = universal_catalogue(1)[0].presentation;
    PermutationGroup c3(3, {Permutation::from_cycles(3, {{0, 1, 2}})});
    // C3 has no involution, so a must die; g alone still maps onto C3
    auto c3q = quotient_search_in_group(a11, c3);
    REQUIRE(c3q.size() == 1);
    CHECK(c3q[0].images[0].is_identity());

    auto s3 = quotient_search_in_group(a11, symmetric(3));
    REQUIRE_FALSE(s3.empty());
    for (const auto &q : s3) {
        CHECK(q.kernel_index == 6);
        CHECK(q.images[0].order() <= 2);
    }

    // C2 x C2: the six generating pairs differ by Aut(C2 x C2), one kernel
    PermutationGroup v4(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}), Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
    CHECK(quotient_search_in_group(a11, v4).size() == 1);
    CHECK(quotient_search_in_group(parse_presentation("x,y | [x,y]"), symmetric(3)).empty());
}
