#include <doctest.h>

#include "eg/electric.hpp"
#include "eg/rank1.hpp"
#include "oracles.hpp"

#include <nlohmann/json.hpp>

#include <random>

using namespace eg;

namespace {

const char* kTrefoilPos = "cup> 0\ncup< 2\nx+ 1\nx+ 1\nx+ 1\ncap< 0\ncap> 0";
const char* kFigureEight = "cup< 0\ncup< 1\ncup< 2\nx+ 0\nx- 1\nx+ 0\nx- 1\ncap> 2\ncap> 1\ncap> 0";

std::uint64_t expected_equations(std::uint64_t n) { return 4 + 3 * n * n * n + 2 * n * n * n * n * n; }

std::vector<Rank1Assignment> all_assignments(int unknowns, int units)
{
    std::vector<Rank1Assignment> out;
    Rank1Assignment a(unknowns, 0);
    for (;;) {
        out.push_back(a);
        int p = unknowns - 1;
        while (p >= 0 && ++a[p] == units)
            a[p--] = 0;
        if (p < 0)
            return out;
    }
}

bool passes(const AnySystem& s)
{
    return std::visit([](const auto& x) { return verify_axioms(x).all_pass(); }, s);
}

} // namespace

TEST_CASE("equation counts")
{
    for (const char* spec : {"Z1", "Z2", "Z3", "S3"}) {
        const auto g = make_group(spec);
        const auto s = rank1_equations(g);
        CHECK(s.equations().size() == expected_equations(g.order()));
        CHECK(s.unknown_count() == 2 * g.order() * g.order() + g.order() + 2);
    }
    CHECK(rank1_equations(make_group("Z1")).equations().size() == 9);
    CHECK(rank1_equations(make_group("Z2")).equations().size() == 92);
}

TEST_CASE("equation text and layout")
{
    const auto s = rank1_equations(make_group("Z1"));
    const auto& eqs = s.equations();
    CHECK(s.to_text(eqs[0]) == "y[0] - l[0,0] - r[0,0] - A + B = 0");
    CHECK(eqs[0].axiom == "1a");
    CHECK(eqs[4].axiom == "2");
    // Over the trivial group axiom 2 cancels completely.
    for (const auto& e : eqs)
        if (e.axiom == "2" || e.axiom == "4a" || e.axiom == "4b")
            CHECK(s.to_text(e) == "0 = 0");
    CHECK(s.unknown_name(s.A()) == "A");
    CHECK(s.unknown_name(s.B()) == "B");
    CHECK(s.unknown_name(s.l(0, 0)) == "l[0,0]");
    CHECK(s.unknown_name(s.r(0, 0)) == "r[0,0]");

    const auto j = to_json(s, eqs[0]);
    CHECK(j.at("axiom") == "1a");
    CHECK(j.at("equation") == "y[0] - l[0,0] - r[0,0] - A + B = 0");
    CHECK(j.at("elements").empty());
}

TEST_CASE("distinct rows keep their sources")
{
    const auto s = rank1_equations(make_group("Z2"));
    const auto rows = s.distinct();
    std::size_t covered = 0;
    for (const auto& d : rows) {
        REQUIRE_FALSE(d.sources.empty());
        for (auto i : d.sources) {
            CHECK(s.equations()[i].coeffs == d.coeffs);
            ++covered;
        }
        CHECK(std::any_of(d.coeffs.begin(), d.coeffs.end(), [](auto c) { return c != 0; }));
    }
    std::size_t zero = 0;
    for (const auto& e : s.equations())
        zero += std::all_of(e.coeffs.begin(), e.coeffs.end(), [](auto c) { return c == 0; });
    CHECK(covered + zero == s.equations().size());
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            CHECK(rows[a].coeffs != rows[b].coeffs);
}

TEST_CASE("unit groups")
{
    const auto pm = UnitGroup::parse("pm1");
    CHECK(pm.order() == 2);
    CHECK(pm.over_integers());
    CHECK(pm.value(0) == 1);
    CHECK(pm.value(1) == -1);
    CHECK(pm.mul(1, 1) == 0);

    const auto u5 = UnitGroup::parse("U5");
    CHECK(u5.order() == 4);
    CHECK(u5.modulus() == 5);
    CHECK(u5.generator().has_value());

    const auto u8 = UnitGroup::parse("U8");
    CHECK(u8.order() == 4);
    CHECK_FALSE(u8.generator().has_value());

    const auto c3 = UnitGroup::parse("C3");
    CHECK(c3.order() == 3);
    CHECK(c3.modulus() == 7);
    for (int i = 0; i < c3.order(); ++i)
        CHECK(c3.power(i, 3) == 0);
    const auto c6 = UnitGroup::parse("C6");
    CHECK(c6.order() == 6);
    CHECK(c6.modulus() == 7);

    CHECK_THROWS_AS(UnitGroup::parse("Q5"), UnknownSpec);
    CHECK_THROWS_AS(UnitGroup::parse("C"), UnknownSpec);
    CHECK_THROWS_AS(UnitGroup::parse("U-3"), UnknownSpec);
    CHECK_THROWS_AS(rank1_solution_count(rank1_equations(make_group("Z2")), u8), UnknownSpec);
}

TEST_CASE("Smith solving matches brute force")
{
    const std::vector<std::pair<const char*, const char*>> cases{
        {"Z1", "pm1"}, {"Z2", "U5"}, {"Z3", "C3"}, {"S3", "pm1"}, {"Z2xZ2", "C4"}, {"D4", "pm1"}};
    for (const auto& [gs, us] : cases) {
        CAPTURE(gs);
        CAPTURE(us);
        const auto s = rank1_equations(make_group(gs));
        const auto u = UnitGroup::parse(us);
        const auto smith = solve_rank1_assignments(s, u, {Rank1Method::Smith});
        const auto brute = solve_rank1_assignments(s, u, {Rank1Method::BruteForce});
        CHECK(smith == brute);
        CHECK(rank1_solution_count(s, u) == smith.size());
        for (const auto& a : smith)
            CHECK(satisfies(s, u, a));
    }
    CHECK(solve_rank1_assignments(rank1_equations(make_group("Z1")), UnitGroup::signs()).size() == 16);
    CHECK(solve_rank1_assignments(rank1_equations(make_group("Z2")), UnitGroup::parse("U5")).size() == 128);
    CHECK(solve_rank1_assignments(rank1_equations(make_group("Z2")), UnitGroup::parse("U8")).size() == 256);
}

TEST_CASE("trivial group over signs matches the exhaustive scan")
{
    const auto s = rank1_equations(make_group("Z1"));
    const auto u = UnitGroup::signs();
    std::vector<Rank1Assignment> scanned;
    for (const auto& a : all_assignments(s.unknown_count(), u.order()))
        if (passes(materialize(s, u, a)))
            scanned.push_back(a);
    CHECK(scanned.size() == 16);
    CHECK(solve_rank1_assignments(s, u) == scanned);
    CHECK(oracle::exhaustive_rank1(s, u) == scanned);
}

TEST_CASE("Z2 over U5 matches the exhaustive oracle")
{
    const auto s = rank1_equations(make_group("Z2"));
    const auto u = UnitGroup::parse("U5");
    const auto oracle = oracle::exhaustive_rank1(s, u);
    CHECK(oracle.size() == 128);
    CHECK(solve_rank1_assignments(s, u) == oracle);
}

TEST_CASE("conflict skipping agrees with the plain scan on a nontrivial alpha")
{
    const auto g = make_group("Z2");
    const auto s = rank1_equations(g, 1);
    const auto u = UnitGroup::signs();
    std::vector<Rank1Assignment> scanned;
    for (const auto& a : all_assignments(s.unknown_count(), u.order()))
        if (passes(materialize(s, u, a)))
            scanned.push_back(a);
    CHECK(oracle::exhaustive_rank1(s, u) == scanned);
    CHECK(solve_rank1_assignments(s, u) == scanned);
}

TEST_CASE("solver systems pass the axiom checker")
{
    const auto systems = solve_rank1(make_group("S3"), UnitGroup::signs());
    CHECK(systems.size() == 16);
    for (const auto& s : systems)
        CHECK(passes(s));
    const auto z3 = solve_rank1(make_group("Z3"), UnitGroup::parse("C3"), {}, 1);
    CHECK_FALSE(z3.empty());
    for (const auto& s : z3) {
        CHECK(passes(s));
        CHECK(std::get<GSystem<ModRing>>(s).alpha() == 1);
    }
}

TEST_CASE("materialized systems carry the assignment")
{
    const auto s = rank1_equations(make_group("Z2"));
    const auto u = UnitGroup::parse("U5");
    const auto sols = solve_rank1_assignments(s, u);
    const auto sys = std::get<GSystem<ModRing>>(materialize(s, u, sols.back()));
    CHECK(sys.A() == u.value(sols.back()[s.A()]));
    CHECK(sys.B() == u.value(sols.back()[s.B()]));
    CHECK(sys.l(1, 0).coords().front() == u.value(sols.back()[s.l(1, 0)]));
    CHECK_THROWS_AS(materialize(s, u, Rank1Assignment(3, 0)), DimensionMismatch);
}

TEST_CASE("solver systems give move-invariant t-values")
{
    const std::vector<std::tuple<const char*, const char*, int>> cases{
        {"S3", "pm1", 0}, {"Z3", "C3", 1}, {"S3", "C6", 0}};
    for (const auto& [gs, us, alpha] : cases) {
        CAPTURE(gs);
        CAPTURE(us);
        const auto g = make_group(gs);
        Rank1Options opt;
        opt.verify = false;
        auto systems = solve_rank1(g, UnitGroup::parse(us), opt, alpha);
        REQUIRE_FALSE(systems.empty());
        std::mt19937_64 pick(11);
        for (int trial = 0; trial < 4; ++trial) {
            const auto& any = systems[uniform_below(pick, systems.size())];
            std::visit(
                [&](const auto& sys) {
                    const auto& ring = sys.ring();
                    for (const char* start : {kTrefoilPos, kFigureEight}) {
                        const auto w0 = parse_morse(start);
                        const auto pd = morse_to_pd(w0);
                        std::vector<Colouring> cols;
                        for (int beta = 0; beta < g.order(); ++beta)
                            for (auto& c : enumerate_colourings(pd, g, sys.alpha(), beta))
                                cols.push_back(std::move(c));
                        REQUIRE_FALSE(cols.empty());
                        auto c = cols[uniform_below(pick, cols.size())];
                        auto w = w0;
                        const auto expected = t_value(w, c, sys);
                        std::mt19937_64 rng(pick());
                        for (int step = 0; step < 6; ++step) {
                            const auto m = random_move(w, rng);
                            const auto before = contract_network(build_network(w, c, sys));
                            auto moved = transport_colouring(w, m, g, c);
                            w = std::move(moved.move.word);
                            c = std::move(moved.colouring);
                            const auto after = contract_network(build_network(w, c, sys));
                            const auto [dr, dw] = move_ledger(m);
                            const auto k = ring.mul(power(ring, sys.A(), -dr), power(ring, sys.B(), -dw));
                            CHECK_MESSAGE(after == ring.mul(k, before), to_string(m));
                            CHECK_MESSAGE(t_value(w, c, sys) == expected, to_string(m));
                        }
                    }
                },
                any);
        }
    }
}

TEST_CASE("budget limits")
{
    const auto s = rank1_equations(make_group("S3"));
    const auto u = UnitGroup::parse("C6");
    CHECK_THROWS_AS(solve_rank1_assignments(s, u, {Rank1Method::Smith, 100}), BudgetExceeded);
    CHECK_THROWS_AS(solve_rank1_assignments(s, u, {Rank1Method::BruteForce, 100}), BudgetExceeded);
}
