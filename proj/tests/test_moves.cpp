#include <doctest.h>

#include "eg/diagram.hpp"
#include "eg/errors.hpp"

#include <random>

using namespace eg;

namespace {

const char* kTrefoilPos = "cup> 0\ncup< 2\nx+ 1\nx+ 1\nx+ 1\ncap< 0\ncap> 0";
const char* kFigureEight = "cup< 0\ncup< 1\ncup< 2\nx+ 0\nx- 1\nx+ 0\nx- 1\ncap> 2\ncap> 1\ncap> 0";
const char* kHopf = "cup> 0\ncup> 1\ncup> 2\nx+ 3\nx+ 4\nx+ 3\ncap< 2\ncap< 1\ncap< 0";
const char* kT1Site = "cup< 0\ncup< 1\ncup< 4\ncup< 5\nx+ 4\ncap< 3\ncap< 2\nx+ 0\ncap> 1\ncap> 0";
const char* kUpPair = "cup> 0\ncup< 2\ncap> 2\ncap< 0"; // strands 1 and 2 run upwards at height 2

MoveSpec undo(MoveSpec m)
{
    if (m.kind != MoveKind::Commute)
        m.inverse = !m.inverse;
    return m;
}

int components(const MorseWord& w) { return morse_to_pd(w).components(); }

} // namespace

TEST_CASE("W moves are undone by their inverses")
{
    const auto w = parse_morse(kTrefoilPos);
    for (MoveKind k : {MoveKind::W1r, MoveKind::W1l}) {
        const MoveSpec m{k, false, 2, 1};
        const auto r = apply_move(w, m);
        CHECK(r.word.size() == w.size() + 2);
        CHECK(r.crossing_map == std::vector<int>{0, 1, 2});
        CHECK(apply_move(r.word, undo(m)).word == w);
    }
}

TEST_CASE("R2l inserts a cancelling pair")
{
    const auto w = parse_morse(kUpPair);
    const MoveSpec m{MoveKind::R2l, false, 2, 1};
    const auto r = apply_move(w, m);
    REQUIRE(r.word.crossing_count() == 2);
    CHECK(r.word.events()[2] == Event::cross(1, -1));
    CHECK(r.word.events()[3] == Event::cross(1, +1));
    CHECK(writhe(r.word) == writhe(w));
    CHECK(rotation_number(r.word) == rotation_number(w));
    CHECK(r.created == std::vector<int>{0, 1});
    CHECK(apply_move(r.word, undo(m)).word == w);
}

TEST_CASE("R1 ledger")
{
    const auto w = parse_morse(kUpPair);
    const std::vector<std::tuple<MoveKind, int, int>> cases{
        {MoveKind::R1pr, -1, +1}, {MoveKind::R1mr, -1, -1}, {MoveKind::R1pl, +1, +1}, {MoveKind::R1ml, +1, -1}};
    for (const auto& [kind, dr, dw] : cases) {
        CAPTURE(move_name(kind));
        const MoveSpec m{kind, false, 2, 1};
        const auto r = apply_move(w, m);
        CHECK(r.word.crossing_count() == 1);
        CHECK(rotation_number(r.word) - rotation_number(w) == dr);
        CHECK(writhe(r.word) - writhe(w) == dw);
        CHECK(move_ledger(m) == std::pair{dr, dw});
        CHECK(move_ledger(undo(m)) == std::pair{-dr, -dw});
        CHECK(components(r.word) == components(w));
    }
}

TEST_CASE("R3 on three positive crossings")
{
    const auto w = parse_morse("cup> 0\ncup< 2\ncup< 3\nx+ 1\nx+ 2\nx+ 1\ncap> 3\ncap> 2\ncap< 0");
    const MoveSpec m{MoveKind::R3, false, 3, 1};
    const auto r = apply_move(w, m);
    CHECK(r.word.events()[3] == Event::cross(2, +1));
    CHECK(r.word.events()[4] == Event::cross(1, +1));
    CHECK(r.word.events()[5] == Event::cross(2, +1));
    CHECK(r.crossing_map == std::vector<int>{-1, -1, -1});
    CHECK(r.created == std::vector<int>{0, 1, 2});
    CHECK(writhe(r.word) == 3);
    CHECK(apply_move(r.word, undo(m)).word == w);
    CHECK_THROWS_AS(apply_move(w, MoveSpec{MoveKind::R3, true, 3, 1}), PatternMismatch);
}

TEST_CASE("T1 keeps its crossing")
{
    const auto w = parse_morse(kT1Site);
    const MoveSpec m{MoveKind::T1, false, 2, 2};
    const auto r = apply_move(w, m);
    CHECK(r.crossing_map == std::vector<int>{0, 1});
    CHECK(r.created.empty());
    CHECK(writhe(r.word) == writhe(w));
    CHECK(rotation_number(r.word) == rotation_number(w));
    CHECK_THROWS_AS(apply_move(w, MoveSpec{MoveKind::T2, false, 2, 2}), PatternMismatch);
}

TEST_CASE("Omega moves add a crossing pair on opposite strands")
{
    const auto w = parse_morse("cup> 0\ncap< 0");
    for (MoveKind k : {MoveKind::Omega1, MoveKind::Omega2}) {
        CAPTURE(move_name(k));
        const auto strands = w.strands_at(1);
        const MoveSpec m{k, false, 1, 0};
        const bool up_down = strands[0] == Dir::Up;
        if ((k == MoveKind::Omega1) != up_down) {
            CHECK_THROWS_AS(apply_move(w, m), PatternMismatch);
            continue;
        }
        const auto r = apply_move(w, m);
        CHECK(r.word.crossing_count() == 2);
        CHECK(writhe(r.word) == 0);
        CHECK(rotation_number(r.word) == rotation_number(w));
        CHECK(apply_move(r.word, undo(m)).word == w);
    }
}

TEST_CASE("Commute applied twice is the identity")
{
    for (const char* text : {kTrefoilPos, kFigureEight, kHopf, kT1Site}) {
        const auto w = parse_morse(text);
        for (const auto& m : applicable_moves(w)) {
            if (m.kind != MoveKind::Commute)
                continue;
            const auto once = apply_move(w, m);
            CHECK(once.word != w);
            CHECK(apply_move(once.word, m).word == w);
        }
    }
}

TEST_CASE("every applicable move is undone by its inverse")
{
    for (const char* text : {kTrefoilPos, kFigureEight, kHopf, kT1Site}) {
        const auto w = parse_morse(text);
        const int r0 = rotation_number(w);
        const int w0 = writhe(w);
        const auto moves = applicable_moves(w);
        CHECK_FALSE(moves.empty());
        for (const auto& m : moves) {
            CAPTURE(to_string(m));
            const auto r = apply_move(w, m);
            const auto [dr, dw] = move_ledger(m);
            CHECK(rotation_number(r.word) == r0 + dr);
            CHECK(writhe(r.word) == w0 + dw);
            CHECK(components(r.word) == components(w));
            CHECK(apply_move(r.word, undo(m)).word == w);
            CHECK(parse_move_spec(to_string(m)) == m);
        }
    }
}

TEST_CASE("crossing maps follow surviving crossings")
{
    const auto w = parse_morse(kFigureEight);
    for (const auto& m : applicable_moves(w)) {
        CAPTURE(to_string(m));
        const auto r = apply_move(w, m);
        REQUIRE(r.crossing_map.size() == static_cast<std::size_t>(w.crossing_count()));
        std::vector<int> hit(r.word.crossing_count(), 0);
        for (int id : r.crossing_map)
            if (id >= 0)
                ++hit.at(id);
        for (int id : r.created)
            ++hit.at(id);
        for (int h : hit)
            CHECK(h == 1);
    }
}

TEST_CASE("random sequences keep the diagram invariants")
{
    for (const char* text : {kTrefoilPos, kFigureEight, kHopf}) {
        const auto w0 = parse_morse(text);
        const int comps = components(w0);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            std::mt19937_64 rng(seed);
            auto w = w0;
            int r = rotation_number(w);
            int wr = writhe(w);
            for (int step = 0; step < 12; ++step) {
                const auto m = random_move(w, rng);
                CAPTURE(to_string(m));
                w = apply_move(w, m).word;
                const auto [dr, dw] = move_ledger(m);
                r += dr;
                wr += dw;
                CHECK(rotation_number(w) == r);
                CHECK(writhe(w) == wr);
                const auto pd = morse_to_pd(w);
                CHECK(pd.components() == comps);
                if (comps == 1)
                    CHECK(pd.faces().size() == static_cast<std::size_t>(w.crossing_count() + 2));
            }
        }
    }
}

TEST_CASE("random moves are reproducible")
{
    const auto w = parse_morse(kFigureEight);
    std::mt19937_64 a(42), b(42);
    auto wa = w, wb = w;
    for (int i = 0; i < 10; ++i) {
        const auto ma = random_move(wa, a);
        const auto mb = random_move(wb, b);
        CHECK(ma == mb);
        wa = apply_move(wa, ma).word;
        wb = apply_move(wb, mb).word;
    }
}

TEST_CASE("move spec text")
{
    CHECK(to_string(MoveSpec{MoveKind::R1pr, true, 4, 1}) == "R1pr'@4:1");
    CHECK(parse_move_spec("Omega2@3:0") == MoveSpec{MoveKind::Omega2, false, 3, 0});
    CHECK_THROWS(parse_move_spec("R9@1:1"));
    CHECK_THROWS(parse_move_spec("R1pr@x:1"));
    const auto w = parse_morse(kTrefoilPos);
    CHECK_THROWS_AS(apply_move(w, MoveSpec{MoveKind::R2l, true, 0, 0}), PatternMismatch);
    CHECK_THROWS_AS(apply_move(w, MoveSpec{MoveKind::W1r, false, 99, 0}), PatternMismatch);
    CHECK_THROWS_AS(apply_move(w, MoveSpec{MoveKind::Commute, false, 6, 0}), PatternMismatch);
}
