#include "eg/electric.hpp"
#include "eg/errors.hpp"

#include <algorithm>

namespace eg {

namespace {

bool is_kink(MoveKind k)
{
    return k == MoveKind::R1pr || k == MoveKind::R1pl || k == MoveKind::R1mr || k == MoveKind::R1ml;
}

// Colour of the upper crossing of a fresh bigon, read off the face above it:
// the N corner gives xi = W b^-1 a^-1 with W the rest of the walk.
bool colour_from_upper_face(const PlanarDiagram& after, const FiniteGroup& g, Colouring& c, int upper)
{
    for (const Face& f : after.faces()) {
        const auto corners = f.corners();
        const auto at = std::find(corners.begin(), corners.end(), Corner{upper, CornerPos::N});
        if (at == corners.end())
            continue;
        if (f.walks.size() != 1)
            return false;
        int rest = g.id();
        const auto n = corners.size();
        const std::size_t start = static_cast<std::size_t>(at - corners.begin());
        for (std::size_t k = 1; k < n; ++k) {
            const Corner& q = corners[(start + k) % n];
            const int xi = c.colours[q.crossing];
            if (xi < 0)
                return false;
            rest = g.mul(rest, corner_multiplier(g, after.crossings()[q.crossing].sign, q.pos, xi,
                                                 c.alpha, c.beta));
        }
        c.colours[upper] = g.mul(rest, g.inv(c.beta), g.inv(c.alpha));
        return true;
    }
    return false;
}

} // namespace

Transported transport_colouring(const MorseWord& w, const MoveSpec& m, const FiniteGroup& g,
                                const Colouring& c)
{
    const PlanarDiagram before = morse_to_pd(w);
    if (!is_proper(before, g, c))
        throw NotProper("colouring is not proper on the diagram before the move");

    Transported out{apply_move(w, m), {}};
    const PlanarDiagram after = morse_to_pd(out.move.word);
    Colouring& next = out.colouring;
    next.alpha = c.alpha;
    next.beta = c.beta;
    next.colours.assign(after.crossings().size(), -1);
    for (std::size_t i = 0; i < c.colours.size(); ++i)
        if (out.move.crossing_map[i] >= 0)
            next.colours[out.move.crossing_map[i]] = c.colours[i];

    const auto& created = out.move.created;
    const int al = c.alpha;
    const int ali = g.inv(c.alpha);
    bool done = created.empty();
    if (!done && is_kink(m.kind)) {
        next.colours[created.front()] = g.id();
        done = true;
    } else if (!done && m.kind == MoveKind::R3) {
        // The three old crossings are consecutive in the word.
        int first = 0;
        for (std::size_t i = 0; i < m.index; ++i)
            first += w.events()[i].is_cross() ? 1 : 0;
        const int s0 = c.colours[first];
        const int s1 = c.colours[first + 1];
        const int s2 = c.colours[first + 2];
        int t0, t1, t2;
        if (!m.inverse) {
            t0 = g.mul(s1, al, g.inv(s0), ali);
            t1 = g.mul(s0, s2);
            t2 = g.mul(s1, al, s2, ali);
        } else {
            t0 = g.mul(ali, s2, al);
            t2 = g.mul(g.inv(t0), s1);
            t1 = g.mul(al, t0, g.inv(t2), ali);
        }
        next.colours[created[0]] = t0;
        next.colours[created[1]] = t1;
        next.colours[created[2]] = t2;
        done = true;
    } else if (!done && (m.kind == MoveKind::R2l || m.kind == MoveKind::R2r)) {
        if (colour_from_upper_face(after, g, next, created[1])) {
            next.colours[created[0]] = next.colours[created[1]];
            done = true;
        }
    }
    if (!done) {
        const auto ext = proper_extensions(after, g, next, created);
        if (ext.size() != 1)
            throw NotProper(to_string(m) + ": " + std::to_string(ext.size()) +
                            " proper extensions instead of one");
        next = ext.front();
    }
    if (!is_proper(after, g, next))
        throw NotProper(to_string(m) + ": transported colouring is not proper");
    return out;
}

} // namespace eg
