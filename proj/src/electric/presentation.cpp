#include "eg/electric.hpp"

namespace eg {

Word corner_word(int sign, CornerPos pos, int x)
{
    constexpr int a = 0;
    constexpr int b = 1;
    switch (pos) {
    case CornerPos::S: return {{x, 1}, {a, 1}, {b, 1}};
    case CornerPos::N: return {{b, -1}, {a, -1}, {x, -1}};
    case CornerPos::W: return {{a, -1}, {x, sign}, {a, 1}};
    case CornerPos::E: return {{b, -1}, {x, -sign}, {b, 1}};
    }
    return {};
}

Presentation electric_presentation(const PlanarDiagram& d)
{
    Presentation p;
    p.generators = {"a", "b"};
    for (std::size_t c = 0; c < d.crossings().size(); ++c)
        p.generators.push_back("x" + std::to_string(c + 1));
    for (const Face& f : d.faces()) {
        Word r;
        for (const Corner& k : f.corners()) {
            const Word piece = corner_word(d.crossings()[k.crossing].sign, k.pos, k.crossing + 2);
            r.insert(r.end(), piece.begin(), piece.end());
        }
        p.relators.push_back(free_reduce(std::move(r)));
    }
    return p;
}

Presentation reduced_presentation(const PlanarDiagram& d)
{
    Presentation p = electric_presentation(d);
    p.generators.erase(p.generators.begin(), p.generators.begin() + 2);
    for (Word& r : p.relators) {
        Word kept;
        for (const Letter& l : r)
            if (l.gen >= 2)
                kept.push_back({l.gen - 2, l.exp});
        r = free_reduce(std::move(kept));
    }
    return p;
}

} // namespace eg
