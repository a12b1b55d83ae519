#include "eg/algebra.hpp"
#include "eg/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>

namespace eg {

Word inverse(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (Letter& l : out)
        l.exp = -l.exp;
    return out;
}

Word free_reduce(Word w)
{
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word cyclic_reduce(Word w)
{
    w = free_reduce(std::move(w));
    std::size_t lo = 0;
    std::size_t hi = w.size();
    while (hi - lo >= 2 && w[lo].gen == w[hi - 1].gen && w[lo].exp == -w[hi - 1].exp) {
        ++lo;
        --hi;
    }
    return Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool cyclically_equal(const Word& a, const Word& b)
{
    const Word x = cyclic_reduce(a);
    const Word y = cyclic_reduce(b);
    if (x.size() != y.size())
        return false;
    if (x.empty())
        return true;
    for (std::size_t shift = 0; shift < x.size(); ++shift) {
        bool same = true;
        for (std::size_t k = 0; k < x.size() && same; ++k)
            same = x[(k + shift) % x.size()] == y[k];
        if (same)
            return true;
    }
    return false;
}

int Presentation::generator(std::string_view name) const
{
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name)
            return static_cast<int>(i);
    return -1;
}

int evaluate(const FiniteGroup& g, const Word& w, const std::vector<int>& assignment)
{
    int acc = g.id();
    for (const Letter& l : w) {
        const int v = assignment[l.gen];
        acc = g.mul(acc, l.exp > 0 ? v : g.inv(v));
    }
    return acc;
}

BigInt hom_count(const Presentation& p, const FiniteGroup& g, std::int64_t budget)
{
    const int k = static_cast<int>(p.generators.size());
    BigInt space = 1;
    for (int i = 0; i < k; ++i) {
        space *= g.order();
        if (space > budget)
            throw BudgetExceeded("hom_count: " + std::to_string(g.order()) + "^" + std::to_string(k) +
                                 " assignments exceed the budget of " + std::to_string(budget));
    }

    // Check each relator as soon as its last generator is assigned.
    std::vector<std::vector<const Word*>> due(k + 1);
    for (const Word& r : p.relators) {
        int last = -1;
        for (const Letter& l : r)
            last = std::max(last, l.gen);
        due[last + 1].push_back(&r);
    }
    std::vector<int> assignment(k, g.id());
    for (const Word* r : due[0])
        if (evaluate(g, *r, assignment) != g.id())
            return 0;

    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == k) {
            ++count;
            return;
        }
        for (int v = 0; v < g.order(); ++v) {
            assignment[depth] = v;
            const auto& checks = due[depth + 1];
            if (std::all_of(checks.begin(), checks.end(),
                            [&](const Word* r) { return evaluate(g, *r, assignment) == g.id(); }))
                self(self, depth + 1);
        }
    };
    rec(rec, 0);
    return count;
}

namespace {

// Substitutes generator `gen` by `replacement` in `w`.
Word substitute(const Word& w, int gen, const Word& replacement)
{
    const Word inv = inverse(replacement);
    Word out;
    for (const Letter& l : w) {
        if (l.gen != gen) {
            out.push_back(l);
            continue;
        }
        const Word& piece = l.exp > 0 ? replacement : inv;
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return free_reduce(std::move(out));
}

} // namespace

Presentation tietze_simplify(const Presentation& p)
{
    Presentation q = p;
    while (true) {
        std::vector<Word> kept;
        for (Word& r : q.relators) {
            r = cyclic_reduce(std::move(r));
            if (r.empty())
                continue;
            const bool dup = std::any_of(kept.begin(), kept.end(),
                                         [&](const Word& o) {
                                             return cyclically_equal(o, r) || cyclically_equal(o, inverse(r));
                                         });
            if (!dup)
                kept.push_back(std::move(r));
        }
        q.relators = std::move(kept);

        // Shortest relator containing a generator exactly once.
        std::size_t best_rel = q.relators.size();
        int best_gen = -1;
        for (std::size_t i = 0; i < q.relators.size(); ++i) {
            const Word& r = q.relators[i];
            if (best_rel < q.relators.size() && r.size() >= q.relators[best_rel].size())
                continue;
            for (const Letter& l : r) {
                const auto occurrences =
                    std::count_if(r.begin(), r.end(), [&](const Letter& m) { return m.gen == l.gen; });
                if (occurrences == 1) {
                    best_rel = i;
                    best_gen = l.gen;
                    break;
                }
            }
        }
        if (best_gen < 0)
            return q;

        // Rotate the relator to g^e w; then g = w^-1 (e = +1) or g = w (e = -1).
        Word r = q.relators[best_rel];
        const auto at = std::find_if(r.begin(), r.end(), [&](const Letter& l) { return l.gen == best_gen; });
        std::rotate(r.begin(), at, r.end());
        const int e = r.front().exp;
        Word rest(r.begin() + 1, r.end());
        const Word value = e > 0 ? inverse(rest) : rest;

        q.relators.erase(q.relators.begin() + static_cast<std::ptrdiff_t>(best_rel));
        for (Word& w : q.relators) {
            w = substitute(w, best_gen, value);
            for (Letter& l : w)
                if (l.gen > best_gen)
                    --l.gen;
        }
        q.generators.erase(q.generators.begin() + best_gen);
    }
}

std::vector<BigInt> abelian_invariants(const Presentation& p)
{
    const std::size_t rows = p.relators.size();
    const std::size_t cols = p.generators.size();
    IntMatrix m(rows, std::vector<BigInt>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (const Letter& l : p.relators[i])
            m[i][l.gen] += l.exp;
    const SmithForm snf = smith_normal_form(m, rows, cols);
    std::vector<BigInt> out;
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
        const BigInt& d = snf.D[i][i];
        if (d != 0)
            ++rank;
        if (d > 1)
            out.push_back(d);
    }
    out.insert(out.end(), cols - rank, BigInt(0));
    return out;
}

std::string to_text(const Presentation& p, const Word& w)
{
    if (w.empty())
        return "1";
    std::string out;
    for (const Letter& l : w) {
        if (!out.empty())
            out += ' ';
        out += p.generators[l.gen];
        if (l.exp < 0)
            out += "^-1";
    }
    return out;
}

std::string to_text(const Presentation& p)
{
    std::string out = "< ";
    for (std::size_t i = 0; i < p.generators.size(); ++i)
        out += (i ? ", " : "") + p.generators[i];
    out += " | ";
    for (std::size_t i = 0; i < p.relators.size(); ++i)
        out += (i ? ", " : "") + to_text(p, p.relators[i]);
    return out + " >";
}

nlohmann::json to_json(const BigInt& n)
{
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
        return n.convert_to<std::int64_t>();
    return n.str();
}

nlohmann::json to_json(const Presentation& p)
{
    nlohmann::json rels = nlohmann::json::array();
    for (const Word& w : p.relators) {
        nlohmann::json jw = nlohmann::json::array();
        for (const Letter& l : w)
            jw.push_back({p.generators[l.gen], l.exp});
        rels.push_back(std::move(jw));
    }
    return {{"generators", p.generators}, {"relators", std::move(rels)}};
}

Presentation presentation_from_json(const nlohmann::json& j)
{
    try {
        Presentation p;
        p.generators = j.at("generators").get<std::vector<std::string>>();
        for (const auto& jw : j.at("relators")) {
            Word w;
            for (const auto& jl : jw) {
                const int gen = p.generator(jl.at(0).get<std::string>());
                const int exp = jl.at(1).get<int>();
                if (gen < 0 || (exp != 1 && exp != -1))
                    throw ValidationError("bad relator letter " + jl.dump());
                w.push_back({gen, exp});
            }
            p.relators.push_back(std::move(w));
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("presentation JSON: ") + e.what());
    }
}

} // namespace eg
