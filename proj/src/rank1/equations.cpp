#include "eg/rank1.hpp"

#include <map>
#include <utility>

namespace eg {

Rank1System::Rank1System(FiniteGroup g, int alpha)
    : group_(std::move(g)), alpha_(alpha), n_(group_.order())
{
}

std::string Rank1System::unknown_name(int i) const
{
    if (i < n_)
        return "y[" + group_.name(i) + "]";
    if (i < A()) {
        const int k = (i - n_) % (n_ * n_);
        return std::string(i < n_ + n_ * n_ ? "l[" : "r[") + group_.name(k / n_) + "," + group_.name(k % n_) + "]";
    }
    return i == A() ? "A" : "B";
}

std::vector<Rank1System::Distinct> Rank1System::distinct() const
{
    std::vector<Distinct> out;
    std::map<std::vector<std::int64_t>, std::size_t> seen;
    for (std::size_t k = 0; k < equations_.size(); ++k) {
        const auto& c = equations_[k].coeffs;
        if (std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; }))
            continue;
        const auto [it, fresh] = seen.emplace(c, out.size());
        if (fresh)
            out.push_back({c, {}});
        out[it->second].sources.push_back(k);
    }
    return out;
}

std::string Rank1System::to_text(const Rank1Equation& e) const
{
    std::string out;
    for (int i = 0; i < unknown_count(); ++i) {
        const std::int64_t c = e.coeffs[i];
        if (c == 0)
            continue;
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        const std::int64_t m = c < 0 ? -c : c;
        if (m != 1)
            out += std::to_string(m) + "*";
        out += unknown_name(i);
    }
    return (out.empty() ? "0" : out) + " = 0";
}

nlohmann::json to_json(const Rank1System& s, const Rank1Equation& e)
{
    nlohmann::json elements = nlohmann::json::array();
    for (int g : e.elements)
        elements.push_back(s.group().name(g));
    return {{"axiom", e.axiom}, {"elements", elements}, {"equation", s.to_text(e)}};
}

Rank1System rank1_equations(const FiniteGroup& g, int alpha)
{
    if (alpha < 0)
        alpha = g.id();
    Rank1System s(g, alpha);
    const int n = g.order();
    const int e = g.id();
    auto add = [&](const char* axiom, std::vector<int> elements, std::initializer_list<std::pair<int, int>> terms) {
        std::vector<std::int64_t> coeffs(static_cast<std::size_t>(s.unknown_count()), 0);
        for (const auto& [u, c] : terms)
            coeffs[u] += c;
        s.add({axiom, std::move(elements), std::move(coeffs)});
    };

    // Contraction of scalars is their product; the right-hand side moves left.
    add("1a", {}, {{s.y(e), 1}, {s.l(e, e), -1}, {s.r(e, e), -1}, {s.A(), -1}, {s.B(), 1}});
    add("1b", {}, {{s.y(e), -1}, {s.l(e, e), -1}, {s.r(e, e), -1}, {s.A(), -1}, {s.B(), -1}});
    add("1c", {}, {{s.y(e), 1}, {s.r(e, e), 1}, {s.l(e, e), 1}, {s.A(), 1}, {s.B(), 1}});
    add("1d", {}, {{s.y(e), -1}, {s.r(e, e), 1}, {s.l(e, e), 1}, {s.A(), 1}, {s.B(), -1}});

    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const int a = g.mul(y, alpha, g.inv(x), g.inv(alpha));
                const int b = g.mul(x, z);
                const int c = g.mul(y, alpha, z, g.inv(alpha));
                add("2", {x, y, z},
                    {{s.y(x), 1}, {s.y(z), 1}, {s.y(y), 1}, {s.y(b), -1}, {s.y(a), -1}, {s.y(c), -1}});
            }
    for (const bool second : {false, true})
        for (int x = 0; x < n; ++x)
            for (int y1 = 0; y1 < n; ++y1)
                for (int y2 = 0; y2 < n; ++y2) {
                    if (!second)
                        add("3a", {x, y1, y2},
                            {{s.y(x), 1}, {s.y(x), -1}, {s.r(x, x), 1}, {s.l(x, x), 1}, {s.l(y1, x), -1},
                             {s.r(x, y2), -1}});
                    else
                        add("3b", {x, y1, y2},
                            {{s.y(x), -1}, {s.y(x), 1}, {s.l(x, x), -1}, {s.r(x, x), -1}, {s.r(y1, x), 1},
                             {s.l(x, y2), 1}});
                }
    for (const bool bar : {false, true}) {
        const int ys = bar ? -1 : 1;
        std::vector<int> t(5, 0);
        do {
            const int x = t[0], y1 = t[1], y2 = t[2], y3 = t[3], y4 = t[4];
            add(bar ? "4b" : "4a", t,
                {{s.l(y4, x), -1}, {s.l(y3, x), -1}, {s.y(x), ys}, {s.l(x, y2), 1}, {s.l(x, y1), 1},
                 {s.r(y4, x), -1}, {s.r(y3, x), -1}, {s.y(x), -ys}, {s.r(x, y2), 1}, {s.r(x, y1), 1}});
        } while (next_index(t, n));
    }
    return s;
}

} // namespace eg
