#include "eg/electric.hpp"
#include "eg/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace eg {

int corner_multiplier(const FiniteGroup& g, int sign, CornerPos pos, int xi, int alpha, int beta)
{
    const int xs = sign > 0 ? xi : g.inv(xi);
    switch (pos) {
    case CornerPos::S: return g.mul(xi, alpha, beta);
    case CornerPos::N: return g.mul(g.inv(beta), g.inv(alpha), g.inv(xi));
    case CornerPos::W: return g.conj(xs, alpha);
    case CornerPos::E: return g.conj(g.inv(xs), beta);
    }
    return g.id();
}

int face_holonomy(const PlanarDiagram& d, const FiniteGroup& g, const Colouring& c, const Face& f)
{
    int acc = g.id();
    for (const Corner& k : f.corners())
        acc = g.mul(acc, corner_multiplier(g, d.crossings()[k.crossing].sign, k.pos,
                                           c.colours[k.crossing], c.alpha, c.beta));
    return acc;
}

bool is_proper(const PlanarDiagram& d, const FiniteGroup& g, const Colouring& c)
{
    if (c.colours.size() != d.crossings().size())
        throw ColouringMismatch("colouring has " + std::to_string(c.colours.size()) +
                                " colours for " + std::to_string(d.crossings().size()) + " crossings");
    return std::all_of(d.faces().begin(), d.faces().end(),
                       [&](const Face& f) { return face_holonomy(d, g, c, f) == g.id(); });
}

namespace {

class Search {
public:
    Search(const PlanarDiagram& d, const FiniteGroup& g, int alpha, int beta, std::int64_t budget)
        : d_(d), g_(g), alpha_(alpha), beta_(beta), budget_(budget)
    {
        const int n = static_cast<int>(d.crossings().size());
        incident_.resize(n);
        for (const Face& f : d.faces()) {
            const int id = static_cast<int>(faces_.size());
            faces_.push_back(f.corners());
            for (const Corner& k : faces_.back()) {
                auto& inc = incident_[k.crossing];
                if (std::find(inc.begin(), inc.end(), id) == inc.end())
                    inc.push_back(id);
            }
        }
    }

    void run(const std::function<void(const Colouring&)>& visit)
    {
        std::vector<int> col(d_.crossings().size(), -1);
        if (propagate(col))
            descend(col, visit);
    }

private:
    int holonomy(int face, const std::vector<int>& col) const
    {
        int acc = g_.id();
        for (const Corner& k : faces_[face])
            acc = g_.mul(acc, corner_multiplier(g_, d_.crossings()[k.crossing].sign, k.pos,
                                                col[k.crossing], alpha_, beta_));
        return acc;
    }

    std::vector<int> unassigned(int face, const std::vector<int>& col) const
    {
        std::vector<int> out;
        for (const Corner& k : faces_[face])
            if (col[k.crossing] < 0 && std::find(out.begin(), out.end(), k.crossing) == out.end())
                out.push_back(k.crossing);
        return out;
    }

    // Checks complete faces and fills in crossings forced by a face with a
    // single uncoloured crossing. Returns false on a contradiction.
    bool propagate(std::vector<int>& col) const
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
                const auto open = unassigned(f, col);
                if (open.empty()) {
                    if (holonomy(f, col) != g_.id())
                        return false;
                } else if (open.size() == 1) {
                    const int c = open.front();
                    int found = -1;
                    int count = 0;
                    for (int v = 0; v < g_.order(); ++v) {
                        col[c] = v;
                        if (holonomy(f, col) == g_.id()) {
                            found = v;
                            ++count;
                        }
                    }
                    col[c] = -1;
                    if (count == 0)
                        return false;
                    if (count == 1) {
                        col[c] = found;
                        changed = true;
                    }
                }
            }
        }
        return true;
    }

    int choose(const std::vector<int>& col) const
    {
        int best = -1;
        std::size_t best_score = 0;
        for (int c = 0; c < static_cast<int>(col.size()); ++c) {
            if (col[c] >= 0)
                continue;
            std::size_t score = col.size() + 1;
            for (int f : incident_[c])
                score = std::min(score, unassigned(f, col).size());
            if (best < 0 || score < best_score) {
                best = c;
                best_score = score;
            }
        }
        return best;
    }

    void descend(const std::vector<int>& col, const std::function<void(const Colouring&)>& visit)
    {
        if (++nodes_ > budget_)
            throw BudgetExceeded("colouring search exceeded " + std::to_string(budget_) + " nodes");
        const int c = choose(col);
        if (c < 0) {
            visit(Colouring{alpha_, beta_, col});
            return;
        }
        for (int v = 0; v < g_.order(); ++v) {
            std::vector<int> next = col;
            next[c] = v;
            if (propagate(next))
                descend(next, visit);
        }
    }

    const PlanarDiagram& d_;
    const FiniteGroup& g_;
    int alpha_;
    int beta_;
    std::int64_t budget_;
    std::int64_t nodes_ = 0;
    std::vector<std::vector<Corner>> faces_;
    std::vector<std::vector<int>> incident_;
};

} // namespace

void for_each_colouring(const PlanarDiagram& d, const FiniteGroup& g, int alpha, int beta,
                        const std::function<void(const Colouring&)>& visit, std::int64_t budget)
{
    Search(d, g, alpha, beta, budget).run(visit);
}

std::vector<Colouring> enumerate_colourings(const PlanarDiagram& d, const FiniteGroup& g, int alpha,
                                            int beta, std::int64_t budget)
{
    std::vector<Colouring> out;
    for_each_colouring(d, g, alpha, beta, [&](const Colouring& c) { out.push_back(c); }, budget);
    std::sort(out.begin(), out.end(),
              [](const Colouring& x, const Colouring& y) { return x.colours < y.colours; });
    return out;
}

std::uint64_t count_colourings(const PlanarDiagram& d, const FiniteGroup& g, int alpha, int beta,
                               std::int64_t budget)
{
    std::uint64_t n = 0;
    for_each_colouring(d, g, alpha, beta, [&](const Colouring&) { ++n; }, budget);
    return n;
}

Census colouring_census(const PlanarDiagram& d, const FiniteGroup& g, std::int64_t budget)
{
    Census c;
    c.counts.assign(g.order(), std::vector<std::uint64_t>(g.order(), 0));
    c.total = 0;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) {
            c.counts[a][b] = count_colourings(d, g, a, b, budget);
            c.total += c.counts[a][b];
        }
    return c;
}

std::vector<Colouring> proper_extensions(const PlanarDiagram& d, const FiniteGroup& g,
                                         const Colouring& partial, const std::vector<int>& free)
{
    std::vector<Colouring> out;
    Colouring c = partial;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == free.size()) {
            if (is_proper(d, g, c))
                out.push_back(c);
            return;
        }
        for (int v = 0; v < g.order(); ++v) {
            c.colours[free[k]] = v;
            self(self, k + 1);
        }
    };
    rec(rec, 0);
    return out;
}

nlohmann::json to_json(const FiniteGroup& g, const Colouring& c)
{
    nlohmann::json colours = nlohmann::json::object();
    for (std::size_t i = 0; i < c.colours.size(); ++i)
        colours[std::to_string(i)] = g.name(c.colours[i]);
    return {{"alpha", g.name(c.alpha)}, {"beta", g.name(c.beta)}, {"colours", std::move(colours)}};
}

Colouring colouring_from_json(const FiniteGroup& g, const nlohmann::json& j)
{
    try {
        Colouring c;
        c.alpha = g.element(j.at("alpha").get<std::string>());
        c.beta = g.element(j.at("beta").get<std::string>());
        const auto& colours = j.at("colours");
        c.colours.assign(colours.size(), -1);
        for (const auto& [key, value] : colours.items()) {
            const std::size_t i = std::stoul(key);
            if (i >= c.colours.size())
                throw ColouringMismatch("crossing id " + key + " out of range");
            c.colours[i] = g.element(value.get<std::string>());
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("colouring JSON: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw SyntaxError("colouring JSON: crossing ids must be integers");
    }
}

} // namespace eg
