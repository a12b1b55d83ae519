#include "eg/rank1.hpp"

#include <algorithm>
#include <stdexcept>

namespace eg {

namespace {

using Row = std::vector<BigInt>;

/// Integer row echelon basis of the lattice spanned by `rows`.
std::vector<Row> echelon(const std::vector<Rank1System::Distinct>& rows, std::size_t cols)
{
    std::vector<Row> basis; // basis[k] has its pivot at pivot[k]
    std::vector<std::size_t> pivot;
    for (const auto& d : rows) {
        Row v(d.coeffs.begin(), d.coeffs.end());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const std::size_t c = pivot[k];
            if (v[c] == 0)
                continue;
            Row& p = basis[k];
            // Bezout combination keeps the lattice and clears v[c].
            BigInt a = p[c], b = v[c];
            BigInt s = 1, t = 0, s1 = 0, t1 = 1;
            while (b != 0) {
                const BigInt q = a / b;
                std::tie(a, b) = std::pair<BigInt, BigInt>{b, a - q * b};
                std::tie(s, s1) = std::pair<BigInt, BigInt>{s1, s - q * s1};
                std::tie(t, t1) = std::pair<BigInt, BigInt>{t1, t - q * t1};
            }
            const BigInt pc = p[c] / a, vc = v[c] / a;
            for (std::size_t j = 0; j < cols; ++j) {
                const BigInt np = s * p[j] + t * v[j];
                v[j] = pc * v[j] - vc * p[j];
                p[j] = np;
            }
        }
        const auto nz = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
        if (nz == v.end())
            continue;
        const auto c = static_cast<std::size_t>(nz - v.begin());
        const auto at = std::lower_bound(pivot.begin(), pivot.end(), c) - pivot.begin();
        basis.insert(basis.begin() + at, std::move(v));
        pivot.insert(pivot.begin() + at, c);
    }
    return basis;
}

struct SmithSolutions {
    std::vector<std::vector<std::int64_t>> choices; // allowed z_i
    std::vector<std::vector<std::int64_t>> v;       // V mod m
    BigInt count = 1;
};

SmithSolutions smith_solutions(const Rank1System& s, std::int64_t m)
{
    const auto cols = static_cast<std::size_t>(s.unknown_count());
    const auto basis = echelon(s.distinct(), cols);
    const auto snf = smith_normal_form(basis, basis.size(), cols);
    SmithSolutions out;
    out.v.assign(cols, std::vector<std::int64_t>(cols));
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            BigInt r = snf.V[i][j] % m;
            if (r < 0)
                r += m;
            out.v[i][j] = static_cast<std::int64_t>(r);
        }
    for (std::size_t i = 0; i < cols; ++i) {
        // d z = 0 (mod m) has gcd(d, m) solutions, the multiples of m / gcd.
        BigInt d = i < basis.size() ? BigInt(abs(snf.D[i][i])) : BigInt(0);
        const auto g = static_cast<std::int64_t>(d == 0 ? BigInt(m) : BigInt(gcd(d, BigInt(m))));
        std::vector<std::int64_t> zs;
        for (std::int64_t k = 0; k < g; ++k)
            zs.push_back(k * (m / g));
        out.count *= g;
        out.choices.push_back(std::move(zs));
    }
    return out;
}

std::vector<Rank1Assignment> solve_smith(const Rank1System& s, const UnitGroup& u, std::uint64_t budget)
{
    const int gen = *u.generator();
    const std::int64_t m = u.order();
    const auto sol = smith_solutions(s, m);
    if (sol.count > budget)
        throw BudgetExceeded("rank-1 system has " + sol.count.str() + " solutions, over the budget");
    const std::size_t n = sol.choices.size();
    std::vector<Rank1Assignment> out;
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
        Rank1Assignment a(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t e = 0;
            for (std::size_t j = 0; j < n; ++j)
                e = (e + sol.v[i][j] * sol.choices[j][pick[j]]) % m;
            a[i] = u.power(gen, e);
        }
        out.push_back(std::move(a));
        std::size_t k = n;
        while (k > 0 && ++pick[k - 1] == sol.choices[k - 1].size())
            pick[--k] = 0;
        if (k == 0)
            break;
    }
    return out;
}

class BruteForce {
public:
    BruteForce(const Rank1System& s, const UnitGroup& u, std::uint64_t budget)
        : u_(u), budget_(budget), n_(static_cast<std::size_t>(s.unknown_count()))
    {
        for (const auto& d : s.distinct())
            rows_.push_back(d.coeffs);
        order_variables();
    }

    std::vector<Rank1Assignment> run()
    {
        assignment_.assign(n_, 0);
        search(0);
        std::sort(out_.begin(), out_.end());
        return out_;
    }

private:
    // Greedy order: next the unknown that completes the most equations.
    void order_variables()
    {
        std::vector<std::vector<std::size_t>> uses(n_);
        std::vector<int> open(rows_.size(), 0);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t i = 0; i < n_; ++i)
                if (rows_[r][i] != 0) {
                    uses[i].push_back(r);
                    ++open[r];
                }
        std::vector<bool> taken(n_, false);
        completes_.resize(n_);
        for (std::size_t step = 0; step < n_; ++step) {
            std::size_t best = n_;
            std::pair<std::size_t, std::size_t> best_score{0, 0};
            for (std::size_t i = 0; i < n_; ++i) {
                if (taken[i])
                    continue;
                std::size_t done = 0;
                for (std::size_t r : uses[i])
                    done += open[r] == 1;
                const std::pair<std::size_t, std::size_t> score{done, uses[i].size()};
                if (best == n_ || score > best_score) {
                    best = i;
                    best_score = score;
                }
            }
            taken[best] = true;
            order_.push_back(best);
            for (std::size_t r : uses[best])
                if (--open[r] == 0)
                    completes_[step].push_back(r);
        }
    }

    bool holds(std::size_t r) const
    {
        int acc = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if (rows_[r][i] != 0)
                acc = u_.mul(acc, u_.power(assignment_[i], rows_[r][i]));
        return acc == 0;
    }

    void search(std::size_t depth)
    {
        if (depth == n_) {
            out_.push_back(assignment_);
            return;
        }
        const std::size_t var = order_[depth];
        for (int v = 0; v < u_.order(); ++v) {
            if (++nodes_ > budget_)
                throw BudgetExceeded("rank-1 search exceeded " + std::to_string(budget_) + " nodes");
            assignment_[var] = v;
            if (std::all_of(completes_[depth].begin(), completes_[depth].end(),
                            [&](std::size_t r) { return holds(r); }))
                search(depth + 1);
        }
        assignment_[var] = 0;
    }

    const UnitGroup& u_;
    std::uint64_t budget_;
    std::size_t n_;
    std::vector<std::vector<std::int64_t>> rows_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> completes_;
    Rank1Assignment assignment_;
    std::vector<Rank1Assignment> out_;
    std::uint64_t nodes_ = 0;
};

} // namespace

bool satisfies(const Rank1System& s, const UnitGroup& u, const Rank1Assignment& a)
{
    for (const auto& e : s.equations()) {
        int acc = 0;
        for (std::size_t i = 0; i < e.coeffs.size(); ++i)
            if (e.coeffs[i] != 0)
                acc = u.mul(acc, u.power(a[i], e.coeffs[i]));
        if (acc != 0)
            return false;
    }
    return true;
}

AnySystem materialize(const Rank1System& s, const UnitGroup& u, const Rank1Assignment& a)
{
    const int n = s.group().order();
    auto build = [&](const auto& ring) {
        using V = typename std::decay_t<decltype(ring)>::value_type;
        auto val = [&](int i) { return ring.from_int(u.value(a[i])); };
        std::vector<V> y, l, r;
        for (int g = 0; g < n; ++g)
            y.push_back(val(s.y(g)));
        for (int g1 = 0; g1 < n; ++g1)
            for (int g2 = 0; g2 < n; ++g2) {
                l.push_back(val(s.l(g1, g2)));
                r.push_back(val(s.r(g1, g2)));
            }
        auto sys = rank1_system(s.group(), ring, val(s.A()), val(s.B()), y, l, r);
        sys.set_alpha(s.alpha());
        return AnySystem(std::move(sys));
    };
    if (a.size() != static_cast<std::size_t>(s.unknown_count()))
        throw DimensionMismatch("assignment size differs from the unknown count");
    return u.over_integers() ? build(IntegerRing{}) : build(ModRing{u.modulus()});
}

BigInt rank1_solution_count(const Rank1System& s, const UnitGroup& u)
{
    if (!u.generator())
        throw UnknownSpec("Smith solving needs a cyclic unit group");
    return smith_solutions(s, u.order()).count;
}

std::vector<Rank1Assignment> solve_rank1_assignments(const Rank1System& s, const UnitGroup& u,
                                                     const Rank1Options& opt)
{
    const bool smith = opt.method == Rank1Method::Smith || (opt.method == Rank1Method::Auto && u.generator());
    if (smith && !u.generator())
        throw UnknownSpec("Smith solving needs a cyclic unit group");
    auto out = smith ? solve_smith(s, u, opt.budget) : BruteForce(s, u, opt.budget).run();
    std::sort(out.begin(), out.end());
    for (const auto& a : out)
        if (!satisfies(s, u, a))
            throw std::logic_error("rank-1 solver produced an assignment violating an equation");
    return out;
}

std::vector<AnySystem> solve_rank1(const FiniteGroup& g, const UnitGroup& u, const Rank1Options& opt, int alpha)
{
    const auto system = rank1_equations(g, alpha);
    std::vector<AnySystem> out;
    for (const auto& a : solve_rank1_assignments(system, u, opt)) {
        auto sys = materialize(system, u, a);
        if (opt.verify && !std::visit([](const auto& x) { return verify_axioms(x).all_pass(); }, sys))
            throw std::logic_error("rank-1 solution fails the axiom checker");
        out.push_back(std::move(sys));
    }
    return out;
}

} // namespace eg
