#include "eg/algebra.hpp"
#include "eg/errors.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

namespace eg {

FiniteGroup::FiniteGroup(std::vector<std::string> names, std::vector<int> table)
    : order_(static_cast<int>(names.size())), names_(std::move(names)), table_(std::move(table))
{
    const int n = order_;
    if (n == 0 || table_.size() != static_cast<std::size_t>(n) * n)
        throw ValidationError("Cayley table has the wrong size");
    if (std::any_of(table_.begin(), table_.end(), [n](int v) { return v < 0 || v >= n; }))
        throw ValidationError("Cayley table entry out of range");

    id_ = -1;
    for (int e = 0; e < n && id_ < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = mul(e, a) == a && mul(a, e) == a;
        if (ok)
            id_ = e;
    }
    if (id_ < 0)
        throw ValidationError("no identity element");

    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == id_ && mul(b, a) == id_)
                inv_[a] = b;
    if (std::find(inv_.begin(), inv_.end(), -1) != inv_.end())
        throw ValidationError("element without inverse");

    // Light's test: associativity on a generating set suffices.
    std::vector<int> gens;
    std::vector<bool> reached(n, false);
    for (int cand = 0; cand < n; ++cand) {
        if (cand == id_ || reached[cand])
            continue;
        gens.push_back(cand);
        std::fill(reached.begin(), reached.end(), false);
        reached[id_] = true;
        std::vector<int> stack{id_};
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int g : gens) {
                const int y = mul(x, g);
                if (!reached[y]) {
                    reached[y] = true;
                    stack.push_back(y);
                }
            }
        }
    }
    for (int g : gens)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (mul(mul(x, g), y) != mul(x, mul(g, y)))
                    throw ValidationError("multiplication is not associative");
}

int FiniteGroup::element(std::string_view name) const
{
    for (int a = 0; a < order_; ++a)
        if (names_[a] == name)
            return a;
    throw UnknownSpec("no element named '" + std::string(name) + "' in " + spec_);
}

bool FiniteGroup::is_abelian() const
{
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < a; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

namespace {

struct Factor {
    char kind;
    int n;
};

long factor_order(const Factor& f)
{
    switch (f.kind) {
    case 'Z': return f.n;
    case 'D': return 2L * f.n;
    default: {
        long k = 1;
        for (int i = 2; i <= f.n; ++i)
            k *= i;
        return k;
    }
    }
}

FiniteGroup cyclic(int n)
{
    std::vector<std::string> names;
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        names.push_back(std::to_string(a));
        for (int b = 0; b < n; ++b)
            table[a * n + b] = (a + b) % n;
    }
    return FiniteGroup(std::move(names), std::move(table));
}

// r^k s^e is stored as k + n * e.
FiniteGroup dihedral(int n)
{
    const int order = 2 * n;
    std::vector<std::string> names;
    for (int e = 0; e < 2; ++e)
        for (int k = 0; k < n; ++k) {
            std::string s = k == 0 ? "" : (k == 1 ? "r" : "r" + std::to_string(k));
            if (e == 1)
                s += "s";
            names.push_back(s.empty() ? "e" : s);
        }
    std::vector<int> table(static_cast<std::size_t>(order) * order);
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            const int a = x % n, e = x / n, b = y % n, f = y / n;
            const int k = ((a + (e ? -b : b)) % n + n) % n;
            table[x * order + y] = k + n * (e ^ f);
        }
    return FiniteGroup(std::move(names), std::move(table));
}

std::string cycle_name(const std::vector<int>& p)
{
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i))
            continue;
        out += '(';
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            out += std::to_string(j + 1);
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

// Permutations in lexicographic order; (p q)(i) = p(q(i)).
FiniteGroup symmetric(int n)
{
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int order = static_cast<int>(perms.size());
    std::vector<std::string> names;
    for (const auto& q : perms)
        names.push_back(cycle_name(q));
    std::vector<int> table(static_cast<std::size_t>(order) * order);
    std::vector<int> r(n);
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            for (int i = 0; i < n; ++i)
                r[i] = perms[x][perms[y][i]];
            table[x * order + y] = static_cast<int>(
                std::lower_bound(perms.begin(), perms.end(), r) - perms.begin());
        }
    return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup product(const std::vector<FiniteGroup>& fs)
{
    int order = 1;
    for (const auto& f : fs)
        order *= f.order();
    const int k = static_cast<int>(fs.size());
    auto digits = [&](int x) {
        std::vector<int> d(k);
        for (int i = k - 1; i >= 0; --i) {
            d[i] = x % fs[i].order();
            x /= fs[i].order();
        }
        return d;
    };
    std::vector<std::vector<int>> dig(order);
    std::vector<std::string> names;
    for (int x = 0; x < order; ++x) {
        dig[x] = digits(x);
        std::string s = "(";
        for (int i = 0; i < k; ++i)
            s += (i ? "," : "") + fs[i].name(dig[x][i]);
        names.push_back(s + ")");
    }
    std::vector<int> table(static_cast<std::size_t>(order) * order);
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            int z = 0;
            for (int i = 0; i < k; ++i)
                z = z * fs[i].order() + fs[i].mul(dig[x][i], dig[y][i]);
            table[x * order + y] = z;
        }
    return FiniteGroup(std::move(names), std::move(table));
}

} // namespace

FiniteGroup make_group(std::string_view spec, int cap)
{
    std::string s(spec);
    // Normalize the multiplication sign to 'x'.
    for (std::string::size_type at; (at = s.find("\xC3\x97")) != std::string::npos;)
        s.replace(at, 2, "x");
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());

    static const std::regex factor_re(R"(([ZDS])(\d{1,9}))");
    std::vector<Factor> factors;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = s.find_first_of("xX", start);
        const std::string part = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
        std::smatch m;
        if (!std::regex_match(part, m, factor_re))
            throw UnknownSpec("unknown group '" + std::string(spec) + "'");
        const int n = std::stoi(m[2]);
        const char kind = m[1].str()[0];
        if (n < 1 || (kind == 'S' && n > 5))
            throw UnknownSpec("unsupported group factor '" + part + "'");
        factors.push_back({kind, n});
        if (end == std::string::npos)
            break;
        start = end + 1;
    }

    long total = 1;
    for (const auto& f : factors) {
        total *= factor_order(f);
        if (total > cap)
            throw SizeLimit("group '" + std::string(spec) + "' exceeds the order cap " + std::to_string(cap));
    }

    std::vector<FiniteGroup> built;
    for (const auto& f : factors)
        built.push_back(f.kind == 'Z' ? cyclic(f.n) : f.kind == 'D' ? dihedral(f.n) : symmetric(f.n));
    FiniteGroup g = built.size() == 1 ? std::move(built.front()) : product(built);
    g.set_spec(std::string(spec));
    return g;
}

} // namespace eg
