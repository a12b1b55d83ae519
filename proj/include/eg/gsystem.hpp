#pragma once

#include "eg/algebra.hpp"
#include "eg/diagram.hpp"
#include "eg/electric.hpp"
#include "eg/network.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace eg {

/// Families Y_g, L_{g1,g2}, R_{g1,g2} of invertible tensors over V = K^N with
/// their inverses, plus the units A and B. `alpha` is the group element the
/// second axiom refers to.
template <Ring R>
class GSystem {
public:
    using value_type = typename R::value_type;
    using T = Tensor<R>;

    /// Pair families are indexed by g1 * |G| + g2. Empty inverse families are
    /// computed; supplied ones are checked. Throws NotInvertible,
    /// DimensionMismatch or ValidationError.
    GSystem(FiniteGroup group, R ring, int n, value_type a, value_type b, std::vector<T> y,
            std::vector<T> l, std::vector<T> r, std::vector<T> y_inv = {}, std::vector<T> l_inv = {},
            std::vector<T> r_inv = {})
        : group_(std::move(group)), ring_(std::move(ring)), n_(n), a_(std::move(a)), b_(std::move(b)),
          alpha_(group_.id()), y_(std::move(y)), l_(std::move(l)), r_(std::move(r)), y_inv_(std::move(y_inv)),
          l_inv_(std::move(l_inv)), r_inv_(std::move(r_inv))
    {
        if (!ring_.is_unit(a_) || !ring_.is_unit(b_))
            throw NotInvertible("A and B must be units");
        const auto order = static_cast<std::size_t>(group_.order());
        prepare(y_, y_inv_, order, 2, "Y");
        prepare(l_, l_inv_, order * order, 1, "L");
        prepare(r_, r_inv_, order * order, 1, "R");
    }

    const FiniteGroup& group() const { return group_; }
    const R& ring() const { return ring_; }
    int dim() const { return n_; }
    const value_type& A() const { return a_; }
    const value_type& B() const { return b_; }
    int alpha() const { return alpha_; }
    void set_alpha(int alpha)
    {
        if (alpha < 0 || alpha >= group_.order())
            throw UnknownSpec("alpha is not a group element");
        alpha_ = alpha;
    }

    const T& y(int g) const { return y_[g]; }
    const T& y_inv(int g) const { return y_inv_[g]; }
    const T& l(int g1, int g2) const { return l_[pair(g1, g2)]; }
    const T& l_inv(int g1, int g2) const { return l_inv_[pair(g1, g2)]; }
    const T& r(int g1, int g2) const { return r_[pair(g1, g2)]; }
    const T& r_inv(int g1, int g2) const { return r_inv_[pair(g1, g2)]; }

private:
    std::size_t pair(int g1, int g2) const { return static_cast<std::size_t>(g1) * group_.order() + g2; }

    void prepare(const std::vector<T>& fam, std::vector<T>& inv, std::size_t count, int arity,
                 const std::string& name) const
    {
        if (fam.size() != count)
            throw DimensionMismatch(name + " needs " + std::to_string(count) + " tensors");
        if (!inv.empty() && inv.size() != count)
            throw DimensionMismatch(name + "inv needs " + std::to_string(count) + " tensors");
        const auto id = identity_tensor(arity, n_, ring_);
        for (std::size_t k = 0; k < count; ++k) {
            const T& t = fam[k];
            if (t.p() != arity || t.q() != arity || t.dim() != n_ || !(t.ring() == ring_))
                throw DimensionMismatch(name + " tensors must be (" + std::to_string(arity) + ", " +
                                        std::to_string(arity) + ") over the system's space");
            if (inv.size() == k) {
                inv.push_back(invert_tensor(t));
                continue;
            }
            if (inv[k].p() != arity || inv[k].q() != arity || inv[k].dim() != n_ || !(compose(t, inv[k]) == id) ||
                !(compose(inv[k], t) == id))
                throw ValidationError(name + "inv entry " + std::to_string(k) + " is not the inverse of its " +
                                      name + " partner");
        }
    }

    FiniteGroup group_;
    R ring_;
    int n_;
    value_type a_;
    value_type b_;
    int alpha_;
    std::vector<T> y_, l_, r_;
    std::vector<T> y_inv_, l_inv_, r_inv_;
};

/// Rank-1 system from scalar families laid out as in the GSystem constructor.
template <Ring R>
GSystem<R> rank1_system(FiniteGroup group, const R& ring, typename R::value_type a, typename R::value_type b,
                        const std::vector<typename R::value_type>& y, const std::vector<typename R::value_type>& l,
                        const std::vector<typename R::value_type>& r)
{
    auto lift = [&](const std::vector<typename R::value_type>& vs, int arity) {
        std::vector<Tensor<R>> out;
        for (const auto& v : vs)
            out.emplace_back(ring, arity, arity, 1, std::vector<typename R::value_type>{v});
        return out;
    };
    return GSystem<R>(std::move(group), ring, 1, std::move(a), std::move(b), lift(y, 2), lift(l, 1), lift(r, 1));
}

/// (Gamma_x, Gamma-bar_x): L then R, and R-bar then L-bar, along the strand.
template <Ring R>
std::pair<Tensor<R>, Tensor<R>> gamma(const GSystem<R>& s, int x)
{
    return {contract(tensor_product(s.r(x, x), s.l(x, x)), {{1, 2}}),
            contract(tensor_product(s.l_inv(x, x), s.r_inv(x, x)), {{1, 2}})};
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

struct AxiomFailure {
    std::vector<int> tuple;            // quantified group elements, in axiom order
    std::vector<std::string> elements; // their names
    std::vector<int> index;            // first differing coordinate
    std::string lhs;
    std::string rhs;
};

struct AxiomCheck {
    std::string name;
    bool pass = true;
    /// The contraction formula and the wiring-graph encoding agree on every
    /// checked instance.
    bool encodings_agree = true;
    std::uint64_t checked = 0;
    std::uint64_t space = 0;
    std::optional<AxiomFailure> failure;
};

struct AxiomReport {
    std::vector<AxiomCheck> axioms; // 1a 1b 1c 1d 2 3a 3b 4a 4b

    bool all_pass() const
    {
        return std::all_of(axioms.begin(), axioms.end(), [](const AxiomCheck& a) { return a.pass && a.encodings_agree; });
    }
};

struct VerifyOptions {
    /// Quantifier spaces up to this size are scanned fully, larger ones are
    /// sampled this many times.
    std::uint64_t max_tuples = 7776;
    std::uint64_t seed = 0;
    /// Skip everything after the first failing instance.
    bool stop_at_first_failure = false;
};

std::string to_text(const AxiomReport& r);
nlohmann::json to_json(const AxiomReport& r);

namespace detail {

template <Ring R>
struct AxiomSides {
    Tensor<R> lhs, rhs;             // contraction formulas
    Tensor<R> graph_lhs, graph_rhs; // wiring graphs
};

template <Ring R>
class Wiring {
public:
    explicit Wiring(const GSystem<R>& s) : net_(s.ring(), s.dim()) {}
    int node(const Tensor<R>& t) { return net_.add_node(t); }
    void wire(int from, int out, int to, int in) { net_.connect({from, out}, {to, in}); }
    Tensor<R> eval(std::vector<PortRef> ins, std::vector<PortRef> outs) const { return net_.evaluate(ins, outs); }

private:
    TensorNetwork<R> net_;
};

template <Ring R>
Tensor<R> scaled_identity(const GSystem<R>& s, int p, const typename R::value_type& k)
{
    return identity_tensor(p, s.dim(), s.ring()).scaled(k);
}

// 1a/1b close the right strand through Gamma-bar, 1c/1d the left through Gamma.
template <Ring R>
AxiomSides<R> axiom1(const GSystem<R>& s, bool bar, bool left)
{
    const auto& ring = s.ring();
    const int e = s.group().id();
    const auto& y = bar ? s.y_inv(e) : s.y(e);
    const auto [g, gbar] = gamma(s, e);
    const auto ainv = ring.unit_inverse(s.A());
    const auto binv = ring.unit_inverse(s.B());
    Wiring<R> w(s);
    const int yn = w.node(y);
    if (!left) {
        auto k = ring.mul(s.A(), bar ? s.B() : binv);
        const int rb = w.node(s.r_inv(e, e));
        const int lb = w.node(s.l_inv(e, e));
        w.wire(yn, 1, rb, 0);
        w.wire(rb, 0, lb, 0);
        w.wire(lb, 0, yn, 1);
        auto rhs = scaled_identity(s, 1, k);
        return {contract_product<R>({&y, &gbar}, {{3, 2}, {2, 3}}), rhs, w.eval({{yn, 0}}, {{yn, 0}}), rhs};
    }
    auto k = ring.mul(ainv, bar ? s.B() : binv);
    const int ln = w.node(s.l(e, e));
    const int rn = w.node(s.r(e, e));
    w.wire(yn, 0, ln, 0);
    w.wire(ln, 0, rn, 0);
    w.wire(rn, 0, yn, 0);
    auto rhs = scaled_identity(s, 1, k);
    return {contract_product<R>({&y, &g}, {{3, 1}, {1, 3}}), rhs, w.eval({{yn, 1}}, {{yn, 1}}), rhs};
}

template <Ring R>
AxiomSides<R> axiom2(const GSystem<R>& s, int x, int y, int z)
{
    const auto& G = s.group();
    const int al = s.alpha();
    const int a = G.mul(y, al, G.inv(x), G.inv(al));
    const int b = G.mul(x, z);
    const int c = G.mul(y, al, z, G.inv(al));

    Wiring<R> lw(s);
    const int nx = lw.node(s.y(x)), nz = lw.node(s.y(z)), ny = lw.node(s.y(y));
    lw.wire(nx, 0, nz, 0);
    lw.wire(nx, 1, ny, 0);
    lw.wire(ny, 0, nz, 1);
    Wiring<R> rw(s);
    const int na = rw.node(s.y(a)), nb = rw.node(s.y(b)), nc = rw.node(s.y(c));
    rw.wire(nb, 1, nc, 0);
    rw.wire(na, 0, nb, 1);
    rw.wire(na, 1, nc, 1);

    return {contract_product<R>({&s.y(x), &s.y(z), &s.y(y)}, {{3, 1}, {5, 2}, {4, 5}}),
            contract_product<R>({&s.y(b), &s.y(a), &s.y(c)}, {{5, 2}, {2, 3}, {6, 4}}),
            lw.eval({{nx, 0}, {nx, 1}, {ny, 1}}, {{nz, 0}, {nz, 1}, {ny, 1}}),
            rw.eval({{nb, 0}, {na, 0}, {na, 1}}, {{nb, 0}, {nc, 0}, {nc, 1}})};
}

template <Ring R>
AxiomSides<R> axiom3a(const GSystem<R>& s, int x, int y1, int y2)
{
    const auto g = gamma(s, x).first;
    auto id = scaled_identity(s, 2, s.ring().one());
    Wiring<R> w(s);
    const int ny = w.node(s.y(x)), nyb = w.node(s.y_inv(x));
    const int nl = w.node(s.l(x, x)), nr = w.node(s.r(x, x));
    const int nlb = w.node(s.l_inv(y1, x)), nrb = w.node(s.r_inv(x, y2));
    w.wire(ny, 0, nyb, 0);
    w.wire(ny, 1, nrb, 0);
    w.wire(nlb, 0, nyb, 1);
    w.wire(nyb, 0, nl, 0);
    w.wire(nl, 0, nr, 0);
    w.wire(nr, 0, ny, 0);
    return {contract_product<R>({&s.y(x), &s.y_inv(x), &g, &s.l_inv(y1, x), &s.r_inv(x, y2)},
                                {{3, 1}, {7, 2}, {5, 3}, {1, 5}, {4, 6}}),
            id, w.eval({{ny, 1}, {nlb, 0}}, {{nyb, 1}, {nrb, 0}}), id};
}

template <Ring R>
AxiomSides<R> axiom3b(const GSystem<R>& s, int x, int y1, int y2)
{
    const auto gbar = gamma(s, x).second;
    auto id = scaled_identity(s, 2, s.ring().one());
    Wiring<R> w(s);
    const int nyb = w.node(s.y_inv(x)), ny = w.node(s.y(x));
    const int nrb = w.node(s.r_inv(x, x)), nlb = w.node(s.l_inv(x, x));
    const int nr = w.node(s.r(y1, x)), nl = w.node(s.l(x, y2));
    w.wire(nyb, 1, ny, 1);
    w.wire(nyb, 0, nl, 0);
    w.wire(nr, 0, ny, 0);
    w.wire(ny, 1, nrb, 0);
    w.wire(nrb, 0, nlb, 0);
    w.wire(nlb, 0, nyb, 1);
    return {contract_product<R>({&s.y_inv(x), &s.y(x), &gbar, &s.r(y1, x), &s.l(x, y2)},
                                {{7, 1}, {4, 2}, {5, 4}, {2, 5}, {3, 6}}),
            id, w.eval({{nyb, 0}, {nr, 0}}, {{ny, 0}, {nl, 0}}), id};
}

template <Ring R>
AxiomSides<R> axiom4(const GSystem<R>& s, bool bar, int x, int y1, int y2, int y3, int y4)
{
    const auto& y = bar ? s.y_inv(x) : s.y(x);
    const std::vector<std::pair<int, int>> pairs{{3, 1}, {4, 2}, {5, 3}, {6, 4}};

    Wiring<R> lw(s);
    const int ly = lw.node(y);
    const int l1 = lw.node(s.l(x, y1)), l2 = lw.node(s.l(x, y2));
    const int lb3 = lw.node(s.l_inv(y3, x)), lb4 = lw.node(s.l_inv(y4, x));
    lw.wire(ly, 0, l2, 0);
    lw.wire(ly, 1, l1, 0);
    lw.wire(lb4, 0, ly, 0);
    lw.wire(lb3, 0, ly, 1);

    Wiring<R> rw(s);
    const int ry = rw.node(y);
    const int r3 = rw.node(s.r(y3, x)), r4 = rw.node(s.r(y4, x));
    const int rb1 = rw.node(s.r_inv(x, y1)), rb2 = rw.node(s.r_inv(x, y2));
    rw.wire(ry, 1, rb1, 0);
    rw.wire(ry, 0, rb2, 0);
    rw.wire(r4, 0, ry, 0);
    rw.wire(r3, 0, ry, 1);

    return {contract_product<R>({&s.l_inv(y4, x), &s.l_inv(y3, x), &y, &s.l(x, y2), &s.l(x, y1)}, pairs),
            contract_product<R>({&s.r(y4, x), &s.r(y3, x), &y, &s.r_inv(x, y2), &s.r_inv(x, y1)}, pairs),
            lw.eval({{lb4, 0}, {lb3, 0}}, {{l2, 0}, {l1, 0}}),
            rw.eval({{r4, 0}, {r3, 0}}, {{rb2, 0}, {rb1, 0}})};
}

/// Records one instance into `check`.
template <Ring R>
void record(AxiomCheck& check, const GSystem<R>& s, const std::vector<int>& tuple, const AxiomSides<R>& sides)
{
    ++check.checked;
    if (!(sides.lhs == sides.graph_lhs) || !(sides.rhs == sides.graph_rhs))
        check.encodings_agree = false;
    if (sides.lhs == sides.rhs)
        return;
    const bool first = check.pass;
    check.pass = false;
    if (!first)
        return;
    const auto& lc = sides.lhs.coords();
    const auto& rc = sides.rhs.coords();
    std::size_t k = 0;
    while (k < lc.size() && s.ring().eq(lc[k], rc[k]))
        ++k;
    AxiomFailure f;
    f.tuple = tuple;
    for (int g : tuple)
        f.elements.push_back(s.group().name(g));
    const int arity = sides.lhs.p() + sides.lhs.q();
    f.index.assign(static_cast<std::size_t>(arity), 0);
    for (std::size_t rest = k, d = f.index.size(); d-- > 0; rest /= static_cast<std::size_t>(s.dim()))
        f.index[d] = static_cast<int>(rest % static_cast<std::size_t>(s.dim()));
    f.lhs = s.ring().to_string(lc[k]);
    f.rhs = s.ring().to_string(rc[k]);
    check.failure = std::move(f);
}

/// Visits every tuple of `arity` elements, or a seeded sample when the space
/// exceeds the cap, until `visit` returns false.
template <typename F>
void for_each_tuple(int order, int arity, const VerifyOptions& opt, AxiomCheck& check, F&& visit)
{
    std::uint64_t space = 1;
    bool overflow = false;
    for (int k = 0; k < arity; ++k) {
        if (space > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(order))
            overflow = true;
        else
            space *= static_cast<std::uint64_t>(order);
    }
    check.space = overflow ? std::numeric_limits<std::uint64_t>::max() : space;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    if (!overflow && space <= opt.max_tuples) {
        do
            if (!visit(t))
                return;
        while (next_index(t, order));
        return;
    }
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t n = 0; n < opt.max_tuples; ++n) {
        for (auto& g : t)
            g = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(order)));
        if (!visit(t))
            return;
    }
}

} // namespace detail

template <Ring R>
AxiomReport verify_axioms(const GSystem<R>& s, const VerifyOptions& opt = {})
{
    AxiomReport report;
    auto add = [&](std::string name) -> AxiomCheck& {
        report.axioms.push_back({});
        report.axioms.back().name = std::move(name);
        return report.axioms.back();
    };
    const int order = s.group().order();
    bool stop = false;
    // Records one instance; false once the scan should stop.
    auto keep = [&](AxiomCheck& c, const std::vector<int>& t, const detail::AxiomSides<R>& sides) {
        detail::record(c, s, t, sides);
        stop = opt.stop_at_first_failure && !c.pass;
        return !stop;
    };
    const std::vector<std::tuple<const char*, bool, bool>> first{
        {"1a", false, false}, {"1b", true, false}, {"1c", false, true}, {"1d", true, true}};
    for (const auto& [name, bar, left] : first) {
        auto& c = add(name);
        c.space = 1;
        if (!stop)
            keep(c, {}, detail::axiom1(s, bar, left));
    }
    const std::vector<std::pair<const char*, int>> rest{{"2", 3}, {"3a", 3}, {"3b", 3}, {"4a", 5}, {"4b", 5}};
    for (const auto& [name, arity] : rest) {
        auto& c = add(name);
        const std::string n = name;
        if (stop)
            continue;
        detail::for_each_tuple(order, arity, opt, c, [&](const std::vector<int>& t) {
            if (n == "2")
                return keep(c, t, detail::axiom2(s, t[0], t[1], t[2]));
            if (n == "3a")
                return keep(c, t, detail::axiom3a(s, t[0], t[1], t[2]));
            if (n == "3b")
                return keep(c, t, detail::axiom3b(s, t[0], t[1], t[2]));
            return keep(c, t, detail::axiom4(s, n == "4b", t[0], t[1], t[2], t[3], t[4]));
        });
    }
    return report;
}

// ---------------------------------------------------------------------------
// Diagram networks and invariants
// ---------------------------------------------------------------------------

/// Crossings become Y or Y-bar by sign; rightward cups R, leftward cups
/// L-bar, leftward caps L, rightward caps R-bar. Throws ColouringMismatch or
/// NotProper.
template <Ring R>
TensorNetwork<R> build_network(const MorseWord& w, const Colouring& c, const GSystem<R>& s)
{
    const auto& G = s.group();
    const auto trace = trace_morse(w);
    if (c.colours.size() != trace.event_of_crossing.size())
        throw ColouringMismatch("colouring has " + std::to_string(c.colours.size()) + " entries for " +
                                std::to_string(trace.event_of_crossing.size()) + " crossings");
    for (int g : c.colours)
        if (g < 0 || g >= G.order())
            throw ColouringMismatch("colour outside the group");
    if (c.alpha < 0 || c.alpha >= G.order() || c.beta < 0 || c.beta >= G.order())
        throw ColouringMismatch("alpha or beta outside the group");
    if (!is_proper(morse_to_pd(w), G, c))
        throw NotProper("colouring is not proper");

    const auto& events = w.events();
    TensorNetwork<R> net(s.ring(), s.dim());
    auto colour = [&](int crossing) { return crossing < 0 ? G.id() : c.colours[crossing]; };
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        if (e.is_cross()) {
            const int g = c.colours[trace.crossing_of_event[i]];
            net.add_node(e.sign > 0 ? s.y(g) : s.y_inv(g), (e.sign > 0 ? "Y[" : "Ybar[") + G.name(g) + "]");
            continue;
        }
        const int g1 = colour(trace.extremum_ends[i].first);
        const int g2 = colour(trace.extremum_ends[i].second);
        const bool cup = e.kind == Event::Kind::Cup;
        const bool right = e.turn == Turn::Rightward;
        const auto& t = cup ? (right ? s.r(g1, g2) : s.l_inv(g1, g2)) : (right ? s.r_inv(g1, g2) : s.l(g1, g2));
        const char* name = cup ? (right ? "R[" : "Lbar[") : (right ? "Rbar[" : "L[");
        net.add_node(t, name + G.name(g1) + "," + G.name(g2) + "]");
    }
    // Crossing outputs: TL (slot 3) is output 0, TR (slot 2) output 1.
    auto out_port = [&](int p) -> PortRef {
        const int ev = p / 4;
        const int slot = p % 4;
        return {ev, events[ev].is_cross() ? (slot == 3 ? 0 : 1) : 0};
    };
    auto in_port = [&](int p) -> PortRef {
        const int ev = p / 4;
        return {ev, events[ev].is_cross() ? p % 4 : 0};
    };
    for (const auto& link : trace.links) {
        if (link.dir == Dir::Up)
            net.connect(out_port(link.lower), in_port(link.upper));
        else
            net.connect(out_port(link.upper), in_port(link.lower));
    }
    return net;
}

/// A^rotation * B^writhe * (contracted network).
template <Ring R>
typename R::value_type t_value(const MorseWord& w, const Colouring& c, const GSystem<R>& s)
{
    const auto& ring = s.ring();
    const auto t = contract_network(build_network(w, c, s));
    return ring.mul(ring.mul(power(ring, s.A(), rotation_number(w)), power(ring, s.B(), writhe(w))), t);
}

/// A system per (alpha, beta), falling back to a shared one.
template <Ring R>
class SystemFamily {
public:
    explicit SystemFamily(GSystem<R> shared) : shared_(std::move(shared)) {}

    /// Throws ValidationError if `s` lives over a different group, ring or N.
    void set(int alpha, int beta, GSystem<R> s)
    {
        const auto& ref = *shared_;
        if (s.group().order() != ref.group().order() || s.group().spec() != ref.group().spec() ||
            !(s.ring() == ref.ring()) || s.dim() != ref.dim())
            throw ValidationError("family members must share group, ring and N");
        by_pair_.insert_or_assign({alpha, beta}, std::move(s));
    }

    const GSystem<R>& at(int alpha, int beta) const
    {
        const auto it = by_pair_.find({alpha, beta});
        return it == by_pair_.end() ? *shared_ : it->second;
    }
    const FiniteGroup& group() const { return shared_->group(); }
    const R& ring() const { return shared_->ring(); }

private:
    std::optional<GSystem<R>> shared_;
    std::map<std::pair<int, int>, GSystem<R>> by_pair_;
};

template <Ring R>
using TauValue = std::map<std::pair<int, int>, std::vector<typename R::value_type>>;

/// For every (alpha, beta) the multiset of t-values over proper colourings,
/// sorted by text form.
template <Ring R>
TauValue<R> tau(const MorseWord& w, const SystemFamily<R>& fam, std::int64_t budget = kDefaultSearchBudget)
{
    const auto& G = fam.group();
    const auto d = morse_to_pd(w);
    const auto& ring = fam.ring();
    TauValue<R> out;
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b) {
            std::vector<std::pair<std::string, typename R::value_type>> vals;
            for_each_colouring(
                d, G, a, b,
                [&](const Colouring& c) {
                    auto v = t_value(w, c, fam.at(a, b));
                    vals.emplace_back(ring.to_string(v), std::move(v));
                },
                budget);
            std::sort(vals.begin(), vals.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            auto& cell = out[{a, b}];
            for (auto& v : vals)
                cell.push_back(std::move(v.second));
        }
    return out;
}

template <Ring R>
nlohmann::json tau_to_json(const FiniteGroup& g, const R& ring, const TauValue<R>& t)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, vals] : t) {
        nlohmann::json cell = nlohmann::json::array();
        for (const auto& v : vals)
            cell.push_back(ring.to_json(v));
        out[g.name(key.first) + "," + g.name(key.second)] = std::move(cell);
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

/// Splits "g1,g2" at the comma that leaves two element names.
std::pair<int, int> parse_pair_key(const FiniteGroup& g, const std::string& key);

template <Ring R>
nlohmann::json to_json(const GSystem<R>& s)
{
    const auto& G = s.group();
    const auto& ring = s.ring();
    auto coords = [&](const Tensor<R>& t) {
        return s.dim() == 1 ? ring.to_json(t.coords().front()) : coords_to_json(t);
    };
    nlohmann::json j;
    j["group"] = G.spec();
    j["ring"] = ring.descriptor();
    j["N"] = s.dim();
    j["A"] = ring.to_json(s.A());
    j["B"] = ring.to_json(s.B());
    j["alpha"] = G.name(s.alpha());
    for (const char* key : {"Y", "Yinv"}) {
        nlohmann::json m = nlohmann::json::object();
        for (int g = 0; g < G.order(); ++g)
            m[G.name(g)] = coords(key[1] ? s.y_inv(g) : s.y(g));
        j[key] = std::move(m);
    }
    for (const char* key : {"L", "Linv", "R", "Rinv"}) {
        const bool inv = key[1] != '\0';
        nlohmann::json m = nlohmann::json::object();
        for (int a = 0; a < G.order(); ++a)
            for (int b = 0; b < G.order(); ++b) {
                const auto& t = key[0] == 'L' ? (inv ? s.l_inv(a, b) : s.l(a, b)) : (inv ? s.r_inv(a, b) : s.r(a, b));
                m[G.name(a) + "," + G.name(b)] = coords(t);
            }
        j[key] = std::move(m);
    }
    return j;
}

/// `j["ring"]` must describe `ring`; inverse families are optional.
template <Ring R>
GSystem<R> system_from_json(const R& ring, const nlohmann::json& j)
{
    try {
        FiniteGroup G = make_group(j.at("group").get<std::string>());
        const int n = j.at("N").get<int>();
        if (n < 1)
            throw DimensionMismatch("N must be positive");
        auto tensor = [&](const nlohmann::json& node, int arity) {
            if (n == 1 && !node.is_array())
                return Tensor<R>(ring, arity, arity, 1, {ring.from_json(node)});
            return tensor_from_json(ring, arity, arity, n, node);
        };
        auto singles = [&](const char* key) {
            std::vector<Tensor<R>> out;
            if (!j.contains(key))
                return out;
            std::vector<std::optional<Tensor<R>>> slots(static_cast<std::size_t>(G.order()));
            for (const auto& [name, node] : j.at(key).items())
                slots[G.element(name)] = tensor(node, 2);
            for (auto& t : slots) {
                if (!t)
                    throw ValidationError(std::string(key) + " is missing an element");
                out.push_back(std::move(*t));
            }
            return out;
        };
        auto pairs = [&](const char* key) {
            std::vector<Tensor<R>> out;
            if (!j.contains(key))
                return out;
            std::vector<std::optional<Tensor<R>>> slots(static_cast<std::size_t>(G.order() * G.order()));
            for (const auto& [name, node] : j.at(key).items()) {
                const auto [a, b] = parse_pair_key(G, name);
                slots[static_cast<std::size_t>(a * G.order() + b)] = tensor(node, 1);
            }
            for (auto& t : slots) {
                if (!t)
                    throw ValidationError(std::string(key) + " is missing a pair");
                out.push_back(std::move(*t));
            }
            return out;
        };
        auto y = singles("Y");
        auto l = pairs("L");
        auto r = pairs("R");
        if (y.empty() || l.empty() || r.empty())
            throw ValidationError("system needs Y, L and R");
        GSystem<R> s(G, ring, n, ring.from_json(j.at("A")), ring.from_json(j.at("B")), std::move(y), std::move(l),
                     std::move(r), singles("Yinv"), pairs("Linv"), pairs("Rinv"));
        if (j.contains("alpha"))
            s.set_alpha(G.element(j.at("alpha").get<std::string>()));
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw SyntaxError(std::string("malformed system JSON: ") + e.what());
    }
}

using AnySystem = std::variant<GSystem<IntegerRing>, GSystem<ModRing>, GSystem<RationalRing>, GSystem<LaurentRing>>;

/// Reads a system over whichever ring its descriptor names.
AnySystem any_system_from_json(const nlohmann::json& j);

} // namespace eg
