#include <doctest.h>

#include "eg/network.hpp"

#include <random>

using namespace eg;

namespace {

template <Ring R>
typename R::value_type random_element(const R& ring, std::mt19937_64& rng);

template <>
BigInt random_element(const IntegerRing&, std::mt19937_64& rng)
{
    return static_cast<int>(rng() % 41) - 20;
}

template <>
std::int64_t random_element(const ModRing& ring, std::mt19937_64& rng)
{
    return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ring.modulus()));
}

template <>
BigRational random_element(const RationalRing&, std::mt19937_64& rng)
{
    return BigRational(static_cast<int>(rng() % 21) - 10, 1 + static_cast<int>(rng() % 6));
}

template <>
Laurent random_element(const LaurentRing& ring, std::mt19937_64& rng)
{
    Laurent acc;
    const int terms = static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i)
        acc = ring.add(acc, ring.monomial(static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3));
    return acc;
}

template <Ring R>
void check_ring_laws(const R& ring)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_element(ring, rng);
        const auto b = random_element(ring, rng);
        const auto c = random_element(ring, rng);
        CHECK(ring.eq(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c))));
        CHECK(ring.eq(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c))));
        CHECK(ring.eq(ring.add(a, b), ring.add(b, a)));
        CHECK(ring.eq(ring.mul(a, b), ring.mul(b, a)));
        CHECK(ring.eq(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c))));
        CHECK(ring.eq(ring.add(a, ring.zero()), a));
        CHECK(ring.eq(ring.mul(a, ring.one()), a));
        CHECK(ring.eq(ring.add(a, ring.neg(a)), ring.zero()));
        if (ring.is_unit(a))
            CHECK(ring.eq(ring.mul(a, ring.unit_inverse(a)), ring.one()));
        CHECK(ring.eq(ring.from_json(ring.to_json(a)), a));
    }
}

template <Ring R>
Tensor<R> random_tensor(const R& ring, int p, int q, int n, std::mt19937_64& rng)
{
    Tensor<R> t(ring, p, q, n);
    for (auto& v : t.coords())
        v = random_element(ring, rng);
    return t;
}

} // namespace

TEST_CASE("ring laws")
{
    check_ring_laws(IntegerRing{});
    check_ring_laws(ModRing{12});
    check_ring_laws(ModRing{7});
    check_ring_laws(RationalRing{});
    check_ring_laws(LaurentRing{});
}

TEST_CASE("ring units")
{
    CHECK(ModRing{5}.unit_inverse(2) == 3);
    CHECK_FALSE(ModRing{6}.is_unit(2));
    CHECK_THROWS_AS(ModRing{6}.unit_inverse(3), NotInvertible);
    CHECK_THROWS_AS(IntegerRing{}.unit_inverse(2), NotInvertible);
    const LaurentRing l;
    CHECK(l.is_unit(l.monomial(-1, 3)));
    CHECK_FALSE(l.is_unit(l.parse("1 + t")));
    CHECK(l.unit_inverse(l.monomial(-1, 3)) == l.monomial(-1, -3));
    CHECK(power(l, l.monomial(1, 1), -2) == l.monomial(1, -2));
}

TEST_CASE("Laurent text")
{
    const LaurentRing l;
    CHECK(l.to_string(l.parse("t^-2 + 2 - 3*t")) == "-3*t + 2 + t^-2");
    CHECK(l.parse("-t^4-t^3+t^-1") == l.add(l.add(l.monomial(-1, 4), l.monomial(-1, 3)), l.monomial(1, -1)));
    CHECK(l.parse("0") == l.zero());
    CHECK(l.parse("2t") == l.monomial(2, 1));
    CHECK_THROWS_AS(l.parse("t^"), SyntaxError);
    CHECK_THROWS_AS(l.parse("x"), SyntaxError);
}

TEST_CASE("identity tensors")
{
    const IntegerRing z;
    const auto i3 = identity_tensor(1, 3, z);
    CHECK(i3.coords() == std::vector<BigInt>{1, 0, 0, 0, 1, 0, 0, 0, 1});
    const auto i22 = identity_tensor(2, 2, z);
    CHECK(i22.coords().size() == 16);
    CHECK(std::count(i22.coords().begin(), i22.coords().end(), BigInt(1)) == 4);
    CHECK(contract(i3, {{1, 1}}).value() == 3);
    CHECK(contract(i22, {{1, 1}, {2, 2}}).value() == 4);
    CHECK_THROWS_AS(contract(i3, {{2, 1}}), PositionError);
    CHECK_THROWS_AS(contract(i22, {{1, 1}, {1, 2}}), PositionError);
}

TEST_CASE("tensor product and contraction against loops")
{
    std::mt19937_64 rng(9);
    const IntegerRing z;
    const auto a = random_tensor(z, 1, 1, 3, rng);
    const auto b = random_tensor(z, 1, 1, 3, rng);
    // A's output into B's input: C[i][j] = sum_k A[i][k] B[k][j].
    const auto c = contract(tensor_product(a, b), {{2, 1}});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            BigInt s = 0;
            for (int k = 0; k < 3; ++k)
                s += a.at({i, k}) * b.at({k, j});
            CHECK(c.at({i, j}) == s);
        }
    // T x identity contracted along the identity pair recovers T.
    const auto t = random_tensor(z, 2, 1, 2, rng);
    CHECK(contract(tensor_product(t, identity_tensor(1, 2, z)), {{3, 1}}) == t);
    // Scalars multiply.
    CHECK(tensor_product(Tensor<IntegerRing>::scalar(z, 2, 3), Tensor<IntegerRing>::scalar(z, 2, 5)).value() == 15);
    // Mixed coordinate of a product.
    const auto y = random_tensor(z, 2, 2, 2, rng);
    const auto l = random_tensor(z, 1, 1, 2, rng);
    const auto yl = tensor_product(y, l);
    CHECK(yl.at({1, 0, 1, 0, 1, 1}) == y.at({1, 0, 0, 1}) * l.at({1, 1}));
}

TEST_CASE("simultaneous contraction equals sequential contraction")
{
    std::mt19937_64 rng(21);
    const IntegerRing z;
    for (int trial = 0; trial < 30; ++trial) {
        const auto t = random_tensor(z, 3, 3, 2, rng);
        std::vector<int> lower{1, 2, 3};
        std::vector<int> upper{1, 2, 3};
        std::shuffle(lower.begin(), lower.end(), rng);
        std::shuffle(upper.begin(), upper.end(), rng);
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < k; ++i)
            pairs.emplace_back(lower[i], upper[i]);
        const auto at_once = contract(t, pairs);

        auto seq = t;
        auto remaining = pairs;
        while (!remaining.empty()) {
            const auto [s, r] = remaining.front();
            remaining.erase(remaining.begin());
            seq = contract(seq, {{s, r}});
            for (auto& [s2, r2] : remaining) {
                if (s2 > s)
                    --s2;
                if (r2 > r)
                    --r2;
            }
        }
        CHECK(seq == at_once);
    }
}

TEST_CASE("tensor inversion")
{
    const IntegerRing z;
    CHECK(invert_tensor(identity_tensor(2, 2, z)) == identity_tensor(2, 2, z));
    const ModRing z5{5};
    Tensor<ModRing> d(z5, 1, 1, 3, {2, 0, 0, 0, 3, 0, 0, 0, 4});
    CHECK(invert_tensor(d).coords() == std::vector<std::int64_t>{3, 0, 0, 0, 2, 0, 0, 0, 4});
    CHECK_THROWS_AS(invert_tensor(Tensor<IntegerRing>(z, 1, 1, 2, {2, 0, 0, 1})), NotInvertible);
    CHECK_THROWS_AS(invert_tensor(Tensor<IntegerRing>(z, 2, 1, 2)), DimensionMismatch);

    std::mt19937_64 rng(4);
    const RationalRing q;
    int inverted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int p = 1 + static_cast<int>(trial % 2);
        const auto t = random_tensor(q, p, p, 2, rng);
        Tensor<RationalRing> inv(q, p, p, 2);
        try {
            inv = invert_tensor(t);
        } catch (const NotInvertible&) {
            continue;
        }
        ++inverted;
        CHECK(compose(t, inv) == identity_tensor(p, 2, q));
        CHECK(compose(inv, t) == identity_tensor(p, 2, q));
        CHECK(invert_tensor(inv) == t);
    }
    CHECK(inverted > 20);

    const LaurentRing l;
    Tensor<LaurentRing> u(l, 1, 1, 2, {l.parse("t"), l.parse("1 + t^2"), l.zero(), l.parse("-t^-1")});
    const auto ui = invert_tensor(u);
    CHECK(compose(u, ui) == identity_tensor(1, 2, l));
}

TEST_CASE("networks")
{
    const IntegerRing z;
    TensorNetwork<IntegerRing> single(z, 2);
    single.add_node(Tensor<IntegerRing>::scalar(z, 2, 7));
    CHECK(contract_network(single) == 7);

    TensorNetwork<IntegerRing> loop(z, 3);
    const int v = loop.add_node(identity_tensor(1, 3, z));
    loop.connect({v, 0}, {v, 0});
    CHECK(contract_network(loop) == 3);

    TensorNetwork<IntegerRing> open(z, 3);
    open.add_node(identity_tensor(1, 3, z));
    CHECK_THROWS_AS(contract_network(open), NotClosed);
    CHECK_THROWS_AS(loop.connect({v, 0}, {v, 0}), PositionError);
}

TEST_CASE("greedy contraction matches the naive sum")
{
    std::mt19937_64 rng(17);
    const ModRing ring{101};
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const int nodes = 1 + static_cast<int>(rng() % 5);
        TensorNetwork<ModRing> net(ring, n);
        std::vector<PortRef> outs, ins;
        for (int k = 0; k < nodes; ++k) {
            const int arity = static_cast<int>(rng() % 3);
            const int v = net.add_node(random_tensor(ring, arity, arity, n, rng));
            for (int a = 0; a < arity; ++a) {
                outs.push_back({v, a});
                ins.push_back({v, a});
            }
        }
        std::shuffle(ins.begin(), ins.end(), rng);
        // Leave some ports open on odd trials.
        const std::size_t wired = trial % 2 ? outs.size() / 2 : outs.size();
        for (std::size_t k = 0; k < wired; ++k)
            net.connect(outs[k], ins[k]);
        if (outs.size() - wired > 2)
            continue;
        const auto oi = net.open_inputs();
        const auto oo = net.open_outputs();
        CHECK(net.evaluate(oi, oo) == net.evaluate_naive(oi, oo));
    }
}

TEST_CASE("lazy product contraction equals the materialized product")
{
    std::mt19937_64 rng(33);
    const ModRing ring{97};
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const int count = 1 + static_cast<int>(rng() % 3);
        std::vector<Tensor<ModRing>> fs;
        int p = 0, q = 0;
        for (int f = 0; f < count; ++f) {
            const int a = static_cast<int>(rng() % 3);
            const int b = static_cast<int>(rng() % 3);
            fs.push_back(random_tensor(ring, a, b, n, rng));
            p += a;
            q += b;
        }
        auto product = fs.front();
        for (std::size_t f = 1; f < fs.size(); ++f)
            product = tensor_product(product, fs[f]);
        std::vector<int> lower(static_cast<std::size_t>(p)), upper(static_cast<std::size_t>(q));
        std::iota(lower.begin(), lower.end(), 1);
        std::iota(upper.begin(), upper.end(), 1);
        std::shuffle(lower.begin(), lower.end(), rng);
        std::shuffle(upper.begin(), upper.end(), rng);
        const int k = std::min(p, q) == 0 ? 0 : static_cast<int>(rng() % (std::min(p, q) + 1));
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < k; ++i)
            pairs.emplace_back(lower[i], upper[i]);
        std::vector<const Tensor<ModRing>*> ptrs;
        for (const auto& f : fs)
            ptrs.push_back(&f);
        CHECK(contract_product(ptrs, pairs) == contract(product, pairs));
    }
}
