#pragma once

#include "eg/errors.hpp"
#include "eg/ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace eg {

/// A (p, q) tensor over V = K^N: p lower (input) and q upper (output)
/// indices. Coordinates are stored row-major with the lower indices first.
template <Ring R>
class Tensor {
public:
    using value_type = typename R::value_type;

    Tensor(R ring, int p, int q, int n)
        : ring_(std::move(ring)), p_(p), q_(q), n_(n), coords_(count(p + q, n), ring_.zero())
    {
        if (n < 1 || p < 0 || q < 0)
            throw DimensionMismatch("tensor needs N >= 1 and non-negative index counts");
    }

    Tensor(R ring, int p, int q, int n, std::vector<value_type> coords)
        : ring_(std::move(ring)), p_(p), q_(q), n_(n), coords_(std::move(coords))
    {
        if (n < 1 || p < 0 || q < 0 || coords_.size() != count(p + q, n))
            throw DimensionMismatch("coordinate count does not match N^(p+q)");
    }

    static Tensor scalar(R ring, int n, value_type v) { return Tensor(std::move(ring), 0, 0, n, {std::move(v)}); }

    const R& ring() const { return ring_; }
    int p() const { return p_; }
    int q() const { return q_; }
    int dim() const { return n_; }
    const std::vector<value_type>& coords() const { return coords_; }
    std::vector<value_type>& coords() { return coords_; }

    /// Flat offset of (lower..., upper...) indices, each in [0, N).
    std::size_t offset(const std::vector<int>& idx) const
    {
        std::size_t off = 0;
        for (int i : idx)
            off = off * n_ + static_cast<std::size_t>(i);
        return off;
    }
    const value_type& at(const std::vector<int>& idx) const { return coords_[offset(idx)]; }
    value_type& at(const std::vector<int>& idx) { return coords_[offset(idx)]; }

    /// The single coordinate of a (0, 0) tensor.
    const value_type& value() const
    {
        if (p_ != 0 || q_ != 0)
            throw DimensionMismatch("tensor is not a scalar");
        return coords_.front();
    }

    bool operator==(const Tensor& o) const
    {
        if (p_ != o.p_ || q_ != o.q_ || n_ != o.n_)
            return false;
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (!ring_.eq(coords_[i], o.coords_[i]))
                return false;
        return true;
    }

    Tensor scaled(const value_type& k) const
    {
        Tensor out = *this;
        for (auto& v : out.coords_)
            v = ring_.mul(k, v);
        return out;
    }

    static std::size_t count(int indices, int n)
    {
        std::size_t c = 1;
        for (int i = 0; i < indices; ++i)
            c *= static_cast<std::size_t>(n);
        return c;
    }

private:
    R ring_;
    int p_;
    int q_;
    int n_;
    std::vector<value_type> coords_;
};

/// Advances a mixed-radix counter with all digits in [0, n). Returns false
/// after the last combination.
inline bool next_index(std::vector<int>& idx, int n)
{
    for (std::size_t k = idx.size(); k-- > 0;) {
        if (++idx[k] < n)
            return true;
        idx[k] = 0;
    }
    return false;
}

template <Ring R>
Tensor<R> identity_tensor(int p, int n, const R& ring)
{
    if (p < 1)
        throw DimensionMismatch("identity tensor needs p >= 1");
    Tensor<R> t(ring, p, p, n);
    std::vector<int> idx(static_cast<std::size_t>(p), 0);
    do {
        std::vector<int> full = idx;
        full.insert(full.end(), idx.begin(), idx.end());
        t.at(full) = ring.one();
    } while (next_index(idx, n));
    return t;
}

template <Ring R>
Tensor<R> tensor_product(const Tensor<R>& t, const Tensor<R>& s)
{
    if (t.dim() != s.dim() || !(t.ring() == s.ring()))
        throw DimensionMismatch("tensor product of tensors over different spaces");
    const R& ring = t.ring();
    const int n = t.dim();
    Tensor<R> out(ring, t.p() + s.p(), t.q() + s.q(), n);
    std::vector<int> it(static_cast<std::size_t>(t.p() + t.q()), 0);
    do {
        std::vector<int> is(static_cast<std::size_t>(s.p() + s.q()), 0);
        const auto& tv = t.at(it);
        do {
            std::vector<int> full;
            full.insert(full.end(), it.begin(), it.begin() + t.p());
            full.insert(full.end(), is.begin(), is.begin() + s.p());
            full.insert(full.end(), it.begin() + t.p(), it.end());
            full.insert(full.end(), is.begin() + s.p(), is.end());
            out.at(full) = ring.mul(tv, s.at(is));
        } while (next_index(is, n));
    } while (next_index(it, n));
    return out;
}

/// Contracts lower index s with upper index r for every pair (s, r), all
/// positions 1-based and referring to `t` before any index is removed.
template <Ring R>
Tensor<R> contract(const Tensor<R>& t, const std::vector<std::pair<int, int>>& pairs)
{
    std::vector<bool> lower_used(static_cast<std::size_t>(t.p()), false);
    std::vector<bool> upper_used(static_cast<std::size_t>(t.q()), false);
    for (const auto& [s, r] : pairs) {
        if (s < 1 || s > t.p() || r < 1 || r > t.q())
            throw PositionError("contraction position (" + std::to_string(s) + ", " + std::to_string(r) +
                                ") out of range for a (" + std::to_string(t.p()) + ", " +
                                std::to_string(t.q()) + ") tensor");
        if (lower_used[s - 1] || upper_used[r - 1])
            throw PositionError("contraction positions must be distinct");
        lower_used[s - 1] = true;
        upper_used[r - 1] = true;
    }
    const R& ring = t.ring();
    const int n = t.dim();
    const int k = static_cast<int>(pairs.size());
    Tensor<R> out(ring, t.p() - k, t.q() - k, n);
    std::vector<int> free_idx(static_cast<std::size_t>(t.p() + t.q() - 2 * k), 0);
    std::vector<int> summed(static_cast<std::size_t>(k), 0);
    std::vector<int> full(static_cast<std::size_t>(t.p() + t.q()));
    do {
        auto acc = ring.zero();
        std::fill(summed.begin(), summed.end(), 0);
        do {
            std::size_t f = 0;
            for (int i = 0; i < t.p(); ++i)
                if (!lower_used[i])
                    full[i] = free_idx[f++];
            for (int j = 0; j < t.q(); ++j)
                if (!upper_used[j])
                    full[t.p() + j] = free_idx[f++];
            for (int m = 0; m < k; ++m) {
                full[pairs[m].first - 1] = summed[m];
                full[t.p() + pairs[m].second - 1] = summed[m];
            }
            acc = ring.add(acc, t.at(full));
        } while (next_index(summed, n));
        out.at(free_idx) = acc;
    } while (next_index(free_idx, n));
    return out;
}

/// T followed by S: T's outputs feed S's inputs in order.
template <Ring R>
Tensor<R> compose(const Tensor<R>& t, const Tensor<R>& s)
{
    if (t.q() != s.p())
        throw DimensionMismatch("cannot compose: output and input counts differ");
    std::vector<std::pair<int, int>> pairs;
    for (int k = 1; k <= t.q(); ++k)
        pairs.emplace_back(t.p() + k, k);
    return contract(tensor_product(t, s), pairs);
}

/// contract(f[0] x f[1] x ..., pairs) without materializing the product.
template <Ring R>
Tensor<R> contract_product(const std::vector<const Tensor<R>*>& factors,
                           const std::vector<std::pair<int, int>>& pairs)
{
    if (factors.empty())
        throw DimensionMismatch("empty tensor product");
    const R& ring = factors.front()->ring();
    const int n = factors.front()->dim();
    int p = 0;
    int q = 0;
    for (const auto* f : factors) {
        if (f->dim() != n || !(f->ring() == ring))
            throw DimensionMismatch("tensor product of tensors over different spaces");
        p += f->p();
        q += f->q();
    }
    // Full index vector: p lower slots then q upper slots of the product.
    std::vector<int> slot_of_lower(static_cast<std::size_t>(p), -1);
    std::vector<int> slot_of_upper(static_cast<std::size_t>(q), -1);
    for (std::size_t m = 0; m < pairs.size(); ++m) {
        const auto [s, r] = pairs[m];
        if (s < 1 || s > p || r < 1 || r > q)
            throw PositionError("contraction position (" + std::to_string(s) + ", " + std::to_string(r) +
                                ") out of range for a (" + std::to_string(p) + ", " + std::to_string(q) +
                                ") tensor");
        if (slot_of_lower[s - 1] >= 0 || slot_of_upper[r - 1] >= 0)
            throw PositionError("contraction positions must be distinct");
        slot_of_lower[s - 1] = slot_of_upper[r - 1] = static_cast<int>(m);
    }
    const int k = static_cast<int>(pairs.size());
    // Counter layout: free lower, free upper, then one digit per pair.
    std::vector<int> lower_digit(static_cast<std::size_t>(p));
    std::vector<int> upper_digit(static_cast<std::size_t>(q));
    int free = 0;
    for (int i = 0; i < p; ++i)
        if (slot_of_lower[i] < 0)
            lower_digit[i] = free++;
    for (int j = 0; j < q; ++j)
        if (slot_of_upper[j] < 0)
            upper_digit[j] = free++;
    for (int i = 0; i < p; ++i)
        if (slot_of_lower[i] >= 0)
            lower_digit[i] = free + slot_of_lower[i];
    for (int j = 0; j < q; ++j)
        if (slot_of_upper[j] >= 0)
            upper_digit[j] = free + slot_of_upper[j];

    Tensor<R> out(ring, p - k, q - k, n);
    std::vector<int> counter(static_cast<std::size_t>(free + k), 0);
    std::vector<std::vector<int>> idx(factors.size());
    std::size_t flat = 0;
    auto acc = ring.zero();
    const std::size_t inner = Tensor<R>::count(k, n);
    std::size_t step = 0;
    do {
        int lo = 0;
        int up = 0;
        auto term = ring.one();
        for (std::size_t f = 0; f < factors.size(); ++f) {
            auto& v = idx[f];
            v.resize(static_cast<std::size_t>(factors[f]->p() + factors[f]->q()));
            for (int a = 0; a < factors[f]->p(); ++a)
                v[a] = counter[lower_digit[lo++]];
            for (int b = 0; b < factors[f]->q(); ++b)
                v[factors[f]->p() + b] = counter[upper_digit[up++]];
            term = ring.mul(term, factors[f]->at(v));
        }
        acc = ring.add(acc, term);
        if (++step == inner) {
            out.coords()[flat++] = acc;
            acc = ring.zero();
            step = 0;
        }
    } while (next_index(counter, n));
    return out;
}

namespace detail {

template <Ring R>
using Matrix = std::vector<std::vector<typename R::value_type>>;

template <Ring R>
Matrix<R> mat_mul(const R& ring, const Matrix<R>& a, const Matrix<R>& b)
{
    const std::size_t n = a.size();
    Matrix<R> c(n, std::vector<typename R::value_type>(n, ring.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] = ring.add(c[i][j], ring.mul(a[i][k], b[k][j]));
    return c;
}

/// Characteristic polynomial det(x I - A) by Berkowitz's division-free
/// algorithm; returns coefficients from x^n down to x^0.
template <Ring R>
std::vector<typename R::value_type> charpoly(const R& ring, const Matrix<R>& a)
{
    using V = typename R::value_type;
    const std::size_t n = a.size();
    std::vector<V> poly{ring.one(), ring.neg(a[0][0])};
    for (std::size_t r = 1; r < n; ++r) {
        // Column of the Toeplitz matrix: 1, -a_rr, -R S, -R M S, ...
        std::vector<V> col{ring.one(), ring.neg(a[r][r])};
        std::vector<V> v(r);
        for (std::size_t i = 0; i < r; ++i)
            v[i] = a[i][r];
        for (std::size_t k = 0; k < r; ++k) {
            V dot = ring.zero();
            for (std::size_t j = 0; j < r; ++j)
                dot = ring.add(dot, ring.mul(a[r][j], v[j]));
            col.push_back(ring.neg(dot));
            std::vector<V> mv(r, ring.zero());
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    mv[i] = ring.add(mv[i], ring.mul(a[i][j], v[j]));
            v = std::move(mv);
        }
        std::vector<V> next(r + 2, ring.zero());
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j <= std::min(i, r); ++j)
                next[i] = ring.add(next[i], ring.mul(col[i - j], poly[j]));
        poly = std::move(next);
    }
    return poly;
}

} // namespace detail

/// Inverse of a (p, p) tensor read as an N^p x N^p matrix, so that composing
/// it with `t` in either order gives the identity.
template <Ring R>
Tensor<R> invert_tensor(const Tensor<R>& t)
{
    if (t.p() != t.q())
        throw DimensionMismatch("only (p, p) tensors can be inverted");
    const R& ring = t.ring();
    if (t.p() == 0) {
        if (!ring.is_unit(t.value()))
            throw NotInvertible("scalar " + ring.to_string(t.value()) + " is not a unit");
        return Tensor<R>::scalar(ring, t.dim(), ring.unit_inverse(t.value()));
    }
    const std::size_t m = Tensor<R>::count(t.p(), t.dim());
    detail::Matrix<R> a(m, std::vector<typename R::value_type>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a[i][j] = t.coords()[i * m + j];

    // Cayley-Hamilton: A^-1 = -(A^(m-1) + c1 A^(m-2) + ... + c_(m-1) I) / c_m.
    const auto c = detail::charpoly(ring, a);
    const auto& cm = c[m];
    if (!ring.is_unit(cm))
        throw NotInvertible("determinant " + ring.to_string(cm) + " is not a unit");
    detail::Matrix<R> acc(m, std::vector<typename R::value_type>(m, ring.zero()));
    for (std::size_t i = 0; i < m; ++i)
        acc[i][i] = ring.one();
    for (std::size_t k = 1; k < m; ++k) {
        acc = detail::mat_mul(ring, a, acc);
        for (std::size_t i = 0; i < m; ++i)
            acc[i][i] = ring.add(acc[i][i], c[k]);
    }
    const auto factor = ring.neg(ring.unit_inverse(cm));
    Tensor<R> out(ring, t.p(), t.q(), t.dim());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out.coords()[i * m + j] = ring.mul(factor, acc[i][j]);
    return out;
}

// ---------------------------------------------------------------------------
// JSON: nested arrays with the lower indices outermost.
// ---------------------------------------------------------------------------

template <Ring R>
nlohmann::json coords_to_json(const Tensor<R>& t)
{
    const int depth = t.p() + t.q();
    if (depth == 0)
        return t.ring().to_json(t.value());
    std::size_t pos = 0;
    auto rec = [&](auto&& self, int level) -> nlohmann::json {
        nlohmann::json arr = nlohmann::json::array();
        for (int i = 0; i < t.dim(); ++i) {
            if (level + 1 == depth)
                arr.push_back(t.ring().to_json(t.coords()[pos++]));
            else
                arr.push_back(self(self, level + 1));
        }
        return arr;
    };
    return rec(rec, 0);
}

template <Ring R>
Tensor<R> tensor_from_json(const R& ring, int p, int q, int n, const nlohmann::json& j)
{
    std::vector<typename R::value_type> coords;
    auto rec = [&](auto&& self, const nlohmann::json& node, int level) -> void {
        if (level == p + q) {
            coords.push_back(ring.from_json(node));
            return;
        }
        if (!node.is_array() || static_cast<int>(node.size()) != n)
            throw DimensionMismatch("tensor coordinates must be nested arrays of length " + std::to_string(n));
        for (const auto& child : node)
            self(self, child, level + 1);
    };
    rec(rec, j, 0);
    return Tensor<R>(ring, p, q, n, std::move(coords));
}

template <Ring R>
nlohmann::json to_json(const Tensor<R>& t)
{
    return {{"p", t.p()}, {"q", t.q()}, {"N", t.dim()}, {"ring", t.ring().descriptor()}, {"coords", coords_to_json(t)}};
}

} // namespace eg
