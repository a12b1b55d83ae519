#pragma once

#include "eg/tensor.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eg {

struct PortRef {
    int node = -1;
    int port = -1; // 0-based index into the node's inputs or outputs

    bool operator==(const PortRef&) const = default;
};

/// A wire from an output port of one node to an input port of another.
struct Edge {
    PortRef from; // output
    PortRef to;   // input
};

/// Tensors wired output-to-input. Unwired ports are the open ports of the
/// network; a closed network has none.
template <Ring R>
class TensorNetwork {
public:
    using value_type = typename R::value_type;

    TensorNetwork(R ring, int n) : ring_(std::move(ring)), n_(n) {}

    int add_node(Tensor<R> t, std::string label = {})
    {
        if (t.dim() != n_)
            throw DimensionMismatch("node dimension differs from the network's");
        nodes_.push_back(std::move(t));
        labels_.push_back(std::move(label));
        in_wire_.emplace_back(static_cast<std::size_t>(nodes_.back().p()), -1);
        out_wire_.emplace_back(static_cast<std::size_t>(nodes_.back().q()), -1);
        return static_cast<int>(nodes_.size()) - 1;
    }

    void connect(PortRef from, PortRef to)
    {
        check(from, false);
        check(to, true);
        int& out = out_wire_[from.node][from.port];
        int& in = in_wire_[to.node][to.port];
        if (out >= 0 || in >= 0)
            throw PositionError("port already wired");
        out = in = static_cast<int>(edges_.size());
        edges_.push_back({from, to});
    }

    const std::vector<Tensor<R>>& nodes() const { return nodes_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const R& ring() const { return ring_; }
    int dim() const { return n_; }

    std::vector<PortRef> open_inputs() const { return open(in_wire_); }
    std::vector<PortRef> open_outputs() const { return open(out_wire_); }
    bool closed() const { return open_inputs().empty() && open_outputs().empty(); }

    /// Contracts every wire. The result's lower indices are the open input
    /// ports in the order given, its upper indices the open output ports.
    Tensor<R> evaluate(const std::vector<PortRef>& inputs, const std::vector<PortRef>& outputs) const;

    /// Same value by summing over every wire assignment at once.
    Tensor<R> evaluate_naive(const std::vector<PortRef>& inputs, const std::vector<PortRef>& outputs) const;

private:
    void check(PortRef r, bool input) const
    {
        if (r.node < 0 || r.node >= static_cast<int>(nodes_.size()))
            throw PositionError("no node " + std::to_string(r.node));
        const int limit = input ? nodes_[r.node].p() : nodes_[r.node].q();
        if (r.port < 0 || r.port >= limit)
            throw PositionError("node " + std::to_string(r.node) + " has no " + (input ? "input " : "output ") +
                                std::to_string(r.port));
    }

    static std::vector<PortRef> open(const std::vector<std::vector<int>>& wires)
    {
        std::vector<PortRef> out;
        for (std::size_t v = 0; v < wires.size(); ++v)
            for (std::size_t k = 0; k < wires[v].size(); ++k)
                if (wires[v][k] < 0)
                    out.push_back({static_cast<int>(v), static_cast<int>(k)});
        return out;
    }

    // Label of every index of node v: wire ids, or open-port labels past the wires.
    std::vector<int> node_labels(int v, const std::vector<PortRef>& inputs, const std::vector<PortRef>& outputs) const;

    R ring_;
    int n_;
    std::vector<Tensor<R>> nodes_;
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> in_wire_;
    std::vector<std::vector<int>> out_wire_;
};

namespace detail {

/// A dense array whose axes are named by integer labels.
template <Ring R>
struct Factor {
    std::vector<int> labels;
    std::vector<typename R::value_type> data;
};

template <Ring R>
Factor<R> trace_repeats(const R& ring, int n, Factor<R> f)
{
    // Sum over the diagonal of any label that occurs twice.
    while (true) {
        int a = -1, b = -1;
        for (std::size_t i = 0; i < f.labels.size() && a < 0; ++i)
            for (std::size_t j = i + 1; j < f.labels.size(); ++j)
                if (f.labels[i] == f.labels[j]) {
                    a = static_cast<int>(i);
                    b = static_cast<int>(j);
                    break;
                }
        if (a < 0)
            return f;
        Factor<R> g;
        for (std::size_t i = 0; i < f.labels.size(); ++i)
            if (static_cast<int>(i) != a && static_cast<int>(i) != b)
                g.labels.push_back(f.labels[i]);
        g.data.assign(Tensor<R>::count(static_cast<int>(g.labels.size()), n), ring.zero());
        std::vector<int> idx(f.labels.size(), 0);
        do {
            if (idx[a] != idx[b])
                continue;
            std::size_t off = 0;
            std::size_t src = 0;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                src = src * n + idx[i];
                if (static_cast<int>(i) != a && static_cast<int>(i) != b)
                    off = off * n + idx[i];
            }
            g.data[off] = ring.add(g.data[off], f.data[src]);
        } while (next_index(idx, n));
        f = std::move(g);
    }
}

/// Product of two factors, summed over their shared labels.
template <Ring R>
Factor<R> merge(const R& ring, int n, const Factor<R>& x, const Factor<R>& y)
{
    std::vector<int> shared;
    Factor<R> out;
    for (int l : x.labels) {
        if (std::find(y.labels.begin(), y.labels.end(), l) != y.labels.end())
            shared.push_back(l);
        else
            out.labels.push_back(l);
    }
    for (int l : y.labels)
        if (std::find(shared.begin(), shared.end(), l) == shared.end())
            out.labels.push_back(l);

    std::vector<int> all = out.labels;
    all.insert(all.end(), shared.begin(), shared.end());
    auto positions = [&](const std::vector<int>& labels) {
        std::vector<int> pos;
        for (int l : labels)
            pos.push_back(static_cast<int>(std::find(all.begin(), all.end(), l) - all.begin()));
        return pos;
    };
    const auto px = positions(x.labels);
    const auto py = positions(y.labels);
    const std::size_t free_count = Tensor<R>::count(static_cast<int>(out.labels.size()), n);
    out.data.assign(free_count, ring.zero());
    std::vector<int> idx(all.size(), 0);
    std::size_t out_off = 0;
    do {
        std::size_t ox = 0, oy = 0;
        for (int p : px)
            ox = ox * n + idx[p];
        for (int p : py)
            oy = oy * n + idx[p];
        out_off = 0;
        for (std::size_t i = 0; i < out.labels.size(); ++i)
            out_off = out_off * n + idx[i];
        out.data[out_off] = ring.add(out.data[out_off], ring.mul(x.data[ox], y.data[oy]));
    } while (next_index(idx, n));
    return out;
}

} // namespace detail

template <Ring R>
std::vector<int> TensorNetwork<R>::node_labels(int v, const std::vector<PortRef>& inputs,
                                               const std::vector<PortRef>& outputs) const
{
    const int wires = static_cast<int>(edges_.size());
    auto open_label = [&](const std::vector<PortRef>& list, PortRef r, int base) {
        const auto it = std::find(list.begin(), list.end(), r);
        if (it == list.end())
            throw NotClosed("open port of node " + std::to_string(r.node) + " is not listed");
        return base + static_cast<int>(it - list.begin());
    };
    std::vector<int> labels;
    for (int k = 0; k < nodes_[v].p(); ++k) {
        const int w = in_wire_[v][k];
        labels.push_back(w >= 0 ? w : open_label(inputs, {v, k}, wires));
    }
    for (int k = 0; k < nodes_[v].q(); ++k) {
        const int w = out_wire_[v][k];
        labels.push_back(w >= 0 ? w : open_label(outputs, {v, k}, wires + static_cast<int>(inputs.size())));
    }
    return labels;
}

template <Ring R>
Tensor<R> TensorNetwork<R>::evaluate(const std::vector<PortRef>& inputs, const std::vector<PortRef>& outputs) const
{
    if (inputs.size() != open_inputs().size() || outputs.size() != open_outputs().size())
        throw NotClosed("every open port must be listed exactly once");
    const int wires = static_cast<int>(edges_.size());

    std::vector<detail::Factor<R>> factors;
    for (int v = 0; v < static_cast<int>(nodes_.size()); ++v)
        factors.push_back(detail::trace_repeats(ring_, n_, detail::Factor<R>{node_labels(v, inputs, outputs), nodes_[v].coords()}));

    // Greedy: merge the pair of factors that share a label and give the
    // smallest result; fall back to outer products for disconnected parts.
    while (factors.size() > 1) {
        std::size_t bi = 0, bj = 1;
        long best = std::numeric_limits<long>::max();
        bool best_shares = false;
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t j = i + 1; j < factors.size(); ++j) {
                int shared = 0;
                for (int l : factors[i].labels)
                    if (std::find(factors[j].labels.begin(), factors[j].labels.end(), l) != factors[j].labels.end())
                        ++shared;
                const long size = static_cast<long>(factors[i].labels.size() + factors[j].labels.size()) - 2L * shared;
                const bool shares = shared > 0;
                if ((shares && !best_shares) || (shares == best_shares && size < best)) {
                    best = size;
                    best_shares = shares;
                    bi = i;
                    bj = j;
                }
            }
        auto merged = detail::merge(ring_, n_, factors[bi], factors[bj]);
        factors.erase(factors.begin() + static_cast<std::ptrdiff_t>(bj));
        factors[bi] = std::move(merged);
    }

    detail::Factor<R> last = factors.empty() ? detail::Factor<R>{{}, {ring_.one()}} : std::move(factors.front());
    // Reorder axes to (inputs..., outputs...).
    const int p = static_cast<int>(inputs.size());
    const int q = static_cast<int>(outputs.size());
    Tensor<R> out(ring_, p, q, n_);
    std::vector<int> want;
    for (int k = 0; k < p + q; ++k)
        want.push_back(wires + k);
    std::vector<int> where;
    for (int l : want)
        where.push_back(static_cast<int>(std::find(last.labels.begin(), last.labels.end(), l) - last.labels.begin()));
    if (p + q == 0) {
        out.coords()[0] = last.data[0];
        return out;
    }
    std::vector<int> idx(static_cast<std::size_t>(p + q), 0);
    std::vector<int> src(last.labels.size(), 0);
    do {
        for (int k = 0; k < p + q; ++k)
            src[where[k]] = idx[k];
        std::size_t off = 0;
        for (int s : src)
            off = off * n_ + s;
        out.at(idx) = last.data[off];
    } while (next_index(idx, n_));
    return out;
}

template <Ring R>
Tensor<R> TensorNetwork<R>::evaluate_naive(const std::vector<PortRef>& inputs,
                                           const std::vector<PortRef>& outputs) const
{
    if (inputs.size() != open_inputs().size() || outputs.size() != open_outputs().size())
        throw NotClosed("every open port must be listed exactly once");
    const int wires = static_cast<int>(edges_.size());
    const int p = static_cast<int>(inputs.size());
    const int q = static_cast<int>(outputs.size());
    std::vector<std::vector<int>> labels;
    for (int v = 0; v < static_cast<int>(nodes_.size()); ++v)
        labels.push_back(node_labels(v, inputs, outputs));

    Tensor<R> out(ring_, p, q, n_);
    std::vector<int> open_idx(static_cast<std::size_t>(p + q), 0);
    std::vector<int> value(static_cast<std::size_t>(wires + p + q), 0);
    do {
        auto acc = ring_.zero();
        std::vector<int> wire_idx(static_cast<std::size_t>(wires), 0);
        do {
            std::copy(wire_idx.begin(), wire_idx.end(), value.begin());
            std::copy(open_idx.begin(), open_idx.end(), value.begin() + wires);
            auto term = ring_.one();
            for (int v = 0; v < static_cast<int>(nodes_.size()); ++v) {
                std::vector<int> idx;
                for (int l : labels[v])
                    idx.push_back(value[l]);
                term = ring_.mul(term, nodes_[v].at(idx));
            }
            acc = ring_.add(acc, term);
        } while (next_index(wire_idx, n_));
        out.at(open_idx) = acc;
    } while (next_index(open_idx, n_));
    return out;
}

/// Full contraction of a closed network.
template <Ring R>
typename R::value_type contract_network(const TensorNetwork<R>& net)
{
    if (!net.closed())
        throw NotClosed("network has open ports");
    return net.evaluate({}, {}).value();
}

template <Ring R>
typename R::value_type contract_network_naive(const TensorNetwork<R>& net)
{
    if (!net.closed())
        throw NotClosed("network has open ports");
    return net.evaluate_naive({}, {}).value();
}

} // namespace eg
