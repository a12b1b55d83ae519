#include "eg/rank1.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <stdexcept>
#include <numeric>

namespace eg {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t powmod(std::int64_t a, std::int64_t k, std::int64_t m)
{
    std::int64_t acc = 1 % m;
    for (; k > 0; k >>= 1) {
        if (k & 1)
            acc = mulmod(acc, a, m);
        a = mulmod(a, a, m);
    }
    return acc;
}

bool is_prime(std::int64_t p)
{
    if (p < 2)
        return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::optional<std::int64_t> parse_positive(std::string_view s)
{
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
        return std::nullopt;
    return v;
}

constexpr int kMaxUnits = 4096;

} // namespace

UnitGroup::UnitGroup(std::string spec, std::int64_t modulus, std::vector<std::int64_t> values)
    : spec_(std::move(spec)), modulus_(modulus), values_(std::move(values))
{
    const std::size_t n = values_.size();
    if (n > kMaxUnits)
        throw SizeLimit("unit group has more than " + std::to_string(kMaxUnits) + " elements");
    std::map<std::int64_t, int> index;
    for (std::size_t i = 0; i < n; ++i)
        index[values_[i]] = static_cast<int>(i);
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::int64_t v = modulus_ ? mulmod(values_[a], values_[b], modulus_) : values_[a] * values_[b];
            table_[a * n + b] = index.at(v);
        }
    for (int g = 0; g < order() && !generator_; ++g) {
        int x = g;
        int k = 1;
        while (x != 0) {
            x = mul(x, g);
            ++k;
        }
        if (k == order())
            generator_ = g;
    }
}

UnitGroup UnitGroup::signs()
{
    return UnitGroup("pm1", 0, {1, -1});
}

UnitGroup UnitGroup::mod_units(std::int64_t n)
{
    if (n < 2)
        throw UnknownSpec("units of Z/n need n >= 2");
    if (n > kMaxUnits * 4)
        throw SizeLimit("modulus too large");
    std::vector<std::int64_t> values;
    for (std::int64_t v = 1; v < n; ++v)
        if (std::gcd(v, n) == 1)
            values.push_back(v);
    return UnitGroup("U" + std::to_string(n), n, std::move(values));
}

UnitGroup UnitGroup::cyclic(std::int64_t m)
{
    if (m < 1)
        throw UnknownSpec("cyclic unit group needs m >= 1");
    if (m > kMaxUnits)
        throw SizeLimit("cyclic unit group too large");
    std::int64_t p = m + 1;
    while (!is_prime(p))
        p += m;
    // An element of exact order m: a^((p-1)/m) for a primitive root a.
    for (std::int64_t a = 1; a < p; ++a) {
        const std::int64_t b = powmod(a, (p - 1) / m, p);
        std::vector<std::int64_t> values{1 % p};
        std::int64_t x = b;
        while (x != 1 % p && static_cast<std::int64_t>(values.size()) <= m) {
            values.push_back(x);
            x = mulmod(x, b, p);
        }
        if (static_cast<std::int64_t>(values.size()) == m)
            return UnitGroup("C" + std::to_string(m), p, std::move(values));
    }
    throw std::logic_error("no element of order m modulo p");
}

UnitGroup UnitGroup::parse(std::string_view spec)
{
    if (spec == "pm1")
        return signs();
    if (spec.size() > 1 && (spec[0] == 'U' || spec[0] == 'C'))
        if (const auto v = parse_positive(spec.substr(1)))
            return spec[0] == 'U' ? mod_units(*v) : cyclic(*v);
    throw UnknownSpec("unknown unit group '" + std::string(spec) + "' (expected pm1, U<n> or C<m>)");
}

int UnitGroup::power(int a, std::int64_t k) const
{
    k %= order();
    if (k < 0)
        k += order();
    int acc = 0;
    int base = a;
    for (; k > 0; k >>= 1) {
        if (k & 1)
            acc = mul(acc, base);
        base = mul(base, base);
    }
    return acc;
}

} // namespace eg
