#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace eg {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// A commutative ring object. Elements are plain values; the ring object
/// carries any parameters (such as the modulus) the operations need.
template <typename R>
concept Ring = requires(const R& r, const typename R::value_type& a, const nlohmann::json& j) {
    { r.zero() } -> std::same_as<typename R::value_type>;
    { r.one() } -> std::same_as<typename R::value_type>;
    { r.add(a, a) } -> std::same_as<typename R::value_type>;
    { r.neg(a) } -> std::same_as<typename R::value_type>;
    { r.mul(a, a) } -> std::same_as<typename R::value_type>;
    { r.eq(a, a) } -> std::same_as<bool>;
    { r.is_unit(a) } -> std::same_as<bool>;
    { r.unit_inverse(a) } -> std::same_as<typename R::value_type>;
    { r.from_int(0) } -> std::same_as<typename R::value_type>;
    { r.to_string(a) } -> std::same_as<std::string>;
    { r.to_json(a) } -> std::same_as<nlohmann::json>;
    { r.from_json(j) } -> std::same_as<typename R::value_type>;
    { r.descriptor() } -> std::same_as<nlohmann::json>;
};

class IntegerRing {
public:
    using value_type = BigInt;

    BigInt zero() const { return 0; }
    BigInt one() const { return 1; }
    BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
    BigInt neg(const BigInt& a) const { return -a; }
    BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }
    bool eq(const BigInt& a, const BigInt& b) const { return a == b; }
    bool is_unit(const BigInt& a) const { return a == 1 || a == -1; }
    BigInt unit_inverse(const BigInt& a) const;
    BigInt from_int(std::int64_t v) const { return v; }
    std::string to_string(const BigInt& a) const { return a.str(); }
    nlohmann::json to_json(const BigInt& a) const;
    BigInt from_json(const nlohmann::json& j) const;
    nlohmann::json descriptor() const { return {{"kind", "integer"}}; }
    bool operator==(const IntegerRing&) const = default;
};

class ModRing {
public:
    using value_type = std::int64_t;

    explicit ModRing(std::int64_t n);

    std::int64_t modulus() const { return n_; }
    std::int64_t zero() const { return 0; }
    std::int64_t one() const { return n_ == 1 ? 0 : 1; }
    std::int64_t add(std::int64_t a, std::int64_t b) const { return reduce(static_cast<__int128>(a) + b); }
    std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : n_ - a; }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return reduce(static_cast<__int128>(a) * b); }
    bool eq(std::int64_t a, std::int64_t b) const { return a == b; }
    bool is_unit(std::int64_t a) const;
    std::int64_t unit_inverse(std::int64_t a) const;
    std::int64_t from_int(std::int64_t v) const { return reduce(v); }
    std::string to_string(std::int64_t a) const { return std::to_string(a); }
    nlohmann::json to_json(std::int64_t a) const { return a; }
    std::int64_t from_json(const nlohmann::json& j) const;
    nlohmann::json descriptor() const { return {{"kind", "mod"}, {"n", n_}}; }
    bool operator==(const ModRing&) const = default;

private:
    std::int64_t reduce(__int128 v) const
    {
        const auto r = static_cast<std::int64_t>(v % n_);
        return r < 0 ? r + n_ : r;
    }
    std::int64_t n_;
};

class RationalRing {
public:
    using value_type = BigRational;

    BigRational zero() const { return 0; }
    BigRational one() const { return 1; }
    BigRational add(const BigRational& a, const BigRational& b) const { return a + b; }
    BigRational neg(const BigRational& a) const { return -a; }
    BigRational mul(const BigRational& a, const BigRational& b) const { return a * b; }
    bool eq(const BigRational& a, const BigRational& b) const { return a == b; }
    bool is_unit(const BigRational& a) const { return a != 0; }
    BigRational unit_inverse(const BigRational& a) const;
    BigRational from_int(std::int64_t v) const { return v; }
    std::string to_string(const BigRational& a) const;
    nlohmann::json to_json(const BigRational& a) const;
    BigRational from_json(const nlohmann::json& j) const;
    nlohmann::json descriptor() const { return {{"kind", "rational"}}; }
    bool operator==(const RationalRing&) const = default;
};

/// c[0] t^low + c[1] t^(low+1) + ..., trimmed so both end coefficients are
/// nonzero; zero is the empty vector with low = 0.
struct Laurent {
    int low = 0;
    std::vector<BigInt> coeffs;

    bool operator==(const Laurent&) const = default;
};

class LaurentRing {
public:
    using value_type = Laurent;

    explicit LaurentRing(std::string var = "t") : var_(std::move(var)) {}

    Laurent zero() const { return {}; }
    Laurent one() const { return {0, {1}}; }
    Laurent add(const Laurent& a, const Laurent& b) const;
    Laurent neg(const Laurent& a) const;
    Laurent mul(const Laurent& a, const Laurent& b) const;
    bool eq(const Laurent& a, const Laurent& b) const { return a == b; }
    /// Units are the monomials +-t^k.
    bool is_unit(const Laurent& a) const;
    Laurent unit_inverse(const Laurent& a) const;
    Laurent from_int(std::int64_t v) const;
    /// c * t^k
    Laurent monomial(std::int64_t c, int k) const;
    std::string to_string(const Laurent& a) const;
    Laurent parse(std::string_view text) const;
    nlohmann::json to_json(const Laurent& a) const { return to_string(a); }
    Laurent from_json(const nlohmann::json& j) const;
    nlohmann::json descriptor() const { return {{"kind", "laurent"}, {"var", var_}}; }
    const std::string& var() const { return var_; }
    bool operator==(const LaurentRing&) const = default;

private:
    std::string var_;
};

template <Ring R>
typename R::value_type power(const R& ring, const typename R::value_type& a, long long k)
{
    auto base = k < 0 ? ring.unit_inverse(a) : a;
    auto acc = ring.one();
    for (long long e = k < 0 ? -k : k; e > 0; e >>= 1) {
        if (e & 1)
            acc = ring.mul(acc, base);
        base = ring.mul(base, base);
    }
    return acc;
}

template <Ring R>
typename R::value_type sub(const R& ring, const typename R::value_type& a, const typename R::value_type& b)
{
    return ring.add(a, ring.neg(b));
}

} // namespace eg
