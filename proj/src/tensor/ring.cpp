#include "eg/ring.hpp"
#include "eg/errors.hpp"

#include <algorithm>
#include <cctype>

namespace eg {

// ---------------------------------------------------------------------------
// Integers
// ---------------------------------------------------------------------------

BigInt IntegerRing::unit_inverse(const BigInt& a) const
{
    if (!is_unit(a))
        throw NotInvertible(a.str() + " is not a unit in Z");
    return a;
}

nlohmann::json IntegerRing::to_json(const BigInt& a) const
{
    if (a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max())
        return a.convert_to<std::int64_t>();
    return a.str();
}

BigInt IntegerRing::from_json(const nlohmann::json& j) const
{
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::runtime_error&) {
        }
    }
    throw SyntaxError("expected an integer, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Integers mod n
// ---------------------------------------------------------------------------

ModRing::ModRing(std::int64_t n) : n_(n)
{
    if (n < 1)
        throw ValidationError("modulus must be positive");
}

namespace {

// Returns (g, x) with a x = g (mod n).
std::pair<std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t n)
{
    __int128 r0 = n, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        const __int128 q = r0 / r1;
        std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
        std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
    }
    return {static_cast<std::int64_t>(r0), static_cast<std::int64_t>(s0)};
}

} // namespace

bool ModRing::is_unit(std::int64_t a) const
{
    return n_ == 1 || ext_gcd(a, n_).first == 1;
}

std::int64_t ModRing::unit_inverse(std::int64_t a) const
{
    if (n_ == 1)
        return 0;
    const auto [g, x] = ext_gcd(a, n_);
    if (g != 1)
        throw NotInvertible(std::to_string(a) + " is not a unit mod " + std::to_string(n_));
    return reduce(x);
}

std::int64_t ModRing::from_json(const nlohmann::json& j) const
{
    if (!j.is_number_integer())
        throw SyntaxError("expected an integer, got " + j.dump());
    return reduce(j.get<std::int64_t>());
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

BigRational RationalRing::unit_inverse(const BigRational& a) const
{
    if (a == 0)
        throw NotInvertible("0 is not invertible");
    return 1 / a;
}

std::string RationalRing::to_string(const BigRational& a) const
{
    const BigInt num = boost::multiprecision::numerator(a);
    const BigInt den = boost::multiprecision::denominator(a);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

nlohmann::json RationalRing::to_json(const BigRational& a) const
{
    if (boost::multiprecision::denominator(a) == 1)
        return IntegerRing{}.to_json(boost::multiprecision::numerator(a));
    return to_string(a);
}

BigRational RationalRing::from_json(const nlohmann::json& j) const
{
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            const auto slash = s.find('/');
            if (slash == std::string::npos)
                return BigInt(s);
            const BigInt den(s.substr(slash + 1));
            if (den == 0)
                throw SyntaxError("zero denominator in " + s);
            return BigRational(BigInt(s.substr(0, slash)), den);
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const Error*>(&e))
                throw;
        }
    }
    throw SyntaxError("expected a rational, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

namespace {

Laurent trimmed(int low, std::vector<BigInt> c)
{
    auto first = std::find_if(c.begin(), c.end(), [](const BigInt& v) { return v != 0; });
    if (first == c.end())
        return {};
    const int skip = static_cast<int>(first - c.begin());
    while (c.back() == 0)
        c.pop_back();
    c.erase(c.begin(), first);
    return {low + skip, std::move(c)};
}

} // namespace

Laurent LaurentRing::add(const Laurent& a, const Laurent& b) const
{
    if (a.coeffs.empty())
        return trimmed(b.low, b.coeffs);
    if (b.coeffs.empty())
        return trimmed(a.low, a.coeffs);
    const int low = std::min(a.low, b.low);
    const int high = std::max(a.low + static_cast<int>(a.coeffs.size()), b.low + static_cast<int>(b.coeffs.size()));
    std::vector<BigInt> c(static_cast<std::size_t>(high - low), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        c[a.low - low + i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i)
        c[b.low - low + i] += b.coeffs[i];
    return trimmed(low, std::move(c));
}

Laurent LaurentRing::neg(const Laurent& a) const
{
    Laurent out = a;
    for (auto& v : out.coeffs)
        v = -v;
    return out;
}

Laurent LaurentRing::mul(const Laurent& a, const Laurent& b) const
{
    if (a.coeffs.empty() || b.coeffs.empty())
        return {};
    std::vector<BigInt> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return trimmed(a.low + b.low, std::move(c));
}

bool LaurentRing::is_unit(const Laurent& a) const
{
    return a.coeffs.size() == 1 && (a.coeffs[0] == 1 || a.coeffs[0] == -1);
}

Laurent LaurentRing::unit_inverse(const Laurent& a) const
{
    if (!is_unit(a))
        throw NotInvertible(to_string(a) + " is not a unit");
    return {-a.low, {a.coeffs[0]}};
}

Laurent LaurentRing::from_int(std::int64_t v) const
{
    return monomial(v, 0);
}

Laurent LaurentRing::monomial(std::int64_t c, int k) const
{
    if (c == 0)
        return {};
    return {k, {BigInt(c)}};
}

std::string LaurentRing::to_string(const Laurent& a) const
{
    if (a.coeffs.empty())
        return "0";
    std::string out;
    for (int i = static_cast<int>(a.coeffs.size()) - 1; i >= 0; --i) {
        BigInt c = a.coeffs[i];
        if (c == 0)
            continue;
        const int k = a.low + i;
        if (out.empty()) {
            if (c < 0)
                out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        c = abs(c);
        if (k == 0) {
            out += c.str();
            continue;
        }
        if (c != 1)
            out += c.str() + "*";
        out += var_;
        if (k != 1)
            out += "^" + std::to_string(k);
    }
    return out;
}

Laurent LaurentRing::parse(std::string_view text) const
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw SyntaxError("empty polynomial");
    Laurent acc;
    std::size_t i = 0;
    auto fail = [&] { throw SyntaxError("cannot parse polynomial '" + std::string(text) + "'"); };
    auto read_int = [&](std::string& digits) {
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            digits += s[i++];
    };
    while (i < s.size()) {
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = s[i] == '-';
            ++i;
        } else if (i != 0) {
            fail();
        }
        std::string digits;
        read_int(digits);
        BigInt coef = digits.empty() ? BigInt(1) : BigInt(digits);
        int exp = 0;
        const bool has_coef = !digits.empty();
        if (has_coef && i < s.size() && s[i] == '*')
            ++i;
        if (s.compare(i, var_.size(), var_) == 0) {
            i += var_.size();
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                if (i < s.size() && (s[i] == '-' || s[i] == '+'))
                    e += s[i++];
                read_int(e);
                if (e.empty() || e == "-" || e == "+")
                    fail();
                exp = std::stoi(e);
            }
        } else if (!has_coef) {
            fail();
        }
        acc = add(acc, Laurent{exp, {negative ? BigInt(-coef) : coef}});
    }
    return acc;
}

Laurent LaurentRing::from_json(const nlohmann::json& j) const
{
    if (j.is_number_integer())
        return from_int(j.get<std::int64_t>());
    if (j.is_string())
        return parse(j.get<std::string>());
    throw SyntaxError("expected a Laurent polynomial, got " + j.dump());
}

} // namespace eg
