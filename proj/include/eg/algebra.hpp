#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

namespace eg {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Finite groups
// ---------------------------------------------------------------------------

/// A finite group given by its Cayley table. Elements are 0 .. order-1.
class FiniteGroup {
public:
    /// Throws ValidationError unless the table satisfies the group laws.
    FiniteGroup(std::vector<std::string> names, std::vector<int> table);

    int order() const { return order_; }
    int id() const { return id_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    int inv(int a) const { return inv_[a]; }
    const std::string& name(int a) const { return names_[a]; }
    /// Element index by display name; throws UnknownSpec.
    int element(std::string_view name) const;
    bool is_abelian() const;

    /// a * b * c * ...
    template <typename... Ts>
    int mul(int a, int b, Ts... rest) const
    {
        return mul(mul(a, b), rest...);
    }
    int conj(int g, int by) const { return mul(inv(by), g, by); } // by^-1 g by

    const std::string& spec() const { return spec_; }
    void set_spec(std::string s) { spec_ = std::move(s); }

private:
    int order_ = 0;
    int id_ = 0;
    std::vector<std::string> names_;
    std::vector<int> table_;
    std::vector<int> inv_;
    std::string spec_;
};

inline constexpr int kDefaultGroupCap = 5040;

/// "Z<n>", "D<n>" (order 2n), "S<n>" (n <= 5) and direct products joined by
/// "×" or "x", e.g. "Z2xZ2". Throws UnknownSpec or SizeLimit.
FiniteGroup make_group(std::string_view spec, int cap = kDefaultGroupCap);

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

struct Letter {
    int gen = 0;
    int exp = 1; // +1 or -1

    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word free_reduce(Word w);
/// Free and cyclic reduction.
Word cyclic_reduce(Word w);
/// True if `a` and `b` agree up to cyclic rotation after cyclic reduction.
bool cyclically_equal(const Word& a, const Word& b);

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    int generator(std::string_view name) const; // -1 if absent
    bool operator==(const Presentation&) const = default;
};

/// Evaluates `w` with generator i sent to `assignment[i]`.
int evaluate(const FiniteGroup& g, const Word& w, const std::vector<int>& assignment);

inline constexpr std::int64_t kDefaultHomBudget = 100'000'000;

/// Number of homomorphisms p -> g. Throws BudgetExceeded when
/// |g|^|generators| exceeds the budget.
BigInt hom_count(const Presentation& p, const FiniteGroup& g,
                 std::int64_t budget = kDefaultHomBudget);

Presentation tietze_simplify(const Presentation& p);

/// Invariant factors of the abelianization: torsion factors > 1 in
/// divisibility order, then one 0 per free summand.
std::vector<BigInt> abelian_invariants(const Presentation& p);

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

using IntMatrix = std::vector<std::vector<BigInt>>;

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., d_i >= 0.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
};

SmithForm smith_normal_form(const IntMatrix& m, std::size_t rows, std::size_t cols);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);

// ---------------------------------------------------------------------------
// Text and JSON
// ---------------------------------------------------------------------------

std::string to_text(const Presentation& p, const Word& w);
std::string to_text(const Presentation& p);
nlohmann::json to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BigInt& n);

} // namespace eg
