#pragma once

#include "eg/algebra.hpp"
#include "eg/gsystem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eg {

/// One axiom instance in additive notation: sum of coeffs[i] * u_i = 0, where
/// u_i is the exponent of unknown i.
struct Rank1Equation {
    std::string axiom;
    std::vector<int> elements; // quantified group elements
    std::vector<std::int64_t> coeffs;
};

/// Unknowns y_g, l_{g1,g2}, r_{g1,g2}, A, B of a rank-1 system and the
/// equations every axiom instance imposes on them.
class Rank1System {
public:
    Rank1System(FiniteGroup g, int alpha);

    const FiniteGroup& group() const { return group_; }
    int alpha() const { return alpha_; }
    int unknown_count() const { return 2 * n_ * n_ + n_ + 2; }
    int y(int g) const { return g; }
    int l(int g1, int g2) const { return n_ + g1 * n_ + g2; }
    int r(int g1, int g2) const { return n_ + n_ * n_ + g1 * n_ + g2; }
    int A() const { return n_ + 2 * n_ * n_; }
    int B() const { return A() + 1; }
    std::string unknown_name(int i) const;

    const std::vector<Rank1Equation>& equations() const { return equations_; }
    void add(Rank1Equation e) { equations_.push_back(std::move(e)); }

    struct Distinct {
        std::vector<std::int64_t> coeffs;
        std::vector<std::size_t> sources; // indices into equations()
    };
    /// Nonzero coefficient rows without repeats, in first-seen order.
    std::vector<Distinct> distinct() const;

    std::string to_text(const Rank1Equation& e) const;

private:
    FiniteGroup group_;
    int alpha_;
    int n_;
    std::vector<Rank1Equation> equations_;
};

/// 4 + 3|G|^3 + 2|G|^5 equations in axiom order. `alpha` < 0 means the
/// identity.
Rank1System rank1_equations(const FiniteGroup& g, int alpha = -1);

/// A finite abelian group of ring units, elements indexed with the identity
/// at 0.
class UnitGroup {
public:
    /// {1, -1} in the integers.
    static UnitGroup signs();
    /// The units of Z/n.
    static UnitGroup mod_units(std::int64_t n);
    /// The m-th roots of unity in Z/p for the least prime p = 1 (mod m).
    static UnitGroup cyclic(std::int64_t m);
    /// "pm1", "U<n>" (units of Z/n) or "C<m>". Throws UnknownSpec.
    static UnitGroup parse(std::string_view spec);

    int order() const { return static_cast<int>(values_.size()); }
    std::int64_t value(int i) const { return values_[i]; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * values_.size() + b]; }
    int power(int a, std::int64_t k) const;
    /// Index of g^k when the group is cyclic with generator g.
    std::optional<int> generator() const { return generator_; }
    bool over_integers() const { return modulus_ == 0; }
    std::int64_t modulus() const { return modulus_; }
    const std::string& spec() const { return spec_; }

private:
    UnitGroup(std::string spec, std::int64_t modulus, std::vector<std::int64_t> values);

    std::string spec_;
    std::int64_t modulus_; // 0 for the integers
    std::vector<std::int64_t> values_;
    std::vector<int> table_;
    std::optional<int> generator_;
};

/// Unit index per unknown.
using Rank1Assignment = std::vector<int>;

bool satisfies(const Rank1System& s, const UnitGroup& u, const Rank1Assignment& a);

/// The rank-1 system over Z (signs) or Z/n the assignment describes.
AnySystem materialize(const Rank1System& s, const UnitGroup& u, const Rank1Assignment& a);

enum class Rank1Method { Auto, BruteForce, Smith };

struct Rank1Options {
    Rank1Method method = Rank1Method::Auto;
    /// Search nodes (brute force) or solutions (Smith) before BudgetExceeded.
    std::uint64_t budget = 100'000'000;
    /// Run verify_axioms on every solution and throw std::logic_error on a
    /// failure.
    bool verify = true;
};

/// Every satisfying assignment, sorted. Smith needs a cyclic unit group;
/// Auto picks it when possible.
std::vector<Rank1Assignment> solve_rank1_assignments(const Rank1System& s, const UnitGroup& u,
                                                     const Rank1Options& opt = {});

/// Number of solutions from the Smith form alone; needs a cyclic unit group.
BigInt rank1_solution_count(const Rank1System& s, const UnitGroup& u);

std::vector<AnySystem> solve_rank1(const FiniteGroup& g, const UnitGroup& u, const Rank1Options& opt = {},
                                   int alpha = -1);

nlohmann::json to_json(const Rank1System& s, const Rank1Equation& e);

} // namespace eg
