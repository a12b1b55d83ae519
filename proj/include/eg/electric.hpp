#pragma once

#include "eg/algebra.hpp"
#include "eg/diagram.hpp"

#include <cstdint>
#include <functional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace eg {

/// Generators are a, b, then x1 .. xn for crossings 0 .. n-1.
Presentation electric_presentation(const PlanarDiagram& d);
/// The electric presentation with a and b deleted.
Presentation reduced_presentation(const PlanarDiagram& d);

/// Word read at a corner of a crossing whose generator is `x`, with a = 0 and
/// b = 1.
Word corner_word(int sign, CornerPos pos, int x);

struct Colouring {
    int alpha = 0;
    int beta = 0;
    std::vector<int> colours; // per crossing id

    bool operator==(const Colouring&) const = default;
};

int corner_multiplier(const FiniteGroup& g, int sign, CornerPos pos, int xi, int alpha, int beta);
int face_holonomy(const PlanarDiagram& d, const FiniteGroup& g, const Colouring& c, const Face& f);
bool is_proper(const PlanarDiagram& d, const FiniteGroup& g, const Colouring& c);

inline constexpr std::int64_t kDefaultSearchBudget = 100'000'000;

/// Calls `visit` on every proper colouring in lexicographic order of colours.
/// Throws BudgetExceeded after `budget` search nodes.
void for_each_colouring(const PlanarDiagram& d, const FiniteGroup& g, int alpha, int beta,
                        const std::function<void(const Colouring&)>& visit,
                        std::int64_t budget = kDefaultSearchBudget);

std::vector<Colouring> enumerate_colourings(const PlanarDiagram& d, const FiniteGroup& g, int alpha,
                                            int beta, std::int64_t budget = kDefaultSearchBudget);

std::uint64_t count_colourings(const PlanarDiagram& d, const FiniteGroup& g, int alpha, int beta,
                               std::int64_t budget = kDefaultSearchBudget);

struct Census {
    /// counts[alpha][beta]
    std::vector<std::vector<std::uint64_t>> counts;
    BigInt total;
};

Census colouring_census(const PlanarDiagram& d, const FiniteGroup& g,
                        std::int64_t budget = kDefaultSearchBudget);

/// Proper colourings of `d` that agree with `partial` off the crossings in
/// `free`. Used for moves whose new colours are determined only implicitly.
std::vector<Colouring> proper_extensions(const PlanarDiagram& d, const FiniteGroup& g,
                                         const Colouring& partial, const std::vector<int>& free);

struct Transported {
    MoveResult move;
    Colouring colouring;
};

/// Carries a proper colouring of `w` across the move. Throws NotProper if `c`
/// is not proper on `w`.
Transported transport_colouring(const MorseWord& w, const MoveSpec& m, const FiniteGroup& g,
                                const Colouring& c);

nlohmann::json to_json(const FiniteGroup& g, const Colouring& c);
Colouring colouring_from_json(const FiniteGroup& g, const nlohmann::json& j);

} // namespace eg
