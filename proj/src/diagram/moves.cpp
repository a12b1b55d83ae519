#include "eg/diagram.hpp"
#include "eg/errors.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace eg {

namespace {

constexpr std::array<std::string_view, 16> kNames{
    "W1r", "W1l", "W2r", "W2l", "R2l", "R2r", "R1pr", "R1pl",
    "R1mr", "R1ml", "R3", "Omega1", "Omega2", "T1", "T2", "Commute"};

using E = Event;
constexpr Turn R = Turn::Rightward;
constexpr Turn L = Turn::Leftward;

/// Forward direction rewrites `lhs` into `rhs`. Insertion moves have an empty
/// `lhs` and require the strands `need` starting at the move position.
/// `kept` pairs crossings (lhs index, rhs index) that survive the move.
struct Rule {
    std::vector<Event> lhs;
    std::vector<Event> rhs;
    std::vector<Dir> need;
    std::vector<std::pair<int, int>> kept;
};

Rule rule(MoveKind k, int p)
{
    constexpr Dir U = Dir::Up;
    constexpr Dir D = Dir::Down;
    switch (k) {
    case MoveKind::W1r: return {{}, {E::cup(p + 1, R), E::cap(p, R)}, {U}, {}};
    case MoveKind::W1l: return {{}, {E::cup(p, L), E::cap(p + 1, L)}, {U}, {}};
    case MoveKind::W2r: return {{}, {E::cup(p, R), E::cap(p + 1, R)}, {D}, {}};
    case MoveKind::W2l: return {{}, {E::cup(p + 1, L), E::cap(p, L)}, {D}, {}};
    case MoveKind::R2l: return {{}, {E::cross(p, -1), E::cross(p, +1)}, {U, U}, {}};
    case MoveKind::R2r: return {{}, {E::cross(p, +1), E::cross(p, -1)}, {U, U}, {}};
    case MoveKind::R1pr: return {{}, {E::cup(p + 1, L), E::cross(p, +1), E::cap(p + 1, R)}, {U}, {}};
    case MoveKind::R1mr: return {{}, {E::cup(p + 1, L), E::cross(p, -1), E::cap(p + 1, R)}, {U}, {}};
    case MoveKind::R1pl: return {{}, {E::cup(p, R), E::cross(p + 1, +1), E::cap(p, L)}, {U}, {}};
    case MoveKind::R1ml: return {{}, {E::cup(p, R), E::cross(p + 1, -1), E::cap(p, L)}, {U}, {}};
    case MoveKind::R3:
        return {{E::cross(p, +1), E::cross(p + 1, +1), E::cross(p, +1)},
                {E::cross(p + 1, +1), E::cross(p, +1), E::cross(p + 1, +1)},
                {},
                {}};
    case MoveKind::Omega1:
        return {{},
                {E::cup(p, R), E::cross(p + 1, +1), E::cap(p + 2, R), E::cup(p + 2, L),
                 E::cross(p + 1, -1), E::cap(p, L)},
                {U, D},
                {}};
    case MoveKind::Omega2:
        return {{},
                {E::cup(p + 2, L), E::cross(p + 1, -1), E::cap(p, L), E::cup(p, R),
                 E::cross(p + 1, +1), E::cap(p + 2, R)},
                {D, U},
                {}};
    case MoveKind::T1:
    case MoveKind::T2: {
        const int s = k == MoveKind::T1 ? +1 : -1;
        return {{E::cup(p + 2, L), E::cup(p + 3, L), E::cross(p + 2, s), E::cap(p + 1, L), E::cap(p, L)},
                {E::cup(p, R), E::cup(p + 1, R), E::cross(p + 2, s), E::cap(p + 3, R), E::cap(p + 2, R)},
                {},
                {{2, 2}}};
    }
    case MoveKind::Commute:
        break;
    }
    throw std::logic_error("no rewrite rule for Commute");
}

int in_width(const Event& e) { return e.arity_in(); }
int out_width(const Event& e) { return e.arity_out(); }

/// Exchanges adjacent events `a` (lower) and `b` (upper) when they touch
/// disjoint strands; returns the new (lower, upper) pair.
std::optional<std::pair<Event, Event>> commute(const Event& a, const Event& b)
{
    const int out_a = out_width(a);
    const int in_b = in_width(b);
    const bool b_left = b.pos + in_b <= a.pos;
    const bool b_right = b.pos >= a.pos + out_a;
    if (!b_left && !b_right)
        return std::nullopt;
    Event nb = b;
    Event na = a;
    if (b_left) {
        na.pos = a.pos + out_width(b) - in_b;
    } else {
        nb.pos = b.pos - out_a + in_width(a);
    }
    return std::pair{nb, na};
}

bool strands_match(const std::vector<Dir>& strands, int pos, const std::vector<Dir>& need)
{
    if (pos < 0 || pos + static_cast<int>(need.size()) > static_cast<int>(strands.size()))
        return false;
    for (std::size_t k = 0; k < need.size(); ++k)
        if (strands[pos + k] != need[k])
            return false;
    return true;
}

bool events_match(const std::vector<Event>& events, std::size_t index, const std::vector<Event>& pattern)
{
    if (index + pattern.size() > events.size())
        return false;
    for (std::size_t k = 0; k < pattern.size(); ++k)
        if (!(events[index + k] == pattern[k]))
            return false;
    return true;
}

bool matches(const MorseWord& w, const std::vector<Dir>& strands, const MoveSpec& m)
{
    const auto& events = w.events();
    if (m.kind == MoveKind::Commute)
        return m.index + 1 < events.size() && commute(events[m.index], events[m.index + 1]).has_value();
    if (m.pos < 0)
        return false;
    const Rule r = rule(m.kind, m.pos);
    const auto& from = m.inverse ? r.rhs : r.lhs;
    if (from.empty())
        return m.index <= events.size() && strands_match(strands, m.pos, r.need);
    return events_match(events, m.index, from);
}

MoveResult rebuild(const MorseWord& w, std::size_t index, std::size_t removed,
                   const std::vector<Event>& inserted, const std::vector<int>& origin)
{
    const auto& old = w.events();
    std::vector<Event> events(old.begin(), old.begin() + static_cast<std::ptrdiff_t>(index));
    std::vector<int> source; // old event index or -1
    for (std::size_t i = 0; i < index; ++i)
        source.push_back(static_cast<int>(i));
    for (std::size_t k = 0; k < inserted.size(); ++k) {
        events.push_back(inserted[k]);
        source.push_back(origin[k] < 0 ? -1 : static_cast<int>(index) + origin[k]);
    }
    for (std::size_t i = index + removed; i < old.size(); ++i) {
        events.push_back(old[i]);
        source.push_back(static_cast<int>(i));
    }

    std::vector<int> old_crossing(old.size(), -1);
    int n_old = 0;
    for (std::size_t i = 0; i < old.size(); ++i)
        if (old[i].is_cross())
            old_crossing[i] = n_old++;

    MoveResult result;
    result.crossing_map.assign(n_old, -1);
    int id = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!events[i].is_cross())
            continue;
        if (source[i] < 0)
            result.created.push_back(id);
        else
            result.crossing_map[old_crossing[source[i]]] = id;
        ++id;
    }
    try {
        result.word = MorseWord(std::move(events));
    } catch (const ValidationError& e) {
        throw PatternMismatch(std::string("rewrite produced an invalid word: ") + e.what());
    }
    return result;
}

} // namespace

std::string_view move_name(MoveKind k)
{
    return kNames[static_cast<std::size_t>(k)];
}

MoveKind parse_move_kind(std::string_view name)
{
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name)
            return static_cast<MoveKind>(i);
    throw UnknownSpec("unknown move kind '" + std::string(name) + "'");
}

std::string to_string(const MoveSpec& m)
{
    std::string out(move_name(m.kind));
    if (m.inverse)
        out += '\'';
    out += '@' + std::to_string(m.index) + ':' + std::to_string(m.pos);
    return out;
}

MoveSpec parse_move_spec(std::string_view text)
{
    const auto at = text.find('@');
    const auto colon = text.find(':', at == std::string_view::npos ? 0 : at);
    if (at == std::string_view::npos || colon == std::string_view::npos)
        throw SyntaxError("move must look like NAME@INDEX:POS, got '" + std::string(text) + "'");
    std::string_view name = text.substr(0, at);
    MoveSpec m;
    if (!name.empty() && name.back() == '\'') {
        m.inverse = true;
        name.remove_suffix(1);
    }
    m.kind = parse_move_kind(name);
    try {
        m.index = std::stoul(std::string(text.substr(at + 1, colon - at - 1)));
        m.pos = std::stoi(std::string(text.substr(colon + 1)));
    } catch (const std::logic_error&) {
        throw SyntaxError("bad move location in '" + std::string(text) + "'");
    }
    return m;
}

MoveResult apply_move(const MorseWord& w, const MoveSpec& m)
{
    const auto& events = w.events();
    if (m.index > events.size())
        throw PatternMismatch(to_string(m) + ": index past the end of the word");
    if (!matches(w, w.strands_at(m.index), m))
        throw PatternMismatch(to_string(m) + ": local pattern not present");

    if (m.kind == MoveKind::Commute) {
        const auto swapped = commute(events[m.index], events[m.index + 1]);
        return rebuild(w, m.index, 2, {swapped->first, swapped->second}, {1, 0});
    }

    const Rule r = rule(m.kind, m.pos);
    const auto& from = m.inverse ? r.rhs : r.lhs;
    const auto& to = m.inverse ? r.lhs : r.rhs;
    std::vector<int> origin(to.size(), -1);
    for (const auto& [l, rr] : r.kept) {
        if (m.inverse)
            origin[l] = rr;
        else
            origin[rr] = l;
    }
    return rebuild(w, m.index, from.size(), to, origin);
}

std::vector<MoveSpec> applicable_moves(const MorseWord& w)
{
    std::vector<MoveSpec> out;
    const auto& events = w.events();
    std::vector<std::vector<Dir>> strands;
    strands.reserve(events.size() + 1);
    for (std::size_t i = 0; i <= events.size(); ++i)
        strands.push_back(w.strands_at(i));

    for (MoveKind k : kAllMoveKinds) {
        if (k == MoveKind::Commute) {
            for (std::size_t i = 0; i + 1 < events.size(); ++i)
                if (commute(events[i], events[i + 1]))
                    out.push_back({k, false, i, 0});
            continue;
        }
        for (bool inverse : {false, true}) {
            for (std::size_t i = 0; i <= events.size(); ++i) {
                const int width = static_cast<int>(strands[i].size());
                for (int p = 0; p <= width; ++p) {
                    const MoveSpec m{k, inverse, i, p};
                    if (matches(w, strands[i], m))
                        out.push_back(m);
                }
            }
        }
    }
    return out;
}

std::pair<int, int> move_ledger(const MoveSpec& m)
{
    std::pair<int, int> d{0, 0};
    switch (m.kind) {
    case MoveKind::R1pr: d = {-1, +1}; break;
    case MoveKind::R1mr: d = {-1, -1}; break;
    case MoveKind::R1pl: d = {+1, +1}; break;
    case MoveKind::R1ml: d = {+1, -1}; break;
    default: break;
    }
    if (m.inverse)
        d = {-d.first, -d.second};
    return d;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("uniform_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do
        v = rng();
    while (v >= limit);
    return v % n;
}

MoveSpec random_move(const MorseWord& w, std::mt19937_64& rng)
{
    const auto all = applicable_moves(w);
    if (all.empty())
        throw PatternMismatch("no move applies to the word");
    std::vector<std::pair<MoveKind, bool>> kinds;
    for (const MoveSpec& m : all)
        if (std::find(kinds.begin(), kinds.end(), std::pair{m.kind, m.inverse}) == kinds.end())
            kinds.emplace_back(m.kind, m.inverse);
    const auto kind = kinds[uniform_below(rng, kinds.size())];
    std::vector<MoveSpec> here;
    for (const MoveSpec& m : all)
        if (m.kind == kind.first && m.inverse == kind.second)
            here.push_back(m);
    return here[uniform_below(rng, here.size())];
}

} // namespace eg
