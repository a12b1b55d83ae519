#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace eg {

// ---------------------------------------------------------------------------
// Morse words
// ---------------------------------------------------------------------------

enum class Dir : std::uint8_t { Up, Down };

/// Turning sense of a cup or cap, read left to right.
///
/// Rightward cup: left strand runs down into it, right strand runs up out of
/// it. Leftward cup: the mirror image. Leftward cap: the right strand runs up
/// into it and the left strand leaves downwards. Rightward cap: the mirror.
enum class Turn : std::uint8_t { Rightward, Leftward };

struct Event {
    enum class Kind : std::uint8_t { Cup, Cap, Cross };

    Kind kind = Kind::Cup;
    int pos = 0;
    Turn turn = Turn::Rightward; // cups and caps only
    int sign = +1;               // crossings only

    static Event cup(int pos, Turn t) { return {Kind::Cup, pos, t, +1}; }
    static Event cap(int pos, Turn t) { return {Kind::Cap, pos, t, +1}; }
    static Event cross(int pos, int sign) { return {Kind::Cross, pos, Turn::Rightward, sign}; }

    bool is_cross() const { return kind == Kind::Cross; }
    /// Strands consumed from below / produced above.
    int arity_in() const { return kind == Kind::Cup ? 0 : 2; }
    int arity_out() const { return kind == Kind::Cap ? 0 : 2; }

    bool operator==(const Event&) const = default;
};

/// A closed diagram as a bottom-to-top sequence of cups, caps and crossings.
///
/// Strands are numbered left to right at every height. Crossings act on two
/// neighbouring strands that both run upwards; a positive crossing carries the
/// over-strand from position `pos` to `pos + 1`. Crossings are numbered
/// 0, 1, ... in the order they occur in the word.
class MorseWord {
public:
    MorseWord() = default;
    /// Throws ValidationError unless the word is closed and well formed.
    explicit MorseWord(std::vector<Event> events);

    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    int crossing_count() const;

    /// Strand orientations at the height just below event `index`
    /// (index == size() gives the empty top).
    std::vector<Dir> strands_at(std::size_t index) const;

    bool operator==(const MorseWord&) const = default;

private:
    std::vector<Event> events_;
};

MorseWord parse_morse(std::string_view text);
std::string to_text(const MorseWord& w);

/// Sum of half turns: rightward cups and leftward caps count +1/2, the other
/// two extrema -1/2.
int rotation_number(const MorseWord& w);
int writhe(const MorseWord& w);

// ---------------------------------------------------------------------------
// Planar diagrams
// ---------------------------------------------------------------------------

/// Corner of a crossing drawn with both strands running upwards: S lies
/// between the incoming ends, N between the outgoing ends.
enum class CornerPos : std::uint8_t { S = 0, E = 1, N = 2, W = 3 };

char corner_letter(CornerPos p);

struct CrossingEnd {
    int arc = 0; // 1-based arc label
    bool over = false;
    bool incoming = false;

    bool operator==(const CrossingEnd&) const = default;
};

/// Slots are stored counter-clockwise starting at the bottom-left end of the
/// upright picture: 0 = BL, 1 = BR, 2 = TR, 3 = TL. Corner k lies between slot
/// k and slot k + 1.
struct Crossing {
    int sign = +1;
    std::array<CrossingEnd, 4> ends{};

    bool operator==(const Crossing&) const = default;
};

struct EndRef {
    int crossing = -1;
    int slot = -1;

    bool operator==(const EndRef&) const = default;
};

struct Arc {
    EndRef tail; // outgoing end
    EndRef head; // incoming end
    int component = 0;

    bool operator==(const Arc&) const = default;
};

struct Corner {
    int crossing = 0;
    CornerPos pos = CornerPos::S;

    auto operator<=>(const Corner&) const = default;
};

/// A complementary region. `walks` holds its boundary walks (face on the
/// left), each rotated to start at its smallest corner; regions bounded only
/// by crossing-free circles have no corners.
struct Face {
    std::vector<std::vector<Corner>> walks;

    std::vector<Corner> corners() const;
    bool operator==(const Face&) const = default;
};

class PlanarDiagram {
public:
    const std::vector<Crossing>& crossings() const { return crossings_; }
    /// arcs()[label - 1]
    const std::vector<Arc>& arcs() const { return arcs_; }
    int components() const { return components_; }
    /// Components without crossings.
    int free_loops() const { return free_loops_; }
    const std::vector<Face>& faces() const { return faces_; }

    bool operator==(const PlanarDiagram&) const = default;

private:
    friend class DiagramBuilder;

    std::vector<Crossing> crossings_;
    std::vector<Arc> arcs_;
    int components_ = 0;
    int free_loops_ = 0;
    std::vector<Face> faces_;
};

PlanarDiagram parse_pd(std::string_view text);
std::string pd_serialize(const PlanarDiagram& d);
PlanarDiagram morse_to_pd(const MorseWord& w);

const std::vector<Face>& faces(const PlanarDiagram& d);
int writhe(const PlanarDiagram& d);
PlanarDiagram reverse_orientation(const PlanarDiagram& d);

nlohmann::json to_json(const PlanarDiagram& d);
nlohmann::json faces_to_json(const std::vector<Face>& faces);

// ---------------------------------------------------------------------------
// Local moves
// ---------------------------------------------------------------------------

enum class MoveKind : std::uint8_t {
    W1r, W1l, W2r, W2l,
    R2l, R2r,
    R1pr, R1pl, R1mr, R1ml,
    R3,
    Omega1, Omega2,
    T1, T2,
    Commute,
};

inline constexpr std::array<MoveKind, 16> kAllMoveKinds{
    MoveKind::W1r, MoveKind::W1l, MoveKind::W2r, MoveKind::W2l,
    MoveKind::R2l, MoveKind::R2r,
    MoveKind::R1pr, MoveKind::R1pl, MoveKind::R1mr, MoveKind::R1ml,
    MoveKind::R3, MoveKind::Omega1, MoveKind::Omega2,
    MoveKind::T1, MoveKind::T2, MoveKind::Commute};

std::string_view move_name(MoveKind k);
MoveKind parse_move_kind(std::string_view name);

/// `index` is the event index: for insertions the new events go in front of
/// event `index`; for removals and replacements the pattern starts there.
/// `pos` is the leftmost strand (or gap) the pattern touches. Commute swaps
/// events `index` and `index + 1` and ignores `pos`; it is its own inverse.
struct MoveSpec {
    MoveKind kind = MoveKind::W1r;
    bool inverse = false;
    std::size_t index = 0;
    int pos = 0;

    bool operator==(const MoveSpec&) const = default;
};

/// Text form `NAME@INDEX:POS`, with `NAME'` for inverses (e.g. `R1pr'@4:1`).
std::string to_string(const MoveSpec& m);
MoveSpec parse_move_spec(std::string_view text);

struct MoveResult {
    MorseWord word;
    /// crossing_map[old id] = new id, or -1 when the crossing was removed.
    std::vector<int> crossing_map;
    /// New ids of crossings created by the move, bottom to top.
    std::vector<int> created;
};

/// Throws PatternMismatch if the local pattern is not present.
MoveResult apply_move(const MorseWord& w, const MoveSpec& m);

/// Every location where `apply_move` succeeds, in deterministic order.
std::vector<MoveSpec> applicable_moves(const MorseWord& w);

/// Change of (rotation number, writhe) a successful move causes.
std::pair<int, int> move_ledger(const MoveSpec& m);

/// Uniform integer in [0, n) with a platform-independent reduction.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

/// Picks a move kind (with direction) uniformly among those applicable to
/// `w`, then a location uniformly among its matches.
MoveSpec random_move(const MorseWord& w, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Morse tracing, shared with the network compiler
// ---------------------------------------------------------------------------

/// Port of an event: crossings use slots 0..3 (BL, BR, TR, TL); cups and caps
/// use 0 = left end, 1 = right end. Port id = 4 * event + slot.
struct MorseTrace {
    struct Link {
        int lower = -1; // port of the event below
        int upper = -1; // port of the event above
        Dir dir = Dir::Up;
    };

    std::vector<int> crossing_of_event; // -1 for extrema
    std::vector<int> event_of_crossing;
    std::vector<Link> links;
    /// For every cup/cap event: crossing ids at the start and end of the arc
    /// through it, or -1 on a crossing-free component.
    std::vector<std::pair<int, int>> extremum_ends;
    /// Region id of every crossing corner from a left-to-right sweep.
    std::vector<std::array<int, 4>> corner_region;
    int region_count = 0;
};

MorseTrace trace_morse(const MorseWord& w);

} // namespace eg
